#include <doctest.h>

#include "bst/data_io.hpp"

using namespace bst;

TEST_CASE("group files round-trip") {
  const std::string text =
      "# cyclic-ish example\n"
      "name s3\n"
      "degree 3\n"
      "gen 2 3 1\n"
      "gen 2 1 3   # transposition\n";
  const auto g = parse_group_file(text, "s3.grp");
  CHECK(g.name() == "s3");
  CHECK(g.degree() == 3);
  CHECK(g.order() == 6);
  const auto h = parse_group_file(serialize_group(g));
  CHECK(h.order() == 6);
  CHECK(serialize_group(h) == serialize_group(g));
}

TEST_CASE("group file errors carry line numbers") {
  auto msg = [](const std::string& text) {
    try {
      parse_group_file(text, "f.grp");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(msg("degree 3\ngen 1 1 2\n").starts_with("f.grp:2"));          // not a bijection
  CHECK(msg("degree 2\ngen 1 2 1\n").starts_with("f.grp:2"));          // wrong arity
  CHECK(msg("gen 1 2\n").starts_with("f.grp:1"));                      // gen before degree
  CHECK(msg("degree 2\ngen 0 1\n").starts_with("f.grp:2"));            // out of range
  CHECK(msg("degree 2\nfoo\n").starts_with("f.grp:2"));                // unknown keyword
  CHECK(msg("name x\n") == "f.grp: missing degree");
  CHECK_NOTHROW(parse_group_file("degree 4\n"));  // trivial group is fine
}

namespace {

const char* kToyData = R"(# provenance: DERIVED (toy example)
group G order 720
class 1A 1 1
class 2A 2 45
class 3A 3 80

group H order 6
class 1A 1 1
class 2A 2 3
class 3A 3 2

fusion H -> G
map 1A 1A
map 2A 2A
map 3A 3A

subgroupdata H in G order 6
count 1A 1
count 2A 3
count 3A 2

report toy suite demo group G c 2
term alpha max 1/4
contrib class 2A count 3
term beta
contrib lemma a 4 b 80
contrib lemma a 2 class 3A
)";

}  // namespace

TEST_CASE("class data files round-trip and strict-check") {
  const auto d = parse_class_data(kToyData, "toy.cdata");
  CHECK(d.tables.size() == 2);
  CHECK(d.tables.at("G").at("3A").size == 80);
  CHECK(d.fusion("H", "G").map.at("2A") == "2A");
  CHECK(d.subgroup("H", "G").order == 6);
  REQUIRE(d.reports.size() == 1);
  const auto& r = d.reports[0];
  CHECK(r.c == 2);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[0].max == mpq_class(1, 4));
  CHECK_FALSE(r.terms[1].max);
  REQUIRE(r.terms[1].contribs.size() == 2);
  CHECK(r.terms[1].contribs[0].explicit_b == mpz_class(80));
  CHECK(r.terms[1].contribs[1].class_label == "3A");
  CHECK_NOTHROW(d.strict_check());

  const auto d2 = parse_class_data(serialize_class_data(d));
  CHECK(serialize_class_data(d2) == serialize_class_data(d));
  // verify_report consumes the parsed report directly.
  CHECK(verify_report(r, d.tables).ok);
}

TEST_CASE("class data errors") {
  auto line_of = [](const std::string& text) {
    try {
      parse_class_data(text, "f");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(line_of("class 2A 2 3\n").starts_with("f:1"));  // class outside group
  CHECK(line_of("group G order 12\nclass 2A 2 5\n") == "f: class size of 2A does not divide |G|");
  CHECK(line_of("group G order 12\ngroup G order 12\n").starts_with("f:2"));
  CHECK(line_of("map 1A 1A\n").starts_with("f:1"));
  CHECK(line_of("fusion A -> B\nmap 1A 1A\nmap 1A 2A\n").starts_with("f:3"));
  CHECK(line_of("count 2A 3\n").starts_with("f:1"));
  CHECK(line_of("term x\n").starts_with("f:1"));
  CHECK(line_of("report r suite s group G c 2\ncontrib class 2A count 3\n").starts_with("f:2"));
  CHECK(line_of("lift Q by-center-of E central 2Ax\nrule 2A frobnicate\n").starts_with("f:2"));

  // strict_check: order-changing fusion is rejected.
  const auto bad = parse_class_data(
      "group A order 6\nclass 1A 1 1\nclass 3A 3 2\n"
      "group B order 12\nclass 1A 1 1\nclass 3X 2 3\n"
      "fusion A -> B\nmap 1A 1A\nmap 3A 3X\n");
  CHECK_THROWS(bad.strict_check());
  // strict_check: lift tables are recomputed from their quotients.
  const auto lifted = parse_class_data(
      "group Q order 2\nclass 1A 1 1\nclass 2A 2 1\n"
      "group 2.Q order 4\nclass 1A 1 1\nclass 2Ax 2 1\nclass 2Bx 2 2\n"
      "lift Q by-center-of 2.Q central 2Ax\nrule 2A identified 2Bx\n");
  CHECK_NOTHROW(lifted.strict_check());
  auto broken = lifted;
  broken.lifts[0].rules["2A"] = {LiftRule::Kind::order_doubled, "", ""};
  CHECK_THROWS(broken.strict_check());
}

TEST_CASE("class data merge") {
  auto a = parse_class_data("group A order 2\nclass 1A 1 1\nclass 2A 2 1\n");
  auto b = parse_class_data("group B order 6\nclass 1A 1 1\nclass 3A 3 2\n");
  a.merge(std::move(b));
  CHECK(a.tables.size() == 2);
  auto dup = parse_class_data("group A order 2\nclass 1A 1 1\nclass 2A 2 1\n");
  CHECK_THROWS(a.merge(std::move(dup)));
}

TEST_CASE("certificates round-trip") {
  BaseSizeCertificate c;
  c.kind = CertKind::witness;
  c.rel = Rel::le;
  c.value = 3;
  c.group_name = "m11";
  c.group_order = 7920;
  c.sub_name = "h_3_2_sd16";
  c.sub_order = 144;
  c.seed = 42;
  c.stream = 7;
  c.conjugators = {Permutation::from_one_based({2, 3, 1}), Permutation::from_one_based({1, 3, 2})};
  const auto text = serialize_certificate(c);
  const auto back = parse_certificate(text, "w.cert");
  CHECK(back.kind == CertKind::witness);
  CHECK(back.rel == Rel::le);
  CHECK(back.value == 3);
  CHECK(back.group_name == "m11");
  CHECK(back.group_order == 7920);
  CHECK(back.sub_order == 144);
  CHECK(back.seed == 42);
  CHECK(back.stream == 7);
  REQUIRE(back.conjugators.size() == 2);
  CHECK(back.conjugators[0] == c.conjugators[0]);
  CHECK(serialize_certificate(back) == text);

  for (auto k : {CertKind::regular_orbit, CertKind::no_regular_orbit,
                 CertKind::partial_certificate, CertKind::lower_bound, CertKind::exhaustive}) {
    c.kind = k;
    CHECK(parse_certificate(serialize_certificate(c)).kind == k);
  }
  CHECK_THROWS_AS(parse_certificate("CERT witness\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("CERT bogus\nESTABLISHES b <= 2\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("CERT witness\nESTABLISHES b < 2\n"), ParseError);
}

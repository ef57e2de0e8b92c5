// Regenerates the group fixtures under fixtures/ from first principles:
// the large Mathieu group on 24 points is built from PSL(2,23) plus a cubing
// twist found by exhaustive search over the 484 coefficient pairs, and every
// smaller group is derived from it by stabilizer/normalizer constructions.
// Each construction is cross-checked against its known order before anything
// is written.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <vector>

#include "bst/data_io.hpp"
#include "bst/subgroup_algebra.hpp"

namespace fs = std::filesystem;
using namespace bst;

namespace {

constexpr int P = 23;         // projective line over F_23: points 0..22, 23 = infinity
constexpr int INF = 23;
const mpz_class M24_ORDER("244823040");

int mod_inv(int a) {  // a != 0 (mod 23)
  for (int x = 1; x < P; ++x)
    if (a * x % P == 1) return x;
  throw std::logic_error("not invertible");
}

template <class F>
Permutation projective_map(F f) {
  std::vector<int> img(P + 1);
  for (int x = 0; x <= P; ++x) img[x] = f(x);
  return Permutation(std::move(img));  // validates bijectivity
}

void write_group(const fs::path& path, const GeneratedGroup& g) {
  std::ofstream out(path);
  out << serialize_group(g.renamed(path.stem().string()));
  std::cout << path.string() << ": order " << g.order().get_str() << ", degree " << g.degree()
            << ", " << g.generators().size() << " generators\n";
}

// Restriction of g to an invariant point set, relabelled 0..k-1 in sorted order.
GeneratedGroup restrict_to(const GeneratedGroup& g, std::vector<int> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<int> pos(g.degree(), -1);
  for (size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = static_cast<int>(i);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<int> img(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      const int to = pos[s(pts[i])];
      if (to < 0) throw std::logic_error("point set not invariant");
      img[i] = to;
    }
    gens.push_back(Permutation(std::move(img)));
  }
  return GeneratedGroup::make(std::move(gens), static_cast<int>(pts.size()));
}

GeneratedGroup find_m24() {
  const auto alpha = projective_map([](int x) { return x == INF ? INF : (x + 1) % P; });
  const auto beta = projective_map([](int x) {
    if (x == INF) return 0;
    if (x == 0) return INF;
    return (P - mod_inv(x)) % P;
  });
  std::set<int> squares;
  for (int x = 1; x < P; ++x) squares.insert(x * x % P);
  for (int c1 = 1; c1 < P; ++c1) {
    for (int c2 = 1; c2 < P; ++c2) {
      std::vector<int> img(P + 1);
      img[INF] = INF;
      bool bij = true;
      std::vector<bool> hit(P, false);
      for (int x = 0; x < P && bij; ++x) {
        const int y = x == 0 ? 0 : (squares.count(x) ? c1 : c2) * (x * x % P) % P * x % P;
        img[x] = y;
        if (hit[y]) bij = false;
        hit[y] = true;
      }
      if (!bij) continue;
      Permutation gamma(img);
      auto g = GeneratedGroup::make({alpha, beta, gamma}, P + 1, "m24");
      if (g.order() == M24_ORDER) {
        std::cout << "twist coefficients: " << c1 << " " << c2 << "\n";
        return g;
      }
    }
  }
  throw std::logic_error("no twist yields the large Mathieu group");
}

using Tetrad = std::vector<int>;

std::vector<int> apply_set(const std::vector<int>& s, const Permutation& p) {
  std::vector<int> out;
  out.reserve(s.size());
  for (int x : s) out.push_back(p(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::vector<int>> octads_of(const GeneratedGroup& m24, RandomSource& r) {
  // One octad arises as the fixed-point set of an involution with 8 fixed
  // points; the rest is its orbit.
  std::vector<int> seed;
  while (seed.empty()) {
    auto x = r.random_element(m24);
    const auto o = element_order(x);
    if (o % 2 != 0) continue;
    const auto t = perm_power(x, o / 2);
    std::vector<int> fixed;
    for (int i = 0; i < 24; ++i)
      if (t(i) == i) fixed.push_back(i);
    if (fixed.size() == 8) seed = fixed;
  }
  std::set<std::vector<int>> all{seed};
  std::vector<std::vector<int>> queue{seed};
  while (!queue.empty()) {
    auto cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& s : m24.generators()) {
      auto next = apply_set(cur, s);
      if (all.insert(next).second) queue.push_back(next);
    }
  }
  if (all.size() != 759) throw std::logic_error("octad orbit has wrong size");
  return all;
}

int main_impl() {
  const fs::path dir = "fixtures";
  fs::create_directories(dir);
  fs::create_directories(dir / "catalog_m11");
  fs::create_directories(dir / "catalog_m12");

  // ---- toys -------------------------------------------------------------
  {
    auto s8 = GeneratedGroup::make(
        {Permutation::from_one_based({2, 1, 3, 4, 5, 6, 7, 8}),
         Permutation::from_one_based({2, 3, 4, 5, 6, 7, 8, 1})},
        8);
    if (s8.order() != 40320) throw std::logic_error("s8");
    write_group(dir / "s8.grp", s8);
    auto wr = GeneratedGroup::make(
        {Permutation::from_one_based({2, 1, 3, 4, 5, 6, 7, 8}),
         Permutation::from_one_based({2, 3, 4, 1, 5, 6, 7, 8}),
         Permutation::from_one_based({1, 2, 3, 4, 6, 5, 7, 8}),
         Permutation::from_one_based({1, 2, 3, 4, 6, 7, 8, 5}),
         Permutation::from_one_based({5, 6, 7, 8, 1, 2, 3, 4})},
        8);
    if (wr.order() != 1152) throw std::logic_error("s4 wr s2");
    write_group(dir / "h_s4wrs2.grp", wr);
  }

  // ---- large Mathieu group and the sextet-line subgroup -------------------
  RandomSource rng(20260823, 0);
  const auto m24 = find_m24();
  write_group(dir / "m24.grp", m24);
  const auto octads = octads_of(m24, rng);

  auto setact = [](const std::vector<int>& k, const Permutation& s) { return apply_set(k, s); };

  // Sextet refining the tetrad {0,1,2,3}: complements of the octads through it.
  std::vector<Tetrad> sextet{{0, 1, 2, 3}};
  for (const auto& o : octads) {
    if (!std::includes(o.begin(), o.end(), sextet[0].begin(), sextet[0].end())) continue;
    Tetrad rest;
    std::set_difference(o.begin(), o.end(), sextet[0].begin(), sextet[0].end(),
                        std::back_inserter(rest));
    sextet.push_back(rest);
  }
  std::sort(sextet.begin(), sextet.end());
  if (sextet.size() != 6) throw std::logic_error("sextet has wrong size");

  auto sextact = [&](const std::vector<Tetrad>& k, const Permutation& s) {
    std::vector<Tetrad> out;
    for (const auto& t : k) out.push_back(apply_set(t, s));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto [sext_orbit, m_sext] = orbit_stabilizer(m24, sextet, sextact);
  if (sext_orbit != 1771 || m_sext.order() != 138240)
    throw std::logic_error("sextet stabilizer has wrong order");

  // Split the six tetrads into two triples; the stabilizer of the splitting
  // inside the sextet stabilizer is the target subgroup of order 13824.
  using Split = std::vector<std::vector<Tetrad>>;
  Split split{{sextet[0], sextet[1], sextet[2]}, {sextet[3], sextet[4], sextet[5]}};
  auto splitact = [&](const Split& k, const Permutation& s) {
    Split out(2);
    for (int i = 0; i < 2; ++i) {
      for (const auto& t : k[i]) out[i].push_back(apply_set(t, s));
      std::sort(out[i].begin(), out[i].end());
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto [split_orbit, k24] = orbit_stabilizer(m_sext, split, splitact);
  if (split_orbit != 10 || k24.order() != 13824)
    throw std::logic_error("tetrad-splitting stabilizer has wrong order");
  write_group(dir / "h_2_6_3_s3wrs2.grp", k24);

  // ---- dodecad stabilizer: the degree-12 Mathieu group --------------------
  std::vector<int> dodecad;
  for (auto it = octads.begin(); it != octads.end() && dodecad.empty(); ++it)
    for (auto jt = std::next(it); jt != octads.end(); ++jt) {
      std::vector<int> meet, sym;
      std::set_intersection(it->begin(), it->end(), jt->begin(), jt->end(),
                            std::back_inserter(meet));
      if (meet.size() != 2) continue;
      std::set_symmetric_difference(it->begin(), it->end(), jt->begin(), jt->end(),
                                    std::back_inserter(sym));
      dodecad = sym;
      break;
    }
  if (dodecad.size() != 12) throw std::logic_error("no dodecad found");
  auto [dd_orbit, dd_stab] = orbit_stabilizer(m24, dodecad, setact);
  if (dd_orbit != 2576) throw std::logic_error("dodecad orbit has wrong size");
  const auto m12 = restrict_to(dd_stab, dodecad).renamed("m12");
  if (m12.order() != 95040) throw std::logic_error("m12 order");
  write_group(dir / "m12.grp", m12);

  // Centralizer of an involution with 4 fixed points: 2^{1+4}.S3 of order 192.
  Permutation invol;
  while (invol.degree() == 0) {
    auto x = rng.random_element(m12);
    const auto o = element_order(x);
    if (o % 2 != 0) continue;
    const auto t = perm_power(x, o / 2);
    int fixed = 0;
    for (int i = 0; i < 12; ++i) fixed += t(i) == i;
    if (fixed == 4) invol = t;
  }
  auto conjact = [](const Permutation& k, const Permutation& s) { return conjugate_perm(k, s); };
  auto [cls_size, cent] = orbit_stabilizer(m12, invol, conjact, {invol});
  if (cls_size != 495 || cent.order() != 192)
    throw std::logic_error("involution centralizer has wrong order");
  write_group(dir / "h_2_1p4_s3.grp", cent);

  // ---- point stabilizers: degrees 11, 23, 22 ------------------------------
  auto pointact = [](int k, const Permutation& s) { return s(k); };
  auto [o12, m11_wide] = orbit_stabilizer(m12, 11, pointact);
  const auto m11 = restrict_to(m11_wide, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}).renamed("m11");
  if (m11.order() != 7920) throw std::logic_error("m11 order");
  write_group(dir / "m11.grp", m11);

  const auto h_sd16 = normalizer(m11, sylow_subgroup(m11, 3));
  if (h_sd16.order() != 144) throw std::logic_error("3^2:SD16 order");
  write_group(dir / "h_3_2_sd16.grp", h_sd16);
  write_group(dir / "catalog_m11" / "h_3_2_sd16.grp", h_sd16);
  const auto h_11_5 = normalizer(m11, sylow_subgroup(m11, 11));
  if (h_11_5.order() != 55) throw std::logic_error("11:5 order");
  write_group(dir / "catalog_m11" / "h_11_5.grp", h_11_5);
  const auto syl2 = sylow_subgroup(m11, 2);
  if (syl2.order() != 16) throw std::logic_error("sylow-2 order");
  write_group(dir / "catalog_m11" / "h_sd16.grp", syl2);
  write_group(dir / "catalog_m12" / "h_2_1p4_s3.grp", cent);

  auto [o24, m23_wide] = orbit_stabilizer(m24, 23, pointact);
  auto [o23, m22_wide] = orbit_stabilizer(m23_wide, 22, pointact);
  std::vector<int> pts22(22);
  for (int i = 0; i < 22; ++i) pts22[i] = i;
  const auto m22 = restrict_to(m22_wide, pts22).renamed("m22");
  if (m22.order() != 443520) throw std::logic_error("m22 order");
  write_group(dir / "m22.grp", m22);

  // Hexads through the two stabilized points; the hexad stabilizer is
  // 2^4:A6 and the stabilizer of a pair inside the hexad is 2^4:S4.
  std::vector<int> hexad;
  for (const auto& o : octads)
    if (std::binary_search(o.begin(), o.end(), 22) && std::binary_search(o.begin(), o.end(), 23)) {
      for (int x : o)
        if (x < 22) hexad.push_back(x);
      break;
    }
  if (hexad.size() != 6) throw std::logic_error("no hexad found");
  auto [hex_orbit, hex_stab] = orbit_stabilizer(m22, hexad, setact);
  if (hex_orbit != 77 || hex_stab.order() != 5760)
    throw std::logic_error("hexad stabilizer has wrong order");
  auto [pair_orbit, h24s4] =
      orbit_stabilizer(hex_stab, std::vector<int>{hexad[0], hexad[1]}, setact);
  if (pair_orbit != 15 || h24s4.order() != 384)
    throw std::logic_error("2^4:S4 has wrong order");
  write_group(dir / "h_2_4_s4.grp", h24s4);

  std::cout << "all fixtures written\n";
  return 0;
}

}  // namespace

int main() {
  try {
    return main_impl();
  } catch (const std::exception& e) {
    std::cerr << "fixture_gen: " << e.what() << "\n";
    return 1;
  }
}

#include "bst/perm.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bst {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  const int n = degree();
  std::vector<char> seen(n, 0);
  for (int v : img_) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::unchecked(std::vector<int> images) {
  Permutation p;
  p.img_ = std::move(images);
  return p;
}

Permutation Permutation::identity(int degree) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return unchecked(std::move(img));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> img(images.size());
  for (size_t i = 0; i < images.size(); ++i) img[i] = images[i] - 1;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

int Permutation::smallest_moved_point() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return i;
  return -1;
}

std::string Permutation::one_based_images() const {
  std::ostringstream os;
  for (int i = 0; i < degree(); ++i) {
    if (i) os << ' ';
    os << img_[i] + 1;
  }
  return os.str();
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<char> done(degree(), 0);
  bool any = false;
  for (int i = 0; i < degree(); ++i) {
    if (done[i] || img_[i] == i) continue;
    any = true;
    os << '(' << i + 1;
    done[i] = 1;
    for (int j = img_[i]; j != i; j = img_[j]) {
      os << ' ' << j + 1;
      done[j] = 1;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<int> img(a.degree());
  for (int i = 0; i < a.degree(); ++i) img[i] = b(a(i));
  return Permutation::unchecked(std::move(img));
}

Permutation invert(const Permutation& a) {
  std::vector<int> img(a.degree());
  for (int i = 0; i < a.degree(); ++i) img[a(i)] = i;
  return Permutation::unchecked(std::move(img));
}

Permutation conjugate_perm(const Permutation& g, const Permutation& x) {
  if (g.degree() != x.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<int> img(g.degree());
  for (int i = 0; i < g.degree(); ++i) img[x(i)] = x(g(i));
  return Permutation::unchecked(std::move(img));
}

Permutation perm_power(const Permutation& a, const mpz_class& e) {
  const int n = a.degree();
  std::vector<int> img(n);
  std::vector<char> done(n, 0);
  std::vector<int> cyc;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    cyc.clear();
    for (int j = i; !done[j]; j = a(j)) {
      done[j] = 1;
      cyc.push_back(j);
    }
    const size_t len = cyc.size();
    mpz_class r = e % static_cast<unsigned long>(len);
    if (r < 0) r += static_cast<unsigned long>(len);
    const size_t shift = r.get_ui();
    for (size_t k = 0; k < len; ++k) img[cyc[k]] = cyc[(k + shift) % len];
  }
  return Permutation::unchecked(std::move(img));
}

mpz_class element_order(const Permutation& a) {
  const int n = a.degree();
  std::vector<char> done(n, 0);
  mpz_class ord = 1;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    unsigned long len = 0;
    for (int j = i; !done[j]; j = a(j)) {
      done[j] = 1;
      ++len;
    }
    mpz_class l(len);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ord.get_mpz_t(), l.get_mpz_t());
    ord = ord / g * l;
  }
  return ord;
}

}  // namespace bst

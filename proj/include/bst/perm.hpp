#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bst {

// Dense permutation on {0,...,n-1}. External surfaces (files, printing) are
// 1-based; everything in memory is 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // validates bijection
  static Permutation identity(int degree);
  static Permutation from_one_based(const std::vector<int>& images);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int p) const { return img_[p]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  int smallest_moved_point() const;  // -1 if identity
  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  std::string one_based_images() const;  // "2 3 1"
  std::string cycle_string() const;      // "(1 2 3)", 1-based, "()" for id

  // Trusted constructor for internally-built image arrays.
  static Permutation unchecked(std::vector<int> images);

 private:
  std::vector<int> img_;
};

// result(i) = b(a(i)) — "apply a, then b".
Permutation compose(const Permutation& a, const Permutation& b);
Permutation invert(const Permutation& a);
// x^{-1} g x
Permutation conjugate_perm(const Permutation& g, const Permutation& x);
Permutation perm_power(const Permutation& a, const mpz_class& e);
mpz_class element_order(const Permutation& a);

}  // namespace bst

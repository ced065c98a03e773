#pragma once

#include <vector>

#include "duality/errors.hpp"
#include "duality/poly.hpp"

namespace duality {

// Skew-symmetric matrix; set(i, j, v) also stores -v at (j, i).
template <typename T>
class SkewMatrix {
 public:
  SkewMatrix(int n, const T& zero) : n_(n), zero_(zero), data_(static_cast<size_t>(n) * n, zero) {}
  int size() const { return n_; }
  const T& at(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, const T& v) {
    if (i == j) throw std::invalid_argument("diagonal of a skew matrix is zero");
    data_[static_cast<size_t>(i) * n_ + j] = v;
    data_[static_cast<size_t>(j) * n_ + i] = -v;
  }
  const T& zero() const { return zero_; }

 private:
  int n_;
  T zero_;
  std::vector<T> data_;
};

// Expansion along the first remaining row, memoized on the remaining-index bitmask. Cost is
// governed by the number of partial matchings, so sparse matrices up to dimension 64 are fine.
SparsePoly pfaffian(const SkewMatrix<SparsePoly>& m);
// Exact skew elimination over Q.
Rational pfaffian(const SkewMatrix<Rational>& m);
// Plain expansion over all perfect matchings; reference for small dimensions.
Rational pfaffian_by_matchings(const SkewMatrix<Rational>& m);
Rational determinant(std::vector<std::vector<Rational>> a);
std::vector<std::vector<Rational>> dense(const SkewMatrix<Rational>& m);

}  // namespace duality

#include "duality/pfaffian.hpp"

#include <cstdint>
#include <unordered_map>

namespace duality {

namespace {

constexpr int kMaxDim = 64;

struct PolyPfaffian {
  const SkewMatrix<SparsePoly>& m;
  std::unordered_map<uint64_t, SparsePoly> memo;

  SparsePoly solve(uint64_t rest) {
    if (rest == 0) return SparsePoly::constant(m.zero().nvars(), 1);
    auto it = memo.find(rest);
    if (it != memo.end()) return it->second;
    // pick the remaining row with the fewest nonzero entries to keep the branching small
    int best = -1, best_count = kMaxDim + 1;
    for (uint64_t r = rest; r; r &= r - 1) {
      int i = __builtin_ctzll(r);
      int count = 0;
      for (uint64_t s = rest & ~(1ULL << i); s; s &= s - 1)
        if (!m.at(i, __builtin_ctzll(s)).is_zero()) ++count;
      if (count < best_count) {
        best = i;
        best_count = count;
      }
    }
    SparsePoly total(m.zero().nvars());
    if (best_count > 0) {
      // Pf(A) = sum_j sign * a_{best,j} Pf(A without best, j); sign from the positions of best
      // and j inside the ordered remaining set.
      uint64_t others = rest & ~(1ULL << best);
      int pos_best = __builtin_popcountll(rest & ((1ULL << best) - 1));
      for (uint64_t s = others; s; s &= s - 1) {
        int j = __builtin_ctzll(s);
        const SparsePoly& a = m.at(best, j);
        if (a.is_zero()) continue;
        int pos_j = __builtin_popcountll(rest & ((1ULL << j) - 1));
        // moving best to the front then j to second place
        int shift = pos_best + (pos_j > pos_best ? pos_j - 1 : pos_j);
        SparsePoly sub = solve(others & ~(1ULL << j));
        if (sub.is_zero()) continue;
        SparsePoly term = a * sub;
        if (shift % 2) term = -term;
        total += term;
      }
    }
    memo.emplace(rest, total);
    return total;
  }
};

}  // namespace

SparsePoly pfaffian(const SkewMatrix<SparsePoly>& m) {
  int n = m.size();
  if (n % 2) throw Error(ErrorKind::OddDimension, "Pfaffian of odd dimension " + std::to_string(n));
  if (n > kMaxDim) throw Error(ErrorKind::SizeLimit, "Pfaffian dimension above 64");
  PolyPfaffian p{m, {}};
  uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  return p.solve(all);
}

Rational pfaffian(const SkewMatrix<Rational>& m) {
  int n = m.size();
  if (n % 2) throw Error(ErrorKind::OddDimension, "Pfaffian of odd dimension " + std::to_string(n));
  auto a = dense(m);
  Rational result = 1;
  for (int k = 0; k < n; k += 2) {
    // pivot: bring a nonzero a[k][p] into column k+1
    int p = -1;
    for (int j = k + 1; j < n; ++j)
      if (a[k][j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return 0;
    if (p != k + 1) {
      std::swap(a[k + 1], a[p]);
      for (auto& row : a) std::swap(row[k + 1], row[p]);
      result = -result;
    }
    Rational piv = a[k][k + 1];
    result *= piv;
    for (int i = k + 2; i < n; ++i) {
      for (int j = k + 2; j < n; ++j) {
        if (i == j) continue;
        a[i][j] += (a[k + 1][i] * a[k][j] - a[k][i] * a[k + 1][j]) / piv;
      }
    }
  }
  return result;
}

Rational pfaffian_by_matchings(const SkewMatrix<Rational>& m) {
  int n = m.size();
  if (n % 2) throw Error(ErrorKind::OddDimension, "Pfaffian of odd dimension");
  std::vector<int> rest(n);
  for (int i = 0; i < n; ++i) rest[i] = i;
  std::function<Rational(const std::vector<int>&)> rec = [&](const std::vector<int>& r) -> Rational {
    if (r.empty()) return 1;
    Rational sum = 0;
    for (size_t k = 1; k < r.size(); ++k) {
      if (m.at(r[0], r[k]) == 0) continue;
      std::vector<int> sub;
      for (size_t t = 1; t < r.size(); ++t)
        if (t != k) sub.push_back(r[t]);
      Rational term = m.at(r[0], r[k]) * rec(sub);
      sum += (k % 2 == 1) ? term : Rational(-term);
    }
    return sum;
  };
  return rec(rest);
}

std::vector<std::vector<Rational>> dense(const SkewMatrix<Rational>& m) {
  int n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  return a;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace duality

#pragma once

#include <string>
#include <vector>

#include "duality/qsqrt.hpp"

namespace duality {

// Spins and magnetic numbers are passed doubled: tj = 2j, tm = 2m.
bool triangle_ok(int tj1, int tj2, int tj3);
// (-1)^(n/2) for an even doubled exponent n.
inline int phase(int doubled) { return (doubled / 2) % 2 == 0 ? 1 : -1; }

QSqrt three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);

// Racah single sum.
QSqrt six_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);
// Contraction of four 3j symbols over all magnetic numbers (tetrahedral network).
RadicalSum six_j_contraction(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

// Theta evaluation (a+b+c+1)!/((a+b-c)!(a+c-b)!(b+c-a)!) for spins a, b, c.
Integer theta_delta(int tj1, int tj2, int tj3);

// Cached floating-point symbols for large contractions; exact path converted once per key.
double three_j_double(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double six_j_double(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

struct RecouplingReport {
  bool ok = true;
  long cases = 0;
  std::string detail;  // first failing case
};

// Orthogonality, completeness and the signed orthogonality relation for all spins
// with 2j <= max_tj.
RecouplingReport check_orthogonality(int max_tj);

// Both sides of the recoupling identity for fixed (j1, j2, j3, j, j12) and every m.
// `with_sign` keeps the (-1)^{2 j1} factor on the right.
RecouplingReport check_whitehead(int tj1, int tj2, int tj3, int tj, int tj12, bool with_sign = true);
// Sweep over every assignment with all spins 2j <= max_tj.
RecouplingReport check_whitehead_all(int max_tj, bool with_sign = true);

}  // namespace duality

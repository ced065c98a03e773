#pragma once

#include <array>
#include <string>
#include <vector>

#include "duality/graph.hpp"

namespace duality {

// Triangle with sides l = sides[0], l1, l2; gamma[i] is the angle opposite sides[i].
struct TriangleGeometry {
  std::array<double, 3> sides{};
  double half_perimeter = 0;  // L
  double area = 0;            // Heron
  double inradius = 0;
  std::array<double, 3> gamma{};
  std::array<double, 3> half_tan{};  // tan(gamma_i / 2) = r / (L - l_i)
};

// Throws DegenerateTriangle unless the strict triangle inequalities hold.
TriangleGeometry triangle_geometry(double l, double l1, double l2);

// Y^2 = tan(gs/2) tan(gt/2) for a shared side l with neighbours (l1, l2) at s and (m1, m2) at t.
double coupling_tangent_form(double l, double l1, double l2, double m1, double m2);
// Y^4 = (L-l1)(L-l2)/(L(L-l)) * (M-m1)(M-m2)/(M(M-l)), L and M the half-perimeters.
double coupling_ratio_form(double l, double l1, double l2, double m1, double m2);

struct StationaryResult {
  std::vector<double> Y;        // tangent form, per edge
  std::vector<double> Y_ratio;  // ratio form, per edge
  std::vector<TriangleGeometry> triangles;  // per vertex, sides in rotation order
  double max_difference = 0;
  bool agree = false;  // max_difference <= 1e-12
};

// Side lengths l_e = 2 j_e per edge.
StationaryResult stationary_couplings(const PlanarGraph& g, const std::vector<double>& lengths);

struct IsoradialResult {
  double theta = 0;
  double y_c = 0;
  double Y_exponential = 0;  // from e^{2y} = (1 + sin t)/cos t
  double Y_tangent = 0;      // tan(t/2)
  bool ok = false;
};

// Throws Domain unless 0 < theta < pi/2.
IsoradialResult isoradial_check(double theta);

// Complete integrals of modulus k (Domain for |k| >= 1) by the arithmetic-geometric mean.
double agm_K(double k);
double agm_E(double k);
// Carlson symmetric forms.
double carlson_RF(double x, double y, double z);
double carlson_RD(double x, double y, double z);
// Incomplete integrals of modulus k, 0 <= phi <= pi/2 (Domain for |k| >= 1).
double carlson_F(double phi, double k);
double carlson_E(double phi, double k);
// Incomplete integrals in parameter form, m sin^2 phi < 1 (m may be negative).
double ellip_F_param(double phi, double m);
double ellip_E_param(double phi, double m);

// Corrected: coth 2y and arctan sinh 2y with parameter 1 - k^2, which matches the lattice free energy.
// Literal: coth 2L and arctan sinh 2L with modulus 1 - k^2, as displayed.
enum class HexVariant { Corrected, Literal };
std::string hex_variant_name(HexVariant v);

struct HexCorrelation {
  double y = 0;
  double L = 0, k = 0, k1 = 0;
  double a = 0, b = 0, A = 0, B = 0;
  double g = 0;
  double mean_j_plus_half = 0;
  bool near_critical = false;  // |k - 1| < 1e-8, asymptotic a(k), b(k)
  HexVariant variant = HexVariant::Corrected;
};

// Throws Domain for y <= 0. The literal variant yields NaN where its modulus leaves [0, 1).
HexCorrelation hex_correlation(double y, HexVariant v = HexVariant::Corrected);
double hex_k(double y);
double hex_g(double y, HexVariant v = HexVariant::Corrected);
double hex_mean_j_plus_half(double y, HexVariant v = HexVariant::Corrected);
// Root of k(y) = 1 by bisection.
double hex_critical_coupling(double tol = 1e-15);
// d<2j>/d beta at beta = 1, i.e. y d<2j>/dy, by central differences.
double hex_dj_dbeta(double y, HexVariant v = HexVariant::Corrected);

struct CurveRow {
  double y, g, mean_j_plus_half, dj_dbeta;
  bool near_critical;
};

std::vector<CurveRow> emit_curve(double from, double to, double step, HexVariant v = HexVariant::Corrected);
std::string curve_csv(const std::vector<CurveRow>& rows);

// Pearson correlation of d<2j>/d beta against ln|t|, t = 1 - y_c/y, on log-spaced |t| in [t_min, t_max].
// side = +1 samples y > y_c, -1 samples y < y_c.
double critical_log_correlation(int side, double t_min = 1e-4, double t_max = 1e-2, int samples = 40,
                                HexVariant v = HexVariant::Corrected);

}  // namespace duality

#include "duality/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

namespace {

constexpr double kPi = 3.14159265358979323846;
// rows this close to y_c are flagged even when |k - 1| exceeds the asymptotic switch
constexpr double kCriticalBand = 1.5e-6;

void require_nondegenerate(double l, double l1, double l2) {
  if (!(l > 0 && l1 > 0 && l2 > 0) || !(l < l1 + l2 && l1 < l + l2 && l2 < l + l1))
    throw Error(ErrorKind::DegenerateTriangle, "sides violate the strict triangle inequality");
}

double half_tangent(double l, double l1, double l2) {
  TriangleGeometry t = triangle_geometry(l, l1, l2);
  return t.half_tan[0];
}

// K and S = sum_n 2^{n-1} c_n^2, so that E = K (1 - S), from modulus k and complement kp.
struct AgmResult {
  double K, S;
};

AgmResult agm(double k, double kp) {
  double a = 1, b = kp, S = 0.5 * k * k, pw = 0.5;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pw *= 2;
    S += pw * c * c;
  }
  return {kPi / (2 * a), S};
}

void require_modulus(double k) {
  if (!(std::abs(k) < 1)) throw Error(ErrorKind::Domain, "modulus must satisfy |k| < 1");
}

}  // namespace

TriangleGeometry triangle_geometry(double l, double l1, double l2) {
  require_nondegenerate(l, l1, l2);
  TriangleGeometry t;
  t.sides = {l, l1, l2};
  const double L = 0.5 * (l + l1 + l2);
  t.half_perimeter = L;
  t.area = std::sqrt(L * (L - l) * (L - l1) * (L - l2));
  t.inradius = t.area / L;
  for (int i = 0; i < 3; ++i) {
    const double a = t.sides[i], b = t.sides[(i + 1) % 3], c = t.sides[(i + 2) % 3];
    t.half_tan[i] = t.inradius / (L - a);
    t.gamma[i] = std::atan2(2 * t.area, (b * b + c * c - a * a) / 2);
  }
  return t;
}

double coupling_tangent_form(double l, double l1, double l2, double m1, double m2) {
  return std::sqrt(half_tangent(l, l1, l2) * half_tangent(l, m1, m2));
}

double coupling_ratio_form(double l, double l1, double l2, double m1, double m2) {
  require_nondegenerate(l, l1, l2);
  require_nondegenerate(l, m1, m2);
  const double L = 0.5 * (l + l1 + l2), M = 0.5 * (l + m1 + m2);
  const double y4 = (L - l1) * (L - l2) / (L * (L - l)) * (M - m1) * (M - m2) / (M * (M - l));
  return std::pow(y4, 0.25);
}

StationaryResult stationary_couplings(const PlanarGraph& g, const std::vector<double>& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_edges())
    throw Error(ErrorKind::InvalidEdge, "one side length per edge required");
  StationaryResult r;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& rot = g.rotation(v);
    r.triangles.push_back(
        triangle_geometry(lengths[g.edge_of(rot[0])], lengths[g.edge_of(rot[1])], lengths[g.edge_of(rot[2])]));
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    double tan_prod = 1;
    std::array<double, 2> nb1{}, nb2{};
    int side = 0;
    for (int h : {g.src_half(e), g.dst_half(e)}) {
      const int v = g.vertex(h);
      const auto& rot = g.rotation(v);
      const int pos = static_cast<int>(std::find(rot.begin(), rot.end(), h) - rot.begin());
      tan_prod *= r.triangles[v].half_tan[pos];
      nb1[side] = lengths[g.edge_of(g.next_ccw(h))];
      nb2[side] = lengths[g.edge_of(g.prev_ccw(h))];
      ++side;
    }
    r.Y.push_back(std::sqrt(tan_prod));
    r.Y_ratio.push_back(coupling_ratio_form(lengths[e], nb1[0], nb2[0], nb1[1], nb2[1]));
    r.max_difference = std::max(r.max_difference, std::abs(r.Y.back() - r.Y_ratio.back()));
  }
  r.agree = r.max_difference <= 1e-12;
  return r;
}

IsoradialResult isoradial_check(double theta) {
  if (!(theta > 0 && theta < kPi / 2)) throw Error(ErrorKind::Domain, "half-rhombus angle must lie in (0, pi/2)");
  IsoradialResult r;
  r.theta = theta;
  const double e2y = (1 + std::sin(theta)) / std::cos(theta);
  r.y_c = 0.5 * std::log(e2y);
  r.Y_exponential = (e2y - 1) / (e2y + 1);
  r.Y_tangent = std::tan(theta / 2);
  r.ok = std::abs(r.Y_exponential - r.Y_tangent) <= 1e-12 && std::abs(std::tanh(r.y_c) - r.Y_tangent) <= 1e-12;
  return r;
}

double agm_K(double k) {
  if (std::abs(k) >= 1) throw Error(ErrorKind::Domain, "K(k) diverges logarithmically at |k| = 1");
  return agm(k, std::sqrt((1 - k) * (1 + k))).K;
}

double agm_E(double k) {
  if (std::abs(k) == 1) return 1;
  require_modulus(k);
  AgmResult r = agm(k, std::sqrt((1 - k) * (1 + k)));
  return r.K * (1 - r.S);
}

double carlson_RF(double x, double y, double z) {
  if (std::min({x, y, z}) < 0 || std::min({x + y, x + z, y + z}) == 0)
    throw Error(ErrorKind::Domain, "R_F needs nonnegative arguments, at most one zero");
  constexpr double tol = 0.0025;
  double xt = x, yt = y, zt = z, ave, dx, dy, dz;
  do {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = (xt + yt + zt) / 3;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > tol);
  const double e2 = dx * dy - dz * dz, e3 = dx * dy * dz;
  return (1 + (e2 / 24 - 0.1 - 3 * e3 / 44) * e2 + e3 / 14) / std::sqrt(ave);
}

double carlson_RD(double x, double y, double z) {
  if (std::min(x, y) < 0 || x + y == 0 || z <= 0)
    throw Error(ErrorKind::Domain, "R_D needs x, y >= 0 not both zero and z > 0");
  constexpr double tol = 0.0015;
  constexpr double c1 = 3.0 / 14, c2 = 1.0 / 6, c3 = 9.0 / 22, c4 = 3.0 / 26, c5 = 0.25 * c3, c6 = 1.5 * c4;
  double xt = x, yt = y, zt = z, sum = 0, fac = 1, ave, dx, dy, dz;
  do {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = 0.2 * (xt + yt + 3 * zt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > tol);
  const double ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6 * eb, ee = ed + ec + ec;
  return 3 * sum + fac * (1 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
}

double ellip_F_param(double phi, double m) {
  const double s = std::sin(phi), c = std::cos(phi);
  if (s == 0) return 0;
  if (m * s * s >= 1) throw Error(ErrorKind::Domain, "m sin^2 phi must be below 1");
  return s * carlson_RF(c * c, 1 - m * s * s, 1);
}

double ellip_E_param(double phi, double m) {
  const double s = std::sin(phi), c = std::cos(phi);
  if (s == 0) return 0;
  if (m * s * s >= 1) throw Error(ErrorKind::Domain, "m sin^2 phi must be below 1");
  const double q = 1 - m * s * s;
  return s * carlson_RF(c * c, q, 1) - m / 3 * s * s * s * carlson_RD(c * c, q, 1);
}

double carlson_F(double phi, double k) {
  require_modulus(k);
  return ellip_F_param(phi, k * k);
}

double carlson_E(double phi, double k) {
  require_modulus(k);
  return ellip_E_param(phi, k * k);
}

std::string hex_variant_name(HexVariant v) { return v == HexVariant::Corrected ? "corrected" : "literal"; }

double hex_k(double y) {
  if (!(y > 0)) throw Error(ErrorKind::Domain, "hexagonal coupling must be positive");
  const double L = 0.25 * std::log(std::cosh(3 * y) / std::cosh(y));
  return 1 / (std::sinh(2 * L) * std::sinh(2 * y));
}

HexCorrelation hex_correlation(double y, HexVariant v) {
  if (!(y > 0)) throw Error(ErrorKind::Domain, "hexagonal coupling must be positive");
  HexCorrelation h;
  h.y = y;
  h.variant = v;
  h.L = 0.25 * std::log(std::cosh(3 * y) / std::cosh(y));
  h.k = 1 / (std::sinh(2 * h.L) * std::sinh(2 * y));
  const double k = h.k;
  h.k1 = 2 * std::sqrt(k) / (1 + k);
  const double k1p = std::abs(1 - k) / (1 + k);
  h.near_critical = std::abs(k - 1) < 1e-8;
  if (h.near_critical) {
    const double one_minus_k2 = (1 - k) * (1 + k);
    h.b = one_minus_k2 == 0 ? 0 : one_minus_k2 / kPi * std::log(16 / std::abs(one_minus_k2));
    const double K1 = k1p == 0 ? 0 : std::log(4 / k1p);
    h.a = ((1 + k) + (1 - k) * K1) / kPi;
  } else {
    AgmResult r = agm(h.k1, k1p);
    // (1+k)E + (1-k)K = E + K - k (K - E), with K - E = K S
    h.a = (r.K * (1 - r.S) + r.K - k * r.K * r.S) / kPi;
    h.b = 2 / kPi * (1 - k) * r.K;
  }
  const double u = v == HexVariant::Corrected ? y : h.L;
  const double one_minus_k2 = (1 - k) * (1 + k);
  const double m = v == HexVariant::Corrected ? one_minus_k2 : one_minus_k2 * one_minus_k2;
  // phi = arctan sinh 2u: sin phi = tanh 2u, cos phi = 1/cosh 2u
  const double s = std::tanh(2 * u), c = 1 / std::cosh(2 * u);
  const double q = 1 - m * s * s;
  if (q <= 0) {
    h.A = h.B = h.g = h.mean_j_plus_half = std::numeric_limits<double>::quiet_NaN();
    return h;
  }
  h.A = s * carlson_RF(c * c, q, 1);
  // (F - E)/(1 - k^2) = m/(1 - k^2) * s^3 R_D / 3
  const double ratio = v == HexVariant::Corrected ? 1.0 : one_minus_k2;
  h.B = ratio / 3 * s * s * s * carlson_RD(c * c, q, 1);
  h.g = (h.a * h.A - h.b * h.B) / std::tanh(2 * u);
  h.mean_j_plus_half = 0.25 * (std::exp(2 * y) * (1 - h.g) + std::exp(-2 * y) * (1 + h.g));
  return h;
}

double hex_g(double y, HexVariant v) { return hex_correlation(y, v).g; }

double hex_mean_j_plus_half(double y, HexVariant v) { return hex_correlation(y, v).mean_j_plus_half; }

double hex_critical_coupling(double tol) {
  double lo = 0.1, hi = 2.0;  // k decreases through 1 on this bracket
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (hex_k(mid) > 1 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double hex_dj_dbeta(double y, HexVariant v) {
  static const double yc = hex_critical_coupling();
  const double h = std::clamp(std::abs(y - yc) / 10, 1e-9, 1e-5);
  const double up = 2 * hex_mean_j_plus_half(y + h, v), dn = 2 * hex_mean_j_plus_half(y - h, v);
  return y * (up - dn) / (2 * h);
}

std::vector<CurveRow> emit_curve(double from, double to, double step, HexVariant v) {
  if (!(step > 0) || to < from) return {};
  const long n = std::lround((to - from) / step) + 1;
  const double yc = hex_critical_coupling();
  std::vector<CurveRow> rows(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const double y = from + static_cast<double>(i) * step;
    HexCorrelation h = hex_correlation(y, v);
    const bool flagged = h.near_critical || std::abs(y - yc) <= kCriticalBand;
    rows[i] = {y, h.g, h.mean_j_plus_half, hex_dj_dbeta(y, v), flagged};
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream os;
  os << "y,g,mean_j_plus_half,dj_dbeta\n" << std::setprecision(15);
  for (const auto& r : rows) os << r.y << ',' << r.g << ',' << r.mean_j_plus_half << ',' << r.dj_dbeta << '\n';
  return os.str();
}

double critical_log_correlation(int side, double t_min, double t_max, int samples, HexVariant v) {
  const double yc = hex_critical_coupling();
  std::vector<double> xs, ys;
  for (int i = 0; i < samples; ++i) {
    const double t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (samples - 1));
    const double y = side > 0 ? yc / (1 - t) : yc / (1 + t);
    xs.push_back(std::log(t));
    ys.push_back(hex_dj_dbeta(y, v));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / samples;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / samples;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < samples; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return std::abs(sxy) / std::sqrt(sxx * syy);
}

}  // namespace duality

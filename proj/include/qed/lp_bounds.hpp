#pragma once

// Finite-length linear-programming machinery for lower bounds on the
// undetected-error probability: the primal LP over dual-code weight
// distributions, verifiable dual certificates (two mirrored variants plus a
// cone relaxation), and the two explicit polynomial constructions that feed
// the asymptotic upper bounds at finite n.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "qed/entropy.hpp"
#include "qed/exact.hpp"
#include "qed/krawtchouk.hpp"
#include "qed/simplex.hpp"

namespace qed {

// A polynomial represented by its coefficients in the Krawtchouk basis:
// Z(x) = sum_i coeffs[i] * K_i(q; x).
struct KrawPoly {
  int q = 4;
  long n = 0;
  std::vector<double> coeffs;  // z_0 .. z_n
};

// Evaluates the polynomial at integer x through an exact Krawtchouk table.
inline double kraw_poly_eval(const KrawPoly& poly, const KrawTable& table,
                             long x) {
  if (static_cast<long>(poly.coeffs.size()) != poly.n + 1)
    throw ParameterError("kraw_poly_eval: coefficient count != n+1");
  long double acc = 0.0L;
  for (long i = 0; i <= poly.n; ++i) {
    if (poly.coeffs[i] == 0.0) continue;
    acc += static_cast<long double>(poly.coeffs[i]) *
           static_cast<long double>(table(i, x).get_d());
  }
  return static_cast<double>(acc);
}

// Point values of the polynomial at x = 0..n.
inline std::vector<double> kraw_poly_values(const KrawPoly& poly) {
  KrawTable table(poly.q, poly.n);
  std::vector<double> values(poly.n + 1, 0.0);
  for (long x = 0; x <= poly.n; ++x)
    values[x] = kraw_poly_eval(poly, table, x);
  return values;
}

// Channel weight of an error pattern of weight j: (p/gamma)^j (1-p)^(n-j).
inline double undetected_weight(long n, int q, double p, long j) {
  if (j < 0 || j > n) throw ParameterError("undetected_weight: j out of range");
  const double g = q - 1;
  return std::pow(p / g, static_cast<double>(j)) *
         std::pow(1.0 - p, static_cast<double>(n - j));
}

// ---------------------------------------------------------------------------
// Primal LP over the weight distribution of the dual code.
// ---------------------------------------------------------------------------

// Variables are B_1^perp .. B_n^perp.  Constraints: the total-mass equality,
// nonnegativity of the transformed distribution (K rows), and dominance of
// the dual distribution over the primal one (T rows).  Rows are divided by
// C(n,i) gamma^i so entries stay near unit scale for large n.
inline LpProblem build_primal(long n, int q, double size_cperp, double p) {
  if (n < 1) throw ParameterError("build_primal: n must be >= 1");
  if (q < 2) throw ParameterError("build_primal: q must be >= 2");
  if (!(size_cperp > 1.0))
    throw ParameterError("build_primal: |C_perp| must exceed 1");
  const double g = q - 1;
  if (!(p >= 0.0 && p < g / q))
    throw ParameterError("build_primal: p must lie in [0, (q-1)/q)");
  KrawTable table(q, n);
  std::vector<double> row_scale(n + 1, 1.0);
  for (long i = 1; i <= n; ++i)
    row_scale[i] = binom(n, i).get_d() * std::pow(g, static_cast<double>(i));

  LpProblem lp;
  lp.c.resize(n);
  lp.var_names.resize(n);
  const double shrink = (g - q * p) / g;
  for (long j = 1; j <= n; ++j) {
    lp.c[j - 1] = size_cperp * undetected_weight(n, q, p, j) -
                  std::pow(shrink, static_cast<double>(j));
    lp.var_names[j - 1] = "B" + std::to_string(j);
  }

  lp.a_eq.push_back(std::vector<double>(n, 1.0));
  lp.b_eq.push_back(size_cperp - 1.0);
  lp.eq_names.push_back("total");

  for (long i = 1; i <= n; ++i) {  // transformed distribution >= 0
    std::vector<double> row(n, 0.0);
    for (long j = 1; j <= n; ++j)
      row[j - 1] = table(i, j).get_d() / row_scale[i];
    lp.a_ge.push_back(std::move(row));
    lp.b_ge.push_back(-1.0);
    lp.ge_names.push_back("K" + std::to_string(i));
  }
  for (long j = 1; j <= n; ++j) {  // dual distribution dominates primal
    std::vector<double> row(n, 0.0);
    for (long i = 1; i <= n; ++i)
      row[i - 1] = -table(j, i).get_d() / row_scale[j];
    row[j - 1] += size_cperp / row_scale[j];
    lp.a_ge.push_back(std::move(row));
    lp.b_ge.push_back(1.0);
    lp.ge_names.push_back("T" + std::to_string(j));
  }
  return lp;
}

// Lower bound on P_ue over all ((1+rq)/2 * n)-dimensional dual-containing
// pairs at length n: optimum / |C_perp| + (1-p)^n - 1 / |C_perp|.
inline double pue_lower_bound(long n, int q, double rq, double p) {
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("pue_lower_bound: rq must lie in [0, 1]");
  const double rperp = (1.0 + rq) / 2.0;
  const double size_cperp =
      std::pow(static_cast<double>(q), static_cast<double>(n) * rperp);
  const LpProblem lp = build_primal(n, q, size_cperp, p);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw NumericFailure("pue_lower_bound: primal LP not optimal");
  return sol.objective / size_cperp +
         std::pow(1.0 - p, static_cast<double>(n)) - 1.0 / size_cperp;
}

// ---------------------------------------------------------------------------
// Dual certificates.
// ---------------------------------------------------------------------------

struct CertificateResult {
  bool feasible = false;
  double bound = 0.0;   // meaningful when feasible
  long witness = -1;    // first violated index when infeasible
  std::string reason;   // which condition failed
};

namespace detail {

inline void check_cert_shapes(const KrawPoly& z, const KrawPoly& y, long n) {
  if (z.n != n || y.n != n)
    throw ParameterError("dual certificate: polynomial length != n");
  if (static_cast<long>(z.coeffs.size()) != n + 1 ||
      static_cast<long>(y.coeffs.size()) != n + 1)
    throw ParameterError("dual certificate: coefficient count != n+1");
}

constexpr double kSignTol = 1e-12;

inline double row_tol(double rhs) {
  return 1e-9 * std::max(1.0, std::abs(rhs));
}

}  // namespace detail

// Certificate over the dual-code distribution: coefficients z_j, y_j >= 0
// for j >= 1 (z_0, y_0 free) such that for every 1 <= j <= n
//   Z(j) - Y(j) + y_0 + y_j S  <=  S (p/g)^j (1-p)^{n-j} - ((g-qp)/g)^j,
// with S = q^{n rperp}.  Every feasible certificate yields the lower bound
//   S^{-1} (z_0 S - Z(0) + Y(0) - y_0) + (1-p)^n - S^{-1}  <=  P_ue.
inline CertificateResult dual_certificate_perp(const KrawPoly& z,
                                               const KrawPoly& y, long n,
                                               int q, double rperp, double p) {
  detail::check_cert_shapes(z, y, n);
  const double g = q - 1;
  if (!(p >= 0.0 && p < g / q))
    throw ParameterError("dual_certificate_perp: p must lie in [0, (q-1)/q)");
  for (long j = 1; j <= n; ++j) {
    if (z.coeffs[j] < -detail::kSignTol)
      return {false, 0.0, j, "z_j negative"};
    if (y.coeffs[j] < -detail::kSignTol)
      return {false, 0.0, j, "y_j negative"};
  }
  const double s =
      std::pow(static_cast<double>(q), static_cast<double>(n) * rperp);
  const double y0 = y.coeffs[0];
  const double z0 = z.coeffs[0];
  KrawTable table(q, n);
  std::vector<double> zv(n + 1), yv(n + 1);
  for (long x = 0; x <= n; ++x) {
    zv[x] = kraw_poly_eval(z, table, x);
    yv[x] = kraw_poly_eval(y, table, x);
  }
  const double shrink = (g - q * p) / g;
  for (long j = 1; j <= n; ++j) {
    const double lhs = zv[j] - yv[j] + y0 + y.coeffs[j] * s;
    const double rhs = s * undetected_weight(n, q, p, j) -
                       std::pow(shrink, static_cast<double>(j));
    if (lhs > rhs + detail::row_tol(rhs))
      return {false, 0.0, j, "row constraint violated"};
  }
  const double bound = (z0 * s - zv[0] + yv[0] - y0) / s +
                       std::pow(1.0 - p, static_cast<double>(n)) - 1.0 / s;
  return {true, bound, -1, ""};
}

// Mirrored certificate phrased over the primal-code distribution, with
// S = q^{n r}:   Z(j) + Y(j) - y_0 - y_j S <= ((g-pq)/g)^j - S (p/g)^j
// (1-p)^{n-j}; bound S^{-1}(z_0 S - Z(0) - Y(0) + y_0) - (1-p)^n + S^{-1}.
inline CertificateResult dual_certificate_B(const KrawPoly& z,
                                            const KrawPoly& y, long n, int q,
                                            double r, double p) {
  detail::check_cert_shapes(z, y, n);
  const double g = q - 1;
  if (!(p >= 0.0 && p < g / q))
    throw ParameterError("dual_certificate_B: p must lie in [0, (q-1)/q)");
  for (long j = 1; j <= n; ++j) {
    if (z.coeffs[j] < -detail::kSignTol)
      return {false, 0.0, j, "z_j negative"};
    if (y.coeffs[j] < -detail::kSignTol)
      return {false, 0.0, j, "y_j negative"};
  }
  const double s =
      std::pow(static_cast<double>(q), static_cast<double>(n) * r);
  const double y0 = y.coeffs[0];
  const double z0 = z.coeffs[0];
  KrawTable table(q, n);
  std::vector<double> zv(n + 1), yv(n + 1);
  for (long x = 0; x <= n; ++x) {
    zv[x] = kraw_poly_eval(z, table, x);
    yv[x] = kraw_poly_eval(y, table, x);
  }
  const double shrink = (g - q * p) / g;
  for (long j = 1; j <= n; ++j) {
    const double lhs = zv[j] + yv[j] - y0 - y.coeffs[j] * s;
    const double rhs = std::pow(shrink, static_cast<double>(j)) -
                       s * undetected_weight(n, q, p, j);
    if (lhs > rhs + detail::row_tol(rhs))
      return {false, 0.0, j, "row constraint violated"};
  }
  const double bound = (z0 * s - zv[0] - yv[0] + y0) / s -
                       std::pow(1.0 - p, static_cast<double>(n)) + 1.0 / s;
  return {true, bound, -1, ""};
}

// ---------------------------------------------------------------------------
// Cone bound: a one-polynomial relaxation of the dual certificates.
// ---------------------------------------------------------------------------

enum class ConeVariant { perp, direct };

// For spectra with B^perp >= B componentwise: if (i) Z(i) <= h[i] and
// (ii) z_i * M - Z(i) >= 0 for all 1 <= i <= n (variant perp, M = |C_perp|),
// then sum_i (B_i^perp - B_i) h[i] >= z_0 M - Z(0).  The direct variant
// replaces (ii) by Z(i) - M z_i >= 0 with M = |C| and returns Z(0) - M z_0.
inline CertificateResult cone_bound(const KrawPoly& z,
                                    const std::vector<double>& h,
                                    double size_c, ConeVariant variant) {
  const long n = z.n;
  if (static_cast<long>(z.coeffs.size()) != n + 1)
    throw ParameterError("cone_bound: coefficient count != n+1");
  if (static_cast<long>(h.size()) != n + 1)
    throw ParameterError("cone_bound: weight vector length != n+1");
  if (!(size_c > 0.0)) throw ParameterError("cone_bound: code size must be > 0");
  KrawTable table(z.q, n);
  std::vector<double> zv(n + 1);
  for (long x = 0; x <= n; ++x) zv[x] = kraw_poly_eval(z, table, x);
  for (long i = 1; i <= n; ++i) {
    if (zv[i] > h[i] + detail::row_tol(h[i]))
      return {false, 0.0, i, "Z(i) exceeds the weight function"};
    const double cone = (variant == ConeVariant::perp)
                            ? z.coeffs[i] * size_c - zv[i]
                            : zv[i] - size_c * z.coeffs[i];
    if (cone < -detail::row_tol(zv[i]))
      return {false, 0.0, i, "cone condition violated"};
  }
  const double bound = (variant == ConeVariant::perp)
                           ? z.coeffs[0] * size_c - zv[0]
                           : zv[0] - size_c * z.coeffs[0];
  return {true, bound, -1, ""};
}

// ---------------------------------------------------------------------------
// Certificate extraction from a solved primal.
// ---------------------------------------------------------------------------

struct LpBoundReport {
  long n = 0;
  int q = 4;
  double rq = 0.0;
  double p = 0.0;
  double size_cperp = 0.0;
  LpSolution solution;
  double bound = 0.0;        // optimum-derived P_ue lower bound
  KrawPoly z, y;             // extracted certificate (y_0 pinned to 0)
  CertificateResult recheck; // independent certificate verification
};

// Solves the primal and converts the optimal dual multipliers into a
// certificate: z_0 from the total row, z_i from the K rows, y_j from the
// T rows (each unscaled by C(n,i) gamma^i), y_0 = 0.
inline LpBoundReport lp_bound_report(long n, int q, double rq, double p) {
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("lp_bound_report: rq must lie in [0, 1]");
  LpBoundReport report;
  report.n = n;
  report.q = q;
  report.rq = rq;
  report.p = p;
  const double rperp = (1.0 + rq) / 2.0;
  report.size_cperp =
      std::pow(static_cast<double>(q), static_cast<double>(n) * rperp);
  const LpProblem lp = build_primal(n, q, report.size_cperp, p);
  report.solution = solve_lp(lp);
  if (report.solution.status != LpStatus::optimal)
    throw NumericFailure("lp_bound_report: primal LP not optimal");
  report.bound = report.solution.objective / report.size_cperp +
                 std::pow(1.0 - p, static_cast<double>(n)) -
                 1.0 / report.size_cperp;
  const double g = q - 1;
  report.z.q = q;
  report.z.n = n;
  report.z.coeffs.assign(n + 1, 0.0);
  report.y.q = q;
  report.y.n = n;
  report.y.coeffs.assign(n + 1, 0.0);
  report.z.coeffs[0] = report.solution.dual_eq[0];
  for (long i = 1; i <= n; ++i) {
    const double scale = binom(n, i).get_d() * std::pow(g, static_cast<double>(i));
    report.z.coeffs[i] = report.solution.dual_ge[i - 1] / scale;
    report.y.coeffs[i] = report.solution.dual_ge[n + i - 1] / scale;
  }
  report.recheck = dual_certificate_perp(report.z, report.y, n, q, rperp, p);
  return report;
}

// ---------------------------------------------------------------------------
// Explicit polynomial constructions at finite n.
// ---------------------------------------------------------------------------

// The degree-(2t+1) construction behind the linear-programming upper
// exponent: Z_t(x) = h(x*) / K_t(x*)^2 * (K_t + K_{t+1})^2(x) / (a - x),
// with t = floor(n tau0(x*/n)) and a the smallest root of K_t + K_{t+1}.
struct AmrrwPoly {
  long t = 0;
  double a = 0.0;               // smallest root of K_t + K_{t+1}
  std::vector<double> values;   // Z_t(j) for j = 0..n
  double z0 = 0.0;              // closed-form leading Krawtchouk coefficient
  double big_z0 = 0.0;          // closed-form Z_t(0)
};

inline AmrrwPoly build_amrrw_poly(long n, int q, double p, long x_star) {
  if (!(x_star > 0 && x_star < n))
    throw ParameterError("build_amrrw_poly: need 0 < x_star < n");
  const double g = q - 1;
  if (!(p > 0.0 && p < g / q))
    throw ParameterError("build_amrrw_poly: p must lie in (0, (q-1)/q)");
  AmrrwPoly out;
  out.t = static_cast<long>(
      std::floor(n * tau0(static_cast<double>(x_star) / n, q)));
  if (out.t + 1 > n)
    throw ParameterError("build_amrrw_poly: construction needs t + 1 <= n");
  out.a = smallest_root_pair(q, n, out.t);
  if (std::abs(out.a - std::nearbyint(out.a)) < 1e-12)
    throw NumericFailure("build_amrrw_poly: root collides with integer grid");
  KrawTable table(q, n);
  const long double kt_xs = static_cast<long double>(table(out.t, x_star).get_d());
  if (kt_xs == 0.0L)
    throw DegenerateScaling("build_amrrw_poly: K_t vanishes at x_star");
  const long double h_xs = undetected_weight(n, q, p, x_star);
  const long double front = h_xs / (kt_xs * kt_xs);
  out.values.resize(n + 1);
  for (long j = 0; j <= n; ++j) {
    const long double pair = static_cast<long double>(table(out.t, j).get_d()) +
                             static_cast<long double>(table(out.t + 1, j).get_d());
    out.values[j] = static_cast<double>(
        front * pair * pair / (static_cast<long double>(out.a) - j));
  }
  const long double gl = g;
  const long double cnt = binom(n, out.t).get_d();
  out.z0 = static_cast<double>(q * std::pow(gl, static_cast<long double>(out.t)) *
                               h_xs * cnt / ((out.t + 1) * kt_xs * kt_xs));
  const long double lobe =
      (out.t + 1 + gl * (n - out.t)) / static_cast<long double>(out.t + 1);
  out.big_z0 = static_cast<double>(
      std::pow(gl, static_cast<long double>(2 * out.t)) * h_xs * cnt * cnt *
      lobe * lobe / (static_cast<long double>(out.a) * kt_xs * kt_xs));
  return out;
}

// The sphere-packing construction: Z(x) = h(x*) F_e(x) / F_e(x*), whose
// Krawtchouk coefficients h(x*) K_e(i)^2 / F_e(x*) are all nonnegative.
struct HammingPoly {
  std::vector<double> values;  // Z(j) for j = 0..n
  KrawPoly poly;               // coefficients z_i >= 0
};

inline HammingPoly build_hamming_poly(long n, int q, double p, long e,
                                      long x_star) {
  if (e < 0 || e > n) throw ParameterError("build_hamming_poly: e out of range");
  if (x_star < 0 || x_star > n)
    throw ParameterError("build_hamming_poly: x_star out of range");
  const double g = q - 1;
  if (!(p >= 0.0 && p < g / q))
    throw ParameterError("build_hamming_poly: p must lie in [0, (q-1)/q)");
  const Int fe_xs = F_e_closed(q, n, e, x_star);
  if (fe_xs == 0)
    throw DegenerateScaling("build_hamming_poly: F_e vanishes at x_star");
  const double h_xs = undetected_weight(n, q, p, x_star);
  HammingPoly out;
  out.values.resize(n + 1);
  for (long x = 0; x <= n; ++x) {
    const Rat ratio = Rat(F_e_closed(q, n, e, x)) / Rat(fe_xs);
    out.values[x] = h_xs * ratio.get_d();
  }
  out.poly.q = q;
  out.poly.n = n;
  out.poly.coeffs.assign(n + 1, 0.0);
  KrawTable table(q, n);
  for (long i = 0; i <= n; ++i) {
    const Rat ratio = Rat(table(e, i) * table(e, i)) / Rat(fe_xs);
    out.poly.coeffs[i] = h_xs * ratio.get_d();
  }
  return out;
}

}  // namespace qed

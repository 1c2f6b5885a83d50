#pragma once

// Asymptotic exponents for the undetected-error probability of quantum
// codes: the attainability exponent from random even codes over GF(4), a
// linear-programming upper exponent built on the first linear-programming
// bound, and a second upper exponent of Hamming (sphere-packing) type.
// All exponents are normalized per symbol and use base-q logarithms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qed/entropy.hpp"
#include "qed/exact.hpp"
#include "qed/quadrature.hpp"

namespace qed {

// ---------------------------------------------------------------------------
// Exponential growth rate of Krawtchouk polynomials.
// ---------------------------------------------------------------------------

// (1/n) log_q K_{xi n}(q; sigma n) in the oscillation-free region
// 0 <= xi <= tau0(sigma).  Evaluated as H_q(sigma) plus the integral of
// log_q of the larger characteristic root of the three-term recurrence.
inline double kraw_exponent(double sigma, double xi, int q) {
  if (q < 2) throw ParameterError("kraw_exponent: q must be >= 2");
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw ParameterError("kraw_exponent: sigma must lie in [0, 1]");
  if (!(xi >= 0.0)) throw ParameterError("kraw_exponent: xi must be >= 0");
  const double top = tau0(sigma, q);
  if (xi > top)
    throw ParameterError("kraw_exponent: xi exceeds the oscillation threshold");
  const double hs = hq(sigma, q);
  if (xi == 0.0) return hs;
  const long double g = static_cast<long double>(q - 1);
  const long double qq = static_cast<long double>(q);
  const long double s = sigma;
  const long double lq = std::log(static_cast<long double>(q));
  auto integrand = [&](long double y) -> long double {
    const long double a = (1.0L - y) * g + y - qq * s;
    long double d = a * a - 4.0L * g * y * (1.0L - y);
    if (d < 0.0L) {
      if (d > -1e-14L) {
        d = 0.0L;
      } else {
        throw NumericFailure("kraw_exponent: discriminant went negative");
      }
    }
    const long double root = (a + std::sqrt(d)) / (2.0L * g * (1.0L - y));
    return std::log(root) / lq;
  };
  const long double integral =
      adaptive_simpson(integrand, 0.0L, static_cast<long double>(xi), 1e-10L);
  return hs + static_cast<double>(integral);
}

// ---------------------------------------------------------------------------
// Branch bookkeeping shared by the three exponent families.
// ---------------------------------------------------------------------------

enum class BranchStatus { curved, flat, not_applicable };

inline const char* to_string(BranchStatus s) {
  switch (s) {
    case BranchStatus::curved: return "curved";
    case BranchStatus::flat: return "flat";
    case BranchStatus::not_applicable: return "na";
  }
  return "na";
}

// One point of an exponent curve.  `value` is absent when the formula has
// no finite guaranteed value at this point (status == not_applicable), with
// one exception documented at amrrw_exponent: below the small-rate threshold
// the formula value is still reported but flagged not_applicable.
struct BoundPoint {
  double rq = 0.0;
  std::optional<double> value;
  BranchStatus status = BranchStatus::curved;
};

// ---------------------------------------------------------------------------
// Attainability exponent (random even GF(4) codes).
// ---------------------------------------------------------------------------

// Largest exponent E such that codes with P_ue <= 4^{-nE} are guaranteed to
// exist at quantum rate rq and channel parameter p.  Only defined for q = 4.
inline BoundPoint existence_exponent(double rq, double p) {
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("existence_exponent: rq must lie in [0, 1]");
  if (!(p >= 0.0 && p < 0.75))
    throw ParameterError("existence_exponent: p must lie in [0, 3/4)");
  const int q = 4;
  const double flat_threshold = 2.0 * (1.0 - hq(p, q)) - 1.0;
  if (rq >= flat_threshold) {
    return {rq, (1.0 - rq) / 2.0, BranchStatus::flat};
  }
  const double x = hq_inv((1.0 - rq) / 2.0, q);
  return {rq, tq(x, p, q), BranchStatus::curved};
}

// ---------------------------------------------------------------------------
// First linear-programming upper exponent.
// ---------------------------------------------------------------------------

// Small-rate applicability thresholds for the first LP exponent, by q.
// Below this quantum rate the polynomial construction behind the bound is
// not self-certifying, so the value is reported but flagged not_applicable.
inline std::optional<double> amrrw_alpha1(int q) {
  if (q == 4) return 0.0028;
  return std::nullopt;
}

// Upper exponent from the first linear-programming bound at quantum rate rq.
inline BoundPoint amrrw_exponent(double rq, double p, int q) {
  if (q < 2) throw ParameterError("amrrw_exponent: q must be >= 2");
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("amrrw_exponent: rq must lie in [0, 1]");
  const double gamma_over_q = static_cast<double>(q - 1) / q;
  if (!(p >= 0.0 && p < gamma_over_q))
    throw ParameterError("amrrw_exponent: p must lie in [0, (q-1)/q)");
  const double flat_threshold = 2.0 * r_lp(p, q) - 1.0;
  if (rq >= flat_threshold) {
    return {rq, (1.0 - rq) / 2.0, BranchStatus::flat};
  }
  const double r = (1.0 - rq) / 2.0;  // classical rate of the outer code
  const double d = delta_lp(1.0 - r, q);
  const double value = r - hq(d, q) + tq(d, p, q);
  const auto a1 = amrrw_alpha1(q);
  if (a1 && rq < *a1) {
    return {rq, value, BranchStatus::not_applicable};
  }
  return {rq, value, BranchStatus::curved};
}

// ---------------------------------------------------------------------------
// Hamming-type upper exponent: auxiliary entropy functions.
// ---------------------------------------------------------------------------

// Exponent of the distance-enumerator coefficient: for q >= 3,
// phi(tau, sigma, xi) = (1/n) log_q of the number of ordered word pairs at
// normalized distance xi whose supports overlap according to (tau, sigma).
inline double phi_general(double tau, double sigma, double xi, int q) {
  if (q < 3) throw ParameterError("phi_general: q must be >= 3");
  if (!(xi >= 0.0 && xi < 1.0))
    throw ParameterError("phi_general: xi must lie in [0, 1)");
  if (!(sigma >= 0.0))
    throw ParameterError("phi_general: sigma must be >= 0");
  const double l2 = logq(2.0, q);
  const double lq2 = (q > 2) ? logq(static_cast<double>(q - 2), q) : 0.0;
  double w = 2.0 * xi + 2.0 * sigma - 2.0 * tau;  // doubly-covered positions
  double a = 2.0 * tau - 2.0 * sigma - xi;        // positions seen once
  if (w < 0.0) {
    if (w < -1e-12) throw ParameterError("phi_general: negative overlap");
    w = 0.0;
  }
  if (a < 0.0) {
    if (a < -1e-12) throw ParameterError("phi_general: negative remainder");
    a = 0.0;
  }
  double value = 1.0;
  if (sigma > 0.0) {
    const double frac = sigma / (1.0 - xi);
    if (frac > 1.0 + 1e-12)
      throw ParameterError("phi_general: sigma too large for xi");
    value += (1.0 - xi) * hq(std::min(frac, 1.0), q);
  }
  double v = (xi > 0.0) ? w / xi : 0.0;
  if (v > 1.0) {
    if (v > 1.0 + 1e-9) throw ParameterError("phi_general: overlap ratio > 1");
    v = 1.0;
  }
  value += (xi * h2(v) + w) * l2;
  value += a * lq2;
  return value;
}

// Binary counterpart, where the overlap parameter sigma is forced to
// sigma = tau - xi/2 and drops out of the parametrization.
inline double phi_binary(double tau, double xi) {
  if (!(xi >= 0.0 && xi < 1.0))
    throw ParameterError("phi_binary: xi must lie in [0, 1)");
  if (!(2.0 * tau >= xi - 1e-12))
    throw ParameterError("phi_binary: need xi <= 2 tau");
  if (!(tau <= (2.0 - xi) / 2.0 + 1e-12))
    throw ParameterError("phi_binary: tau too large");
  double v = (2.0 * tau - xi) / (2.0 - 2.0 * xi);
  v = std::clamp(v, 0.0, 1.0);
  return 1.0 + xi + (1.0 - xi) * h2(v);
}

// The sigma maximizing phi_general(tau, ., xi) over its admissible interval
// (max(0, tau - xi), tau - xi/2).  Found by bisection on the stationarity
// condition; the objective is strictly concave in sigma on that interval.
inline double sigma_argmax(double tau, double xi, int q) {
  if (q < 3) throw ParameterError("sigma_argmax: q must be >= 3");
  if (!(xi > 0.0)) throw ParameterError("sigma_argmax: xi must be > 0");
  if (2.0 * tau < xi - 1e-12)
    throw ParameterError("sigma_argmax: need xi <= 2 tau");
  const double g = static_cast<double>(q - 1);
  const double qm2 = static_cast<double>(q - 2);
  double lo = std::max(0.0, tau - xi) + 1e-15;
  double hi = tau - xi / 2.0 - 1e-15;
  if (!(lo < hi)) return std::max(0.0, tau - xi);
  auto stationarity = [&](double s) {
    const double a = 2.0 * tau - 2.0 * s - xi;
    const double b = 2.0 * s + 2.0 * xi - 2.0 * tau;
    return 4.0 * g * (1.0 - xi - s) * a * a - s * b * b * qm2 * qm2;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (stationarity(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Hamming-type exponent: the tangency curve tau(xi) and its ingredients.
// ---------------------------------------------------------------------------

// Overlap parameter at the point of tangency, as a function of the distance
// parameter xi, for q >= 3.
inline double sigma0(double xi, int q, double p) {
  if (q < 3) throw ParameterError("sigma0: q must be >= 3");
  const double g = static_cast<double>(q - 1);
  const double inner = g - q * p;
  if (inner < 0.0) throw NotApplicableError("sigma0: q p exceeds q - 1");
  const double bracket = 2.0 * g - q * p - 2.0 * std::sqrt(g * inner);
  return (1.0 - xi) * bracket / (static_cast<double>(q) * q * (1.0 - p));
}

// Normalized distance of the tangency point for given (xi, sigma), q >= 3.
inline double tau_general(double xi, double sigma, int q, double p) {
  if (q < 3) throw ParameterError("tau_general: q must be >= 3");
  const double g = static_cast<double>(q - 1);
  const double qm2 = static_cast<double>(q - 2);
  const double num1 =
      xi * (xi + sigma - 1.0) * (g - p) - p * sigma * qm2;
  const double den = p * (xi - 1.0) * qm2;
  const double disc =
      g * (1.0 - p) * xi * xi *
      ((1.0 - xi) * (1.0 - xi) * (g - p) -
       sigma * (1.0 - xi) * (2.0 * g - q * p) +
       sigma * sigma * g * (1.0 - p));
  if (disc < 0.0)
    throw NotApplicableError("tau_general: negative discriminant");
  if (den == 0.0) throw ParameterError("tau_general: degenerate denominator");
  return (num1 + std::sqrt(disc)) / den;
}

// Binary tangency curve, with sigma pinned at tau - xi/2.
inline double tau_of_xi_binary(double xi, double p) {
  if (!(p >= 0.0 && p < 0.5))
    throw ParameterError("tau_of_xi_binary: p must lie in [0, 1/2)");
  if (!(xi >= 0.0 && xi <= 1.0))
    throw ParameterError("tau_of_xi_binary: xi must lie in [0, 1]");
  return 0.5 * (1.0 - std::sqrt((1.0 - 2.0 * p)) * (1.0 - xi) / (1.0 - p));
}

// Distance parameter of the tangency point at xi = p (the flat/curved
// switch), for any q >= 2.
inline double tau_of_p(double p, int q) {
  if (q == 2) return tau_of_xi_binary(p, p);
  return tau_general(p, sigma0(p, q, p), q, p);
}

// ---------------------------------------------------------------------------
// Verification that the distance enumerator is maximized at zero distance.
// ---------------------------------------------------------------------------

struct MaximumCheckResult {
  double argmax_xi = 0.0;  // grid maximizer of the enumerator exponent ratio
  bool holds = false;      // true iff the maximum sits at xi = 0 (within tol)
  double margin = 0.0;     // max over grid of g(xi) - g(0); <= tol iff holds
};

namespace detail {

// Exponent of F_{tau n}(xi n) / K_{tau n}(0)^2: the quantity whose maximum
// over xi must be at xi = 0 for the Hamming-type argument to close.
inline double enumerator_ratio_exponent(double tau, double xi, int q) {
  if (xi <= 0.0) return 1.0 - hq(tau, q);
  double numerator;
  if (q == 2) {
    numerator = phi_binary(tau, xi);
  } else {
    numerator = phi_general(tau, sigma_argmax(tau, xi, q), xi, q);
  }
  return numerator - 2.0 * kraw_exponent(tau, xi, q);
}

}  // namespace detail

// Scans xi over (0, min(2 tau, tau0(tau))] and reports whether the
// enumerator ratio exponent stays below its value at xi = 0.
inline MaximumCheckResult maximum_check(double tau, int q,
                                        int grid_size = 96) {
  if (q < 2) throw ParameterError("maximum_check: q must be >= 2");
  if (grid_size < 2) throw ParameterError("maximum_check: grid too small");
  if (!(tau >= 0.0 && tau < static_cast<double>(q - 1) / q))
    throw ParameterError("maximum_check: tau out of range");
  if (tau == 0.0) return {0.0, true, 0.0};
  const double at_zero = detail::enumerator_ratio_exponent(tau, 0.0, q);
  const double ximax = std::min(2.0 * tau, tau0(tau, q));
  MaximumCheckResult result{0.0, true, 0.0};
  for (int i = 1; i <= grid_size; ++i) {
    const double xi =
        (i == grid_size) ? ximax : ximax * static_cast<double>(i) / grid_size;
    const double diff = detail::enumerator_ratio_exponent(tau, xi, q) - at_zero;
    if (diff > result.margin) {
      result.margin = diff;
      result.argmax_xi = xi;
    }
  }
  result.holds = (result.margin <= 1e-9);
  return result;
}

// ---------------------------------------------------------------------------
// Critical constants of the Hamming-type bound, per alphabet size.
// ---------------------------------------------------------------------------

struct BoundConstants {
  int q = 0;
  std::optional<double> tau1;  // onset of enumerator-maximum failure (q = 2)
  double tau2 = 0.0;           // root of 2 tau = tau0(tau)
  double tau_cr = 0.0;         // min(tau1, tau2) when tau1 exists, else tau2
  double p_cr = 0.0;           // channel parameter with tau_of_p = tau_cr
  std::optional<double> alpha1;  // small-rate threshold of the LP exponent
};

namespace detail {

inline BoundConstants compute_bound_constants(int q) {
  BoundConstants c;
  c.q = q;
  const double sq = std::sqrt(static_cast<double>(q));
  c.tau2 = (3.0 * sq - 2.0 * std::sqrt(2.0)) * (q - 1) /
           (sq * (9.0 * q - 8.0));
  if (q == 2) {
    // Locate the smallest tau at which the enumerator maximum leaves xi = 0.
    double lo = 0.08, hi = 0.14;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto check = maximum_check(mid, 2, 160);
      if (check.margin <= 1e-12) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    c.tau1 = 0.5 * (lo + hi);
  }
  c.tau_cr = c.tau1 ? std::min(*c.tau1, c.tau2) : c.tau2;
  // Invert the increasing map p -> tau_of_p(p, q) at tau_cr.
  double lo = 1e-9;
  double hi = static_cast<double>(q - 1) / q - 1e-9;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tau_of_p(mid, q) < c.tau_cr) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  c.p_cr = 0.5 * (lo + hi);
  c.alpha1 = amrrw_alpha1(q);
  return c;
}

}  // namespace detail

// Cached per-q critical constants (tau1 for q = 2 requires a scan).
inline const BoundConstants& bound_constants(int q) {
  if (q < 2) throw ParameterError("bound_constants: q must be >= 2");
  static std::map<int, BoundConstants> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(q);
  if (it == cache.end()) {
    it = cache.emplace(q, detail::compute_bound_constants(q)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Hamming-type upper exponent.
// ---------------------------------------------------------------------------

namespace detail {

// Solves target(xi) = r for xi in [lo, hi] by bisection, where target is
// increasing.  Returns nullopt when the equation has no root in range.
inline std::optional<double> solve_increasing(
    const std::function<double(double)>& target, double r, double lo,
    double hi) {
  double flo, fhi;
  try {
    flo = target(lo);
    fhi = target(hi);
  } catch (const NotApplicableError&) {
    return std::nullopt;
  }
  if (flo > r || fhi < r) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double fmid;
    try {
      fmid = target(mid);
    } catch (const NotApplicableError&) {
      return std::nullopt;
    }
    if (fmid < r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Hamming-type upper exponent at quantum rate rq, binary case.
inline BoundPoint hamming_exponent_binary(double rq, double p) {
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("hamming_exponent_binary: rq must lie in [0, 1]");
  if (!(p >= 0.0 && p < 0.5))
    throw ParameterError("hamming_exponent_binary: p must lie in [0, 1/2)");
  const BoundConstants& c = bound_constants(2);
  if (p > c.p_cr) return {rq, std::nullopt, BranchStatus::not_applicable};
  const double tau_flat = tau_of_p(p, 2);
  const double flat_threshold = 1.0 - 2.0 * hq(tau_flat, 2);
  if (rq >= flat_threshold) {
    return {rq, (1.0 - rq) / 2.0, BranchStatus::flat};
  }
  const double r = (1.0 - rq) / 2.0;
  auto target = [&](double xi) { return hq(tau_of_xi_binary(xi, p), 2); };
  const auto xis = detail::solve_increasing(target, r, p, 1.0 - 1e-9);
  if (!xis || *xis > c.p_cr) {
    return {rq, std::nullopt, BranchStatus::not_applicable};
  }
  const double value =
      -1.0 - r + tq(*xis, p, 2) + phi_binary(hq_inv(r, 2), *xis);
  return {rq, value, BranchStatus::curved};
}

// Hamming-type upper exponent at quantum rate rq, q >= 3 (and dispatch to
// the binary variant at q = 2).
inline BoundPoint hamming_exponent(double rq, double p, int q) {
  if (q == 2) return hamming_exponent_binary(rq, p);
  if (q < 2) throw ParameterError("hamming_exponent: q must be >= 2");
  if (!(rq >= 0.0 && rq <= 1.0))
    throw ParameterError("hamming_exponent: rq must lie in [0, 1]");
  const double gamma_over_q = static_cast<double>(q - 1) / q;
  if (!(p >= 0.0 && p < gamma_over_q))
    throw ParameterError("hamming_exponent: p must lie in [0, (q-1)/q)");
  const BoundConstants& c = bound_constants(q);
  if (p > c.p_cr) return {rq, std::nullopt, BranchStatus::not_applicable};
  const double tau_flat = tau_of_p(p, q);
  const double flat_threshold = 1.0 - 2.0 * hq(tau_flat, q);
  if (rq >= flat_threshold) {
    return {rq, (1.0 - rq) / 2.0, BranchStatus::flat};
  }
  const double r = (1.0 - rq) / 2.0;
  auto target = [&](double xi) {
    return hq(tau_general(xi, sigma0(xi, q, p), q, p), q);
  };
  const auto xis = detail::solve_increasing(target, r, p, 1.0 - 1e-9);
  if (!xis || *xis > c.p_cr) {
    return {rq, std::nullopt, BranchStatus::not_applicable};
  }
  const double value = -1.0 - r + tq(*xis, p, q) +
                       phi_general(hq_inv(r, q), sigma0(*xis, q, p), *xis, q);
  return {rq, value, BranchStatus::curved};
}

// ---------------------------------------------------------------------------
// Curve sweep over a rate grid.
// ---------------------------------------------------------------------------

struct CurveSweep {
  std::vector<double> rq;
  std::vector<BoundPoint> existence;  // only populated for q = 4
  std::vector<BoundPoint> amrrw;
  std::vector<BoundPoint> hamming;
};

// Evaluates all three exponents over the given rate grid.  The existence
// exponent is specific to q = 4; for other q its entries are flagged
// not_applicable with no value.
inline CurveSweep curve_sweep(const std::vector<double>& rq_grid, double p,
                              int q) {
  CurveSweep sweep;
  sweep.rq = rq_grid;
  sweep.existence.reserve(rq_grid.size());
  sweep.amrrw.reserve(rq_grid.size());
  sweep.hamming.reserve(rq_grid.size());
  for (double rq : rq_grid) {
    if (q == 4) {
      sweep.existence.push_back(existence_exponent(rq, p));
    } else {
      sweep.existence.push_back(
          {rq, std::nullopt, BranchStatus::not_applicable});
    }
    sweep.amrrw.push_back(amrrw_exponent(rq, p, q));
    sweep.hamming.push_back(hamming_exponent(rq, p, q));
  }
  return sweep;
}

}  // namespace qed

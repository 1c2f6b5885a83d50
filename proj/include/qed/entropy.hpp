#pragma once

// q-ary entropy and divergence utilities, their inverses, and the
// linear-programming threshold map tau0 with its rate/distance companions.
// All logarithms are base q: exponents throughout the library are measured
// in q-ary symbols.

#include <cmath>
#include <limits>

#include "qed/exact.hpp"

namespace qed {

inline double logq(double x, int q) { return std::log(x) / std::log(static_cast<double>(q)); }

// Binary entropy (base 2).
inline double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x) on [0,1].
inline double hq(double x, int q) {
  if (q < 2) throw ParameterError("hq: need q>=2");
  if (x < 0.0 || x > 1.0) throw ParameterError("hq: need x in [0,1]");
  if (x == 0.0) return 0.0;
  double s = x * logq(static_cast<double>(q - 1), q) - x * logq(x, q);
  if (x < 1.0) s -= (1.0 - x) * logq(1.0 - x, q);
  return s;
}

// T_q(x,y) = x log_q(q-1) - x log_q y - (1-x) log_q(1-y); T_q(x,x) = H_q(x).
inline double tq(double x, double y, int q) {
  if (q < 2) throw ParameterError("tq: need q>=2");
  if (x < 0.0 || x > 1.0) throw ParameterError("tq: need x in [0,1]");
  if (y < 0.0 || y > 1.0) throw ParameterError("tq: need y in [0,1]");
  double s = 0.0;
  if (x > 0.0) {
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    s += x * logq(static_cast<double>(q - 1), q) - x * logq(y, q);
  }
  if (x < 1.0) {
    if (y == 1.0) return std::numeric_limits<double>::infinity();
    s -= (1.0 - x) * logq(1.0 - y, q);
  }
  return s;
}

// Inverse of H_q on the increasing branch [0, (q-1)/q], by bisection.
inline double hq_inv(double v, int q) {
  if (v < 0.0 || v > 1.0) throw ParameterError("hq_inv: need v in [0,1]");
  double lo = 0.0, hi = static_cast<double>(q - 1) / q;
  for (int it = 0; it < 200 && hi - lo > 1e-18; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hq(mid, q) < v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// tau0(z) = (q-1)/q - (q-2)/q z - (2/q) sqrt((q-1) z (1-z)); defined on
// [0, 1], an involution of the subinterval [0, (q-1)/q].
inline double tau0(double z, int q) {
  if (q < 2) throw ParameterError("tau0: need q>=2");
  const double g = q - 1;
  if (z < -1e-12 || z > 1.0 + 1e-12)
    throw ParameterError("tau0: need z in [0,1]");
  z = std::min(std::max(z, 0.0), 1.0);
  const double arg = g * z * (1.0 - z);
  return g / q - (g - 1.0) / q * z - 2.0 / q * std::sqrt(arg > 0.0 ? arg : 0.0);
}

// Asymptotic rate bound at relative distance delta, and its inverse map.
inline double r_lp(double delta, int q) { return hq(tau0(delta, q), q); }
inline double delta_lp(double R, int q) { return tau0(hq_inv(R, q), q); }

}  // namespace qed

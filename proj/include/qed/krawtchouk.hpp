#pragma once

// q-ary Krawtchouk polynomials and the exact combinatorics built on them:
// integer and real-argument evaluation, basis transforms, Hamming-scheme
// intersection numbers, the squared-Krawtchouk expansion F_e, and the
// quaternary even-weight sum identity.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qed/exact.hpp"

namespace qed {

// Exact K_k(q;x) = sum_l (-1)^l C(x,l) C(n-x,k-l) (q-1)^(k-l).
inline Int krawtchouk_int(int q, int n, int k, int x) {
  if (q < 2 || n < 0 || k < 0 || k > n || x < 0 || x > n)
    throw ParameterError("krawtchouk_int: need q>=2, 0<=k<=n, 0<=x<=n");
  const Int g(q - 1);
  Int acc(0);
  for (int l = 0; l <= k; ++l) {
    Int term = binom(x, l) * binom(n - x, k - l) *
               ipow(g, static_cast<unsigned long>(k - l));
    if (l & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

// Precomputed (n+1)x(n+1) table with values(k,x) = K_k(q;x), exact.
class KrawTable {
 public:
  KrawTable(int q, int n) : q_(q), n_(n) {
    if (q < 2 || n < 0) throw ParameterError("KrawTable: need q>=2, n>=0");
    v_.assign(static_cast<std::size_t>(n + 1),
              std::vector<Int>(static_cast<std::size_t>(n + 1)));
    for (int k = 0; k <= n; ++k)
      for (int x = 0; x <= n; ++x) v_[k][x] = krawtchouk_int(q, n, k, x);
  }

  int q() const { return q_; }
  int n() const { return n_; }

  const Int& operator()(int k, int x) const {
    if (k < 0 || k > n_ || x < 0 || x > n_)
      throw ParameterError("KrawTable: index out of range");
    return v_[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)];
  }

 private:
  int q_, n_;
  std::vector<std::vector<Int>> v_;
};

// Generalized binomial C(t,m) = t(t-1)...(t-m+1)/m! for real t.
inline long double gen_binom(long double t, int m) {
  long double r = 1.0L;
  for (int i = 0; i < m; ++i) r *= (t - i) / (m - i);
  return r;
}

// Real-argument K_k(q;x), evaluated by the falling-factorial sum (no
// recurrences, so error does not accumulate across degrees).
inline double krawtchouk_real(int q, int n, int k, double x) {
  if (q < 2 || n < 0 || k < 0 || k > n)
    throw ParameterError("krawtchouk_real: need q>=2, 0<=k<=n");
  if (x < 0.0 || x > static_cast<double>(n))
    throw ParameterError("krawtchouk_real: need 0<=x<=n");
  const long double g = q - 1;
  long double acc = 0.0L, sign = 1.0L;
  for (int l = 0; l <= k; ++l, sign = -sign)
    acc += sign * gen_binom(x, l) * gen_binom(static_cast<long double>(n) - x, k - l) *
           powl(g, k - l);
  return static_cast<double>(acc);
}

// Smallest root of f in the open interval (0,n): scan 10n grid points for a
// sign change, then bisect to 1e-9 absolute. Throws NoRootError when the scan
// finds no bracket.
inline double smallest_root(int n, const std::function<double(double)>& f) {
  if (n < 1) throw ParameterError("smallest_root: need n>=1");
  const int grid = 10 * n;
  double xa = 0.0, fa = f(0.0);
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int i = 1; i <= grid; ++i) {
    const double xb = static_cast<double>(n) * i / grid;
    const double fb = f(xb);
    if (fa == 0.0 && xa > 0.0) return xa;
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      lo = xa;
      hi = xb;
      found = true;
      break;
    }
    xa = xb;
    fa = fb;
  }
  if (!found) throw NoRootError("smallest_root: no sign change in (0,n)");
  double flo = f(lo);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Smallest root of K_k(q;x) in (0,n).
inline double smallest_root(int q, int n, int k) {
  return smallest_root(n, [=](double x) { return krawtchouk_real(q, n, k, x); });
}

// Smallest root of K_t(q;x) + K_{t+1}(q;x) in (0,n).
inline double smallest_root_pair(int q, int n, int t) {
  if (t < 0 || t + 1 > n) throw ParameterError("smallest_root_pair: need 0<=t<n");
  return smallest_root(n, [=](double x) {
    return krawtchouk_real(q, n, t, x) + krawtchouk_real(q, n, t + 1, x);
  });
}

// Krawtchouk-basis coefficients of a function given by its point values:
// f_i = q^{-n} sum_j f(j) K_j(q;i). Exact overload.
inline std::vector<Rat> coef_transform(int q, int n, const std::vector<Rat>& fvals) {
  if (static_cast<int>(fvals.size()) != n + 1)
    throw ParameterError("coef_transform: need n+1 point values");
  const KrawTable K(q, n);
  const Int qn = ipow(q, static_cast<unsigned long>(n));
  std::vector<Rat> coeffs(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    Rat acc(0);
    for (int j = 0; j <= n; ++j) acc += fvals[static_cast<std::size_t>(j)] * Rat(K(j, i));
    coeffs[static_cast<std::size_t>(i)] = acc / Rat(qn);
  }
  return coeffs;
}

// Floating-point overload of the same transform.
inline std::vector<double> coef_transform(int q, int n, const std::vector<double>& fvals) {
  if (static_cast<int>(fvals.size()) != n + 1)
    throw ParameterError("coef_transform: need n+1 point values");
  const KrawTable K(q, n);
  const long double qn = powl(static_cast<long double>(q), n);
  std::vector<double> coeffs(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    long double acc = 0.0L;
    for (int j = 0; j <= n; ++j)
      acc += static_cast<long double>(fvals[static_cast<std::size_t>(j)]) *
             K(j, i).get_d();
    coeffs[static_cast<std::size_t>(i)] = static_cast<double>(acc / qn);
  }
  return coeffs;
}

// Evaluate a Krawtchouk-basis polynomial at an integer point, exactly.
inline Rat kraw_basis_eval(const KrawTable& K, const std::vector<Rat>& coeffs, int x) {
  if (static_cast<int>(coeffs.size()) != K.n() + 1)
    throw ParameterError("kraw_basis_eval: coefficient length mismatch");
  Rat acc(0);
  for (int i = 0; i <= K.n(); ++i) acc += coeffs[static_cast<std::size_t>(i)] * Rat(K(i, x));
  return acc;
}

// Intersection number p_{ij}^k of the q-ary Hamming scheme H(n,q):
//   p_ij^k = sum_s C(k,2k+2s-i-j) C(n-k,s) C(2k+2s-i-j,k+s-j)
//            (q-2)^{i+j-2s-k} (q-1)^s
// with the 0^0 = 1 convention carrying the q=2 case.
inline Int intersection_number(int q, int n, int i, int j, int k) {
  if (q < 2 || n < 0 || i < 0 || i > n || j < 0 || j > n || k < 0 || k > n)
    throw ParameterError("intersection_number: indices must lie in [0,n]");
  const Int g(q - 1), qm2(q - 2);
  Int acc(0);
  for (int s = 0; s <= n; ++s) {
    const int m = 2 * k + 2 * s - i - j;  // inner binomial upper index is k
    if (m < 0 || m > k) continue;
    Int term = binom(k, m) * binom(n - k, s) * binom(m, k + s - j);
    if (term == 0) continue;
    term *= ipow(qm2, static_cast<unsigned long>(k - m));  // 0^0 = 1
    term *= ipow(g, static_cast<unsigned long>(s));
    acc += term;
  }
  return acc;
}

// F_e(x) = sum_i K_e(q;i)^2 K_i(q;x), in closed form: q^n p_ee^x for general
// q, and 2^n C(x,x/2) C(n-x,e-x/2) for q=2 (zero at odd x). Vanishes for
// x > 2e.
inline Int F_e_closed(int q, int n, int e, int x) {
  if (q < 2 || n < 0 || e < 0 || e > n || x < 0 || x > n)
    throw ParameterError("F_e_closed: need 0<=e<=n, 0<=x<=n");
  if (q == 2) {
    if (x & 1) return Int(0);
    return ipow(2, static_cast<unsigned long>(n)) * binom(x, x / 2) *
           binom(n - x, e - x / 2);
  }
  return ipow(q, static_cast<unsigned long>(n)) * intersection_number(q, n, e, e, x);
}

// Both sides of the even-weight quaternary sum identity
//   sum_i C(n,2i) 3^{2i} K_t(4;2i) = 2^{n-1} C(n,t) (-3)^t
// computed independently. The identity holds for even n and t >= 1; the t=0
// pair is still returned (callers decide what to assert).
inline std::pair<Int, Int> even_sum_identity(int n, int t) {
  if (n < 2 || n % 2 != 0)
    throw ParameterError("even_sum_identity: n must be even and >= 2");
  if (t < 0 || t > n) throw ParameterError("even_sum_identity: need 0<=t<=n");
  Int lhs(0);
  for (int i = 0; 2 * i <= n; ++i)
    lhs += binom(n, 2 * i) * ipow(3, static_cast<unsigned long>(2 * i)) *
           krawtchouk_int(4, n, t, 2 * i);
  const Int rhs = ipow(2, static_cast<unsigned long>(n - 1)) * binom(n, t) *
                  ipow(Int(-3), static_cast<unsigned long>(t));
  return {lhs, rhs};
}

}  // namespace qed

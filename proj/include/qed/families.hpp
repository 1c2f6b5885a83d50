#pragma once

// Brute-force enumeration of even GF(4) codes, their family statistics
// (counts, incidence, average spectra on both sides of duality), and the
// binomial existence profile driving the achievability curve.

#include <vector>

#include "qed/code.hpp"
#include "qed/exact.hpp"
#include "qed/gf4.hpp"
#include "qed/krawtchouk.hpp"

namespace qed {

// Number of even-weight vectors in the dot dual of an even [n,k] code:
// (4^(n-k) + (-2)^n) / 2.
inline Int even_dual_count(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw ParameterError("even_dual_count: need 0<=k<=n");
  return (ipow(4, static_cast<unsigned long>(n - k)) +
          ipow(Int(-2), static_cast<unsigned long>(n))) / 2;
}

// Number of even-weight nonzero vectors in GF(4)^n: (4^n + (-2)^n)/2 - 1.
inline Int even_nonzero_vector_count(int n) {
  if (n < 0) throw ParameterError("even_nonzero_vector_count: need n>=0");
  return (ipow(4, static_cast<unsigned long>(n)) +
          ipow(Int(-2), static_cast<unsigned long>(n))) / 2 - 1;
}

namespace detail {

// Hermitian pairing sum_i a_i conj(b_i), valued in GF(4). A linear code is
// even iff all generators have even weight and are pairwise Hermitian
// orthogonal (the trace form alone is too weak under scalar multiples).
inline gf4::Elem herm_ip(const gf4::Vec& a, const gf4::Vec& b) {
  gf4::Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = gf4::add(acc, gf4::mul(a[i], gf4::conj(b[i])));
  return acc;
}

// All RREF rows for a fixed pivot profile: row r has a 1 at pivots[r], zeros
// at the other pivot columns and at columns left of the pivot, and free
// values at non-pivot columns right of the pivot.
inline std::vector<gf4::Vec> row_candidates(int n, const std::vector<int>& pivots,
                                            int r, bool even_only) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<int> free_cols;
  for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  std::vector<gf4::Vec> out;
  std::vector<gf4::Elem> vals(free_cols.size(), 0);
  while (true) {
    gf4::Vec row(static_cast<std::size_t>(n), 0);
    row[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = 1;
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      row[static_cast<std::size_t>(free_cols[i])] = vals[i];
    if (!even_only || gf4::weight(row) % 2 == 0) out.push_back(std::move(row));
    std::size_t pos = 0;
    while (pos < vals.size() && vals[pos] == 3) vals[pos++] = 0;
    if (pos == vals.size()) break;
    ++vals[pos];
  }
  return out;
}

inline void extend_even_basis(int n, const std::vector<int>& pivots,
                              std::vector<gf4::Vec>& partial,
                              std::vector<LinearCodeF4>& out) {
  const int k = static_cast<int>(pivots.size());
  const int r = static_cast<int>(partial.size());
  if (r == k) {
    out.emplace_back(n, partial);
    return;
  }
  for (auto& cand : row_candidates(n, pivots, r, /*even_only=*/true)) {
    bool ok = true;
    for (const auto& g : partial)
      if (herm_ip(g, cand) != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    partial.push_back(std::move(cand));
    extend_even_basis(n, pivots, partial, out);
    partial.pop_back();
  }
}

}  // namespace detail

// Every even [n,k] code exactly once (canonical RREF generator matrices).
// Desk-scale guard: the search is exhaustive over pivot profiles.
inline std::vector<LinearCodeF4> enumerate_even_codes(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw ParameterError("enumerate_even_codes: need 0<=k<=n");
  if (n > 6 || k > 3)
    throw ResourceError("enumerate_even_codes: brute force supports n<=6, k<=3");
  std::vector<LinearCodeF4> out;
  if (k == 0) {
    out.emplace_back(n);
    return out;
  }
  std::vector<int> pivots(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<gf4::Vec> partial;
    detail::extend_even_basis(n, pivots, partial, out);
    // next combination of pivot columns
    int i = k - 1;
    while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Family statistics of the even [n,k] codes: the family size N, the
// incidence count L (number of codes through each even nonzero vector,
// constant over vectors), and the average spectra of the codes and of their
// dot duals. The closed-form averages use the double-counting normalization
//   N (4^k - 1) = L * (number of even nonzero vectors in GF(4)^n),
// and carry a parity factor (-1)^(n-t) on the dual side. Both the formula
// values and the directly averaged spectra are exposed so callers can assert
// their exact agreement.
struct CodeFamilyStats {
  int n = 0, k = 0;
  Int N, L;
  std::vector<Rat> avgB, avgBperp;              // closed forms
  std::vector<Rat> avgB_direct, avgBperp_direct;  // enumeration averages
};

inline CodeFamilyStats family_stats(int n, int k) {
  const auto family = enumerate_even_codes(n, k);
  if (family.empty()) throw NoCodesError("family_stats: no even codes at these parameters");
  CodeFamilyStats st;
  st.n = n;
  st.k = k;
  st.N = Int(static_cast<unsigned long>(family.size()));

  // Incidence counts per vector (vectors packed base 4), plus direct averages.
  std::vector<long> incidence(static_cast<std::size_t>(1) << (2 * n), 0);
  std::vector<Rat> sumB(static_cast<std::size_t>(n + 1), Rat(0));
  std::vector<Rat> sumBperp(static_cast<std::size_t>(n + 1), Rat(0));
  for (const auto& code : family) {
    for (const auto& w : code.codewords()) {
      sumB[static_cast<std::size_t>(gf4::weight(w))] += 1;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        idx |= static_cast<std::size_t>(w[i]) << (2 * i);
      if (idx != 0) ++incidence[idx];
    }
    const auto dual_we = code.dual(LinearCodeF4::Form::dot).weight_distribution();
    for (int t = 0; t <= n; ++t) sumBperp[static_cast<std::size_t>(t)] += dual_we.B[static_cast<std::size_t>(t)];
  }

  long L = -1;
  for (std::size_t idx = 1; idx < incidence.size(); ++idx) {
    gf4::Vec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<gf4::Elem>((idx >> (2 * i)) & 3);
    if (gf4::weight(v) % 2 != 0) continue;
    if (L < 0) L = incidence[idx];
    if (incidence[idx] != L)
      throw NumericFailure("family_stats: incidence count is not constant");
  }
  st.L = Int(L);

  const Rat N_rat{st.N}, LoverN = Rat(st.L) / N_rat;
  st.avgB.assign(static_cast<std::size_t>(n + 1), Rat(0));
  st.avgBperp.assign(static_cast<std::size_t>(n + 1), Rat(0));
  st.avgB[0] = 1;
  st.avgBperp[0] = 1;
  const Int two_pow = ipow(2, static_cast<unsigned long>(n - 1));
  for (int i = 1; i <= n; ++i) {
    if (i % 2 == 0)
      st.avgB[static_cast<std::size_t>(i)] =
          LoverN * Rat(binom(n, i) * ipow(3, static_cast<unsigned long>(i)));
    const Int parity = ((n - i) % 2 == 0) ? two_pow : -two_pow;
    st.avgBperp[static_cast<std::size_t>(i)] =
        Rat(binom(n, i) * ipow(3, static_cast<unsigned long>(i))) *
        (Rat(1) + Rat(parity - 1) * LoverN) / Rat(ipow(4, static_cast<unsigned long>(k)));
  }

  st.avgB_direct.resize(static_cast<std::size_t>(n + 1));
  st.avgBperp_direct.resize(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    st.avgB_direct[static_cast<std::size_t>(i)] = sumB[static_cast<std::size_t>(i)] / N_rat;
    st.avgBperp_direct[static_cast<std::size_t>(i)] = sumBperp[static_cast<std::size_t>(i)] / N_rat;
  }
  return st;
}

// Binomial profile ceiling 2 n^2 C(n,i) 3^i 2^(k_Q - n) bounding the dual
// spectrum of the codes whose existence drives the achievability exponent.
inline double existence_profile(int n, int k_Q, int i) {
  if (n < 1 || i < 0 || i > n) throw ParameterError("existence_profile: need 0<=i<=n");
  const Int num = Int(2) * n * n * binom(n, i) * ipow(3, static_cast<unsigned long>(i));
  Rat val;
  if (k_Q >= n)
    val = Rat(num * ipow(2, static_cast<unsigned long>(k_Q - n)));
  else
    val = Rat(num, ipow(2, static_cast<unsigned long>(n - k_Q)));
  val.canonicalize();
  return val.get_d();
}

}  // namespace qed

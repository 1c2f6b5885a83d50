#pragma once

// GF(4) linear codes with canonical RREF generators, exact weight
// enumerators, the MacWilliams transform, and evaluation of the probability
// of undetected error from a spectrum pair.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qed/exact.hpp"
#include "qed/gf4.hpp"
#include "qed/krawtchouk.hpp"

namespace qed {

// A length-(n+1) weight distribution over an alphabet of size q. Entries are
// exact rationals so that averaged spectra and transforms stay exact.
struct WeightEnum {
  int q = 4;
  int n = 0;
  std::vector<Rat> B;  // B[0..n]

  Rat total() const {
    Rat s(0);
    for (const Rat& b : B) s += b;
    return s;
  }
};

// Reduce rows in place to canonical reduced row-echelon form over GF(4);
// returns the pivot columns. Zero rows are removed.
inline std::vector<int> rref_f4(std::vector<gf4::Vec>& rows, int n) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(c)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const gf4::Elem piv = rows[r][static_cast<std::size_t>(c)];
    if (piv != 1) rows[r] = gf4::scale(gf4::inv(piv), rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const gf4::Elem f = rows[i][static_cast<std::size_t>(c)];
      if (f != 0) rows[i] = gf4::add(rows[i], gf4::scale(f, rows[r]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

class LinearCodeF4 {
 public:
  enum class Form { dot, trace };

  // The zero code of length n.
  explicit LinearCodeF4(int n) : n_(n) {
    if (n < 0) throw ParameterError("LinearCodeF4: need n>=0");
  }

  // Span of the given rows, canonicalized to RREF (one object per code).
  LinearCodeF4(int n, std::vector<gf4::Vec> rows) : n_(n) {
    if (n < 0) throw ParameterError("LinearCodeF4: need n>=0");
    for (const auto& row : rows)
      if (static_cast<int>(row.size()) != n)
        throw ParameterError("LinearCodeF4: row length mismatch");
    pivots_ = rref_f4(rows, n);
    gens_ = std::move(rows);
  }

  int n() const { return n_; }
  int k() const { return static_cast<int>(gens_.size()); }
  const std::vector<gf4::Vec>& generators() const { return gens_; }
  const std::vector<int>& pivot_columns() const { return pivots_; }

  bool operator==(const LinearCodeF4& o) const {
    return n_ == o.n_ && gens_ == o.gens_;
  }

  // All 4^k codewords. Guarded: enumeration is for desk-scale oracles.
  std::vector<gf4::Vec> codewords() const {
    if (k() > 12) throw ResourceError("codewords: 4^k enumeration needs k<=12");
    std::vector<gf4::Vec> words;
    words.reserve(static_cast<std::size_t>(1) << (2 * k()));
    gf4::Vec cur(static_cast<std::size_t>(n_), 0);
    std::vector<gf4::Elem> coef(static_cast<std::size_t>(k()), 0);
    // Odometer over coefficient tuples; rebuild on each step (k is tiny).
    while (true) {
      words.push_back(cur);
      int pos = 0;
      while (pos < k() && coef[static_cast<std::size_t>(pos)] == 3) {
        coef[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == k()) break;
      ++coef[static_cast<std::size_t>(pos)];
      cur.assign(static_cast<std::size_t>(n_), 0);
      for (int r = 0; r < k(); ++r)
        if (coef[static_cast<std::size_t>(r)] != 0)
          cur = gf4::add(cur, gf4::scale(coef[static_cast<std::size_t>(r)], gens_[static_cast<std::size_t>(r)]));
    }
    return words;
  }

  // Exact spectrum by exhaustive enumeration.
  WeightEnum weight_distribution() const {
    WeightEnum we;
    we.q = 4;
    we.n = n_;
    we.B.assign(static_cast<std::size_t>(n_ + 1), Rat(0));
    for (const auto& w : codewords()) we.B[static_cast<std::size_t>(gf4::weight(w))] += 1;
    return we;
  }

  // Dual code under the chosen pairing. The dot dual is the kernel of the
  // generator matrix; the trace dual is the Frobenius image of the dot dual
  // (for linear codes the trace form's kernel conditions reduce to
  // sum_i a_i v_i^2 = 0, i.e. v^2 lies in the dot dual).
  LinearCodeF4 dual(Form form = Form::dot) const {
    std::vector<gf4::Vec> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
    for (int c : pivots_) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int f = 0; f < n_; ++f) {
      if (is_pivot[static_cast<std::size_t>(f)]) continue;
      gf4::Vec v(static_cast<std::size_t>(n_), 0);
      v[static_cast<std::size_t>(f)] = 1;
      for (std::size_t r = 0; r < gens_.size(); ++r) {
        // Row r forces v[pivot_r] = sum over non-pivot coords (char 2).
        gf4::Elem s = 0;
        const int pc = pivots_[r];
        for (int c = 0; c < n_; ++c)
          if (c != pc)
            s = gf4::add(s, gf4::mul(gens_[r][static_cast<std::size_t>(c)],
                                     v[static_cast<std::size_t>(c)]));
        v[static_cast<std::size_t>(pc)] = s;
      }
      basis.push_back(std::move(v));
    }
    if (form == Form::trace)
      for (auto& v : basis)
        for (auto& e : v) e = gf4::sq(e);
    return LinearCodeF4(n_, std::move(basis));
  }

 private:
  int n_;
  std::vector<gf4::Vec> gens_;
  std::vector<int> pivots_;
};

// MacWilliams transform: B_t^dual = (1/|C|) sum_i B_i K_t(q;i), exact.
// A negative output entry means the input was not a code spectrum.
inline WeightEnum macwilliams(const WeightEnum& we, const Rat& sizeC) {
  if (sizeC <= 0) throw ParameterError("macwilliams: need |C| > 0");
  if (static_cast<int>(we.B.size()) != we.n + 1)
    throw ParameterError("macwilliams: spectrum length mismatch");
  const KrawTable K(we.q, we.n);
  WeightEnum out;
  out.q = we.q;
  out.n = we.n;
  out.B.assign(static_cast<std::size_t>(we.n + 1), Rat(0));
  for (int t = 0; t <= we.n; ++t) {
    Rat acc(0);
    for (int i = 0; i <= we.n; ++i) acc += we.B[static_cast<std::size_t>(i)] * Rat(K(t, i));
    acc /= sizeC;
    if (acc < 0)
      throw InconsistentSpectrum("macwilliams: negative dual coefficient at weight " +
                                 std::to_string(t));
    out.B[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

// P_ue = sum_{j>=1} (Bperp_j - B_j) (p/(q-1))^j (1-p)^{n-j}. The value is
// returned even when the componentwise dominance Bperp >= B fails; the flag
// reports that condition so callers can surface a warning.
struct PueResult {
  double value = 0.0;
  bool spectra_consistent = true;
};

inline PueResult pue_eval(const WeightEnum& B, const WeightEnum& Bperp, double p) {
  if (B.n != Bperp.n || B.q != Bperp.q)
    throw ParameterError("pue_eval: spectra must share n and q");
  const double g = B.q - 1;
  if (!(p >= 0.0 && p < g / B.q))
    throw ParameterError("pue_eval: need 0 <= p < (q-1)/q");
  PueResult res;
  long double acc = 0.0L;
  for (int j = 1; j <= B.n; ++j) {
    const Rat diff = Bperp.B[static_cast<std::size_t>(j)] - B.B[static_cast<std::size_t>(j)];
    if (diff < 0) res.spectra_consistent = false;
    acc += static_cast<long double>(diff.get_d()) * powl(p / g, j) *
           powl(1.0L - p, B.n - j);
  }
  res.value = static_cast<double>(acc);
  return res;
}

}  // namespace qed

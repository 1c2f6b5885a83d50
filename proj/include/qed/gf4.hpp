#pragma once

// GF(4) arithmetic on the element encoding {0, 1, w, w^2} -> {0, 1, 2, 3},
// plus vector helpers and the two bilinear/sesquilinear pairings used for
// duality: the standard dot product and the trace form a*b = sum_i
// (a_i b_i^2 + a_i^2 b_i).

#include <cstdint>
#include <vector>

#include "qed/exact.hpp"

namespace qed::gf4 {

using Elem = std::uint8_t;
using Vec = std::vector<Elem>;

// Addition is XOR (characteristic 2, basis {1, w}).
inline constexpr Elem add(Elem a, Elem b) { return static_cast<Elem>(a ^ b); }

inline constexpr Elem kMul[4][4] = {
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
};

inline constexpr Elem mul(Elem a, Elem b) { return kMul[a][b]; }

// Frobenius: squaring, which is also conjugation in GF(4).
inline constexpr Elem sq(Elem a) { return mul(a, a); }
inline constexpr Elem conj(Elem a) { return sq(a); }

// Multiplicative inverse of a nonzero element.
inline constexpr Elem inv(Elem a) {
  constexpr Elem table[4] = {0, 1, 3, 2};
  return table[a];
}

inline int weight(const Vec& v) {
  int w = 0;
  for (Elem e : v) w += (e != 0);
  return w;
}

inline Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ParameterError("gf4::add: length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
  return r;
}

inline Vec scale(Elem s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = mul(s, v[i]);
  return r;
}

// Standard dot product sum_i a_i b_i, valued in GF(4).
inline Elem dot_ip(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ParameterError("gf4::dot_ip: length mismatch");
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
  return acc;
}

// Trace form a*b = sum_i (a_i b_i^2 + a_i^2 b_i). Each summand is t + t^2
// with t = a_i b_i^2, i.e. the field trace of t, so the value lies in the
// GF(2) subfield {0,1}.
inline int trace_ip(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ParameterError("gf4::trace_ip: length mismatch");
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Elem t = mul(a[i], sq(b[i]));
    acc = add(acc, add(t, sq(t)));
  }
  return static_cast<int>(acc);  // always 0 or 1
}

}  // namespace qed::gf4

#pragma once

// Exact arbitrary-precision arithmetic carriers and shared error types.
//
// All identity-level computation in this library runs on GMP integers and
// rationals; floating point appears only where a quantity is inherently real
// (roots, exponents, probabilities).

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qed {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // rational, kept canonical (gcd 1, positive denom)

// -------------------------------------------------------------------------
// Error taxonomy shared across the library.
// -------------------------------------------------------------------------

// A numeric argument lies outside an operation's stated domain.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A sign-scan found no root bracket in the search interval.
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The request exceeds the supported brute-force scale.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration produced an empty family where statistics were requested.
struct NoCodesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numeric routine failed to converge or hit its iteration cap.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scaling denominator vanished (e.g. normalizing by a zero polynomial value).
struct DegenerateScaling : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weight spectrum failed a consistency requirement (e.g. a transform
// produced a negative coefficient).
struct InconsistentSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A formula's validity condition fails at the requested point (distinct from
// a malformed argument: the request is meaningful, the bound just does not
// apply there).
struct NotApplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -------------------------------------------------------------------------
// Small exact helpers.
// -------------------------------------------------------------------------

// Exact binomial coefficient; 0 whenever k < 0 or k > n (and for n < 0).
inline Int binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// Exact integer power with a (possibly negative) big-integer base.
inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

// Exact rational value of a binary double (no decimal rounding involved).
inline Rat rat_of_double(double x) {
  Rat r(x);
  r.canonicalize();
  return r;
}

// Parse an exact rational from a string. Accepted forms:
//   integers        "42", "-7"
//   decimals        "0.51", "-3.25"  (exact: 0.51 -> 51/100)
//   fractions       "6/5", "-22/7"
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParameterError("empty rational literal");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
      throw ParameterError("bad fraction literal: " + s);
    r.canonicalize();
    return r;
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    Int z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
      throw ParameterError("bad integer literal: " + s);
    return Rat(z);
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t frac_len = s.size() - dot - 1;
  if (frac_len == 0 || digits.empty() || digits == "-" || digits == "+")
    throw ParameterError("bad decimal literal: " + s);
  Int num;
  if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
    throw ParameterError("bad decimal literal: " + s);
  Rat r(num, ipow(10, frac_len));
  r.canonicalize();
  return r;
}

// Render a rational exactly. Denominators of the form 2^a 5^b print as a
// finite decimal; anything else prints as "num/den".
inline std::string rat_to_string(const Rat& r) {
  Int den = r.get_den();
  if (den == 1) return r.get_num().get_str();
  unsigned long twos = 0, fives = 0;
  Int d = den;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) { d /= 2; ++twos; }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) { d /= 5; ++fives; }
  if (d != 1) return r.get_num().get_str() + "/" + den.get_str();
  const unsigned long places = twos > fives ? twos : fives;
  Int scaled = r.get_num() * ipow(10, places) / den;  // exact by construction
  const bool neg = scaled < 0;
  const Int magnitude = neg ? Int(-scaled) : scaled;
  std::string digits = magnitude.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return (neg ? "-" : "") + digits;
}

}  // namespace qed

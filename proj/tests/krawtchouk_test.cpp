#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "qed/asymptotics.hpp"
#include "qed/exact.hpp"
#include "qed/gf4.hpp"
#include "qed/krawtchouk.hpp"

namespace {

using qed::Int;
using qed::Rat;

qed::Rat rat_pow(const qed::Rat& base, int e) {
  qed::Rat acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// (1/n) log_q |v| for a big integer v, via the mantissa/exponent split.
double log_q_abs(const Int& v, int q, long n) {
  long exp2 = 0;
  const double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return (std::log2(std::fabs(d)) + static_cast<double>(exp2)) /
         (std::log2(static_cast<double>(q)) * static_cast<double>(n));
}

TEST(Krawtchouk, ValuesAtZeroAndDegreeZero) {
  for (int q : {2, 3, 4}) {
    for (int n = 0; n <= 10; ++n) {
      for (int k = 0; k <= n; ++k) {
        EXPECT_EQ(qed::krawtchouk_int(q, n, k, 0),
                  qed::binom(n, k) * qed::ipow(q - 1, static_cast<unsigned long>(k)));
      }
      for (int x = 0; x <= n; ++x) EXPECT_EQ(qed::krawtchouk_int(q, n, 0, x), 1);
    }
  }
}

TEST(Krawtchouk, ArgumentValidation) {
  EXPECT_THROW(qed::krawtchouk_int(1, 4, 1, 1), qed::ParameterError);
  EXPECT_THROW(qed::krawtchouk_int(4, 4, 5, 1), qed::ParameterError);
  EXPECT_THROW(qed::krawtchouk_int(4, 4, 1, 5), qed::ParameterError);
  EXPECT_THROW(qed::krawtchouk_real(4, 4, 1, -0.5), qed::ParameterError);
  EXPECT_THROW(qed::KrawTable(1, 3), qed::ParameterError);
}

// sum_i K_r(q;i) K_i(q;s) = q^n delta_rs.
TEST(Krawtchouk, TransformOrthogonality) {
  for (int q : {2, 3, 4}) {
    for (int n : {1, 2, 5, 12}) {
      const qed::KrawTable K(q, n);
      const Int qn = qed::ipow(q, static_cast<unsigned long>(n));
      for (int r = 0; r <= n; ++r) {
        for (int s = 0; s <= n; ++s) {
          Int acc(0);
          for (int i = 0; i <= n; ++i) acc += K(r, i) * K(i, s);
          EXPECT_EQ(acc, r == s ? qn : Int(0)) << "q=" << q << " n=" << n
                                               << " r=" << r << " s=" << s;
        }
      }
    }
  }
}

// sum_x C(n,x) g^x K_r(x) K_s(x) = q^n C(n,r) g^r delta_rs.
TEST(Krawtchouk, WeightedOrthogonality) {
  for (int q : {2, 3, 4}) {
    const int n = 9;
    const qed::KrawTable K(q, n);
    const Int qn = qed::ipow(q, static_cast<unsigned long>(n));
    for (int r = 0; r <= n; ++r) {
      for (int s = 0; s <= n; ++s) {
        Int acc(0);
        for (int x = 0; x <= n; ++x)
          acc += qed::binom(n, x) * qed::ipow(q - 1, static_cast<unsigned long>(x)) *
                 K(r, x) * K(s, x);
        const Int expect =
            r == s ? Int(qn * qed::binom(n, r) *
                         qed::ipow(q - 1, static_cast<unsigned long>(r)))
                   : Int(0);
        EXPECT_EQ(acc, expect) << "q=" << q << " r=" << r << " s=" << s;
      }
    }
  }
}

// sum_j K_j(x) z^j = (1 + g z)^{n-x} (1 - z)^x, exactly over rationals.
TEST(Krawtchouk, GeneratingFunction) {
  const std::vector<Rat> zs = {Rat(1, 2), Rat(-1, 3), Rat(2)};
  for (int q : {2, 3, 4}) {
    for (int n : {1, 3, 7, 12}) {
      const qed::KrawTable K(q, n);
      for (const Rat& z : zs) {
        for (int x = 0; x <= n; ++x) {
          Rat lhs(0);
          for (int j = 0; j <= n; ++j) lhs += Rat(K(j, x)) * rat_pow(z, j);
          const Rat rhs =
              rat_pow(Rat(1) + Rat(q - 1) * z, n - x) * rat_pow(Rat(1) - z, x);
          EXPECT_EQ(lhs, rhs) << "q=" << q << " n=" << n << " x=" << x;
        }
      }
    }
  }
}

// sum_i C(n,2i) 3^{2i} K_t(4;2i) = 2^{n-1} C(n,t) (-3)^t for even n, t >= 1.
TEST(Krawtchouk, EvenWeightSumIdentity) {
  for (int n = 2; n <= 12; n += 2) {
    for (int t = 1; t <= n; ++t) {
      const auto [lhs, rhs] = qed::even_sum_identity(n, t);
      EXPECT_EQ(lhs, rhs) << "n=" << n << " t=" << t;
    }
  }
  // The identity is specifically a t >= 1 statement.
  const auto [lhs0, rhs0] = qed::even_sum_identity(2, 0);
  EXPECT_NE(lhs0, rhs0);
  EXPECT_THROW(qed::even_sum_identity(3, 1), qed::ParameterError);
}

TEST(Krawtchouk, RealAgreesWithExactAtIntegers) {
  for (int q : {2, 4}) {
    const int n = 18;
    for (int k = 0; k <= n; k += 3) {
      for (int x = 0; x <= n; x += 2) {
        const double exact = qed::krawtchouk_int(q, n, k, x).get_d();
        const double approx = qed::krawtchouk_real(q, n, k, x);
        const double scale = std::max(1.0, std::fabs(exact));
        EXPECT_NEAR(approx, exact, 1e-9 * scale) << "q=" << q << " k=" << k;
      }
    }
  }
}

TEST(Krawtchouk, GeneralizedBinomial) {
  EXPECT_DOUBLE_EQ(static_cast<double>(qed::gen_binom(5.0L, 2)), 10.0);
  EXPECT_DOUBLE_EQ(static_cast<double>(qed::gen_binom(3.0L, 0)), 1.0);
  // C(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8.
  EXPECT_NEAR(static_cast<double>(qed::gen_binom(-0.5L, 2)), 0.375, 1e-15);
  // Vanishes when a nonnegative integer upper index is exceeded.
  EXPECT_DOUBLE_EQ(static_cast<double>(qed::gen_binom(2.0L, 3)), 0.0);
}

TEST(SmallestRoot, LinearCasesExact) {
  // K_1(4;x) on n=3 is 9 - 4x: root 2.25.
  EXPECT_NEAR(qed::smallest_root(4, 3, 1), 2.25, 1e-9);
  // K_1(2;x) on n=4 is 4 - 2x: root 2.
  EXPECT_NEAR(qed::smallest_root(2, 4, 1), 2.0, 1e-9);
}

TEST(SmallestRoot, QuadraticCaseMatchesFormula) {
  // K_2(2;x) on n=6 is 2x^2 - 12x + 15 with smallest root 3 - sqrt(6)/2.
  EXPECT_NEAR(qed::smallest_root(2, 6, 2), 3.0 - std::sqrt(6.0) / 2.0, 1e-9);
}

TEST(SmallestRoot, PairRootTracksThresholdCurve) {
  const int q = 4, n = 400;
  const double sigma = 0.2;
  const int t = static_cast<int>(sigma * n);
  const double y = qed::smallest_root_pair(q, n, t);
  EXPECT_NEAR(y / n, qed::tau0(sigma, q), 0.02);
  EXPECT_THROW(qed::smallest_root_pair(4, 5, 5), qed::ParameterError);
}

TEST(CoefTransform, RoundTripsExactly) {
  const int q = 4, n = 6;
  const qed::KrawTable K(q, n);
  std::vector<Rat> fvals;
  for (int j = 0; j <= n; ++j) {
    Rat v(3 * j * j - 7 * j + 2, j + 1);
    v.canonicalize();
    fvals.push_back(v);
  }
  const auto coeffs = qed::coef_transform(q, n, fvals);
  for (int x = 0; x <= n; ++x)
    EXPECT_EQ(qed::kraw_basis_eval(K, coeffs, x), fvals[static_cast<std::size_t>(x)]);
}

TEST(CoefTransform, IndicatorAtZeroIsFlat) {
  const int q = 3, n = 5;
  std::vector<Rat> fvals(n + 1, Rat(0));
  fvals[0] = 1;
  const auto coeffs = qed::coef_transform(q, n, fvals);
  const Rat expect(1, qed::ipow(q, static_cast<unsigned long>(n)));
  for (const Rat& c : coeffs) EXPECT_EQ(c, expect);
}

TEST(CoefTransform, DoubleOverloadTracksExact) {
  const int q = 4, n = 8;
  std::vector<Rat> fvals;
  std::vector<double> dvals;
  for (int j = 0; j <= n; ++j) {
    fvals.push_back(Rat(j * j + 1, 3));
    dvals.push_back(fvals.back().get_d());
  }
  const auto exact = qed::coef_transform(q, n, fvals);
  const auto approx = qed::coef_transform(q, n, dvals);
  for (int i = 0; i <= n; ++i) {
    const double e = exact[static_cast<std::size_t>(i)].get_d();
    EXPECT_NEAR(approx[static_cast<std::size_t>(i)], e,
                1e-10 * std::max(1.0, std::fabs(e)));
  }
  EXPECT_THROW(qed::coef_transform(4, 3, dvals), qed::ParameterError);
}

// p_ij^k counts points at distance i from x and j from y when d(x,y) = k;
// compare against direct enumeration of the Hamming space.
TEST(IntersectionNumbers, MatchBruteForceBinary) {
  const int q = 2, n = 5;
  for (int k = 0; k <= n; ++k) {
    const unsigned y = (1u << k) - 1u;  // weight-k point; x = 0
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        long count = 0;
        for (unsigned z = 0; z < (1u << n); ++z)
          if (__builtin_popcount(z) == i && __builtin_popcount(z ^ y) == j)
            ++count;
        EXPECT_EQ(qed::intersection_number(q, n, i, j, k), Int(count))
            << "i=" << i << " j=" << j << " k=" << k;
      }
    }
  }
}

TEST(IntersectionNumbers, MatchBruteForceQuaternary) {
  const int q = 4, n = 3;
  const long total = 64;  // 4^3
  auto unpack = [&](long v) {
    qed::gf4::Vec w(n);
    for (int c = 0; c < n; ++c) w[static_cast<std::size_t>(c)] =
        static_cast<qed::gf4::Elem>((v >> (2 * c)) & 3);
    return w;
  };
  for (int k = 0; k <= n; ++k) {
    qed::gf4::Vec y(n, 0);
    for (int c = 0; c < k; ++c) y[static_cast<std::size_t>(c)] = 1;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        long count = 0;
        for (long v = 0; v < total; ++v) {
          const auto z = unpack(v);
          if (qed::gf4::weight(z) == i && qed::gf4::weight(qed::gf4::add(z, y)) == j)
            ++count;
        }
        EXPECT_EQ(qed::intersection_number(q, n, i, j, k), Int(count))
            << "i=" << i << " j=" << j << " k=" << k;
      }
    }
  }
}

// F_e(x) = sum_i K_e(q;i)^2 K_i(q;x), and it vanishes beyond x = 2e.
TEST(SquaredKrawtchouk, ClosedFormMatchesExpansion) {
  for (int q : {2, 3, 4}) {
    for (int n : {4, 8}) {
      const qed::KrawTable K(q, n);
      for (int e = 0; e <= n; ++e) {
        for (int x = 0; x <= n; ++x) {
          Int sum(0);
          for (int i = 0; i <= n; ++i) sum += K(e, i) * K(e, i) * K(i, x);
          EXPECT_EQ(qed::F_e_closed(q, n, e, x), sum)
              << "q=" << q << " n=" << n << " e=" << e << " x=" << x;
          if (x > 2 * e) {
            EXPECT_EQ(sum, 0);
          }
        }
      }
    }
  }
}

TEST(SquaredKrawtchouk, BinaryOddArgumentVanishes) {
  for (int x = 1; x <= 7; x += 2) EXPECT_EQ(qed::F_e_closed(2, 8, 3, x), 0);
}

// At n = 2000 the exact integer value's normalized logarithm must sit on the
// asymptotic exponent curve.
TEST(Krawtchouk, LargeBlockLogMatchesExponent) {
  const int q = 4;
  const long n = 2000;
  const int k = 400, x = 200;  // sigma = 0.2, xi = 0.1
  const Int v = qed::krawtchouk_int(q, static_cast<int>(n), k, x);
  ASSERT_NE(v, 0);
  const double lhs = log_q_abs(v, q, n);
  const double rhs = qed::kraw_exponent(0.2, 0.1, q);
  EXPECT_NEAR(lhs, rhs, 0.01);
}

}  // namespace

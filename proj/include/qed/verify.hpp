#pragma once

// Self-verification suites driven by the CLI `verify` subcommand: exact
// combinatorial identities, enumeration cross-checks, analytic involutions,
// critical constants, and LP duality/soundness.  Each suite returns a named
// pass/fail result; `full` widens ranges and adds the slower scans.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qed/asymptotics.hpp"
#include "qed/code.hpp"
#include "qed/entropy.hpp"
#include "qed/exact.hpp"
#include "qed/families.hpp"
#include "qed/krawtchouk.hpp"
#include "qed/lp_bounds.hpp"

namespace qed {

struct VerifyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace verify_detail {

inline Rat rat_pow(const Rat& base, long e) {
  Rat acc(1);
  for (long i = 0; i < e; ++i) acc *= base;
  return acc;
}

using Check = std::pair<bool, std::string>;

inline Check kraw_orthogonality(bool full) {
  const int nmax = full ? 12 : 8;
  for (int q : {2, 3, 4}) {
    for (int n = 1; n <= nmax; ++n) {
      const KrawTable k(q, n);
      for (int r = 0; r <= n; ++r) {
        for (int s = 0; s <= n; ++s) {
          Int acc(0);
          for (int i = 0; i <= n; ++i) acc += k(r, i) * k(i, s);
          const Int expect = (r == s) ? ipow(Int(q), n) : Int(0);
          if (acc != expect) {
            std::ostringstream msg;
            msg << "q=" << q << " n=" << n << " (r,s)=(" << r << ',' << s
                << "): got " << acc.get_str();
            return {false, msg.str()};
          }
        }
      }
    }
  }
  return {true, "sum_i K_r(i) K_i(s) = q^n delta_rs exact"};
}

inline Check generating_function(bool full) {
  const int nmax = full ? 12 : 8;
  const std::vector<Rat> zs = {Rat(1, 2), Rat(-1, 3), Rat(2)};
  for (int q : {2, 3, 4}) {
    for (int n = 1; n <= nmax; ++n) {
      const KrawTable k(q, n);
      for (int x = 0; x <= n; ++x) {
        for (const Rat& z : zs) {
          Rat lhs(0), zp(1);
          for (int j = 0; j <= n; ++j) {
            lhs += Rat(k(j, x)) * zp;
            zp *= z;
          }
          const Rat rhs = rat_pow(Rat(1) + Rat(q - 1) * z, n - x) *
                          rat_pow(Rat(1) - z, x);
          if (lhs != rhs) {
            std::ostringstream msg;
            msg << "q=" << q << " n=" << n << " x=" << x;
            return {false, msg.str()};
          }
        }
      }
    }
  }
  return {true, "sum_j K_j(x) z^j = (1+(q-1)z)^{n-x}(1-z)^x exact"};
}

inline Check even_kraw_sum(bool full) {
  const int nmax = full ? 12 : 10;
  for (int n = 2; n <= nmax; n += 2) {
    for (int t = 1; t <= n; ++t) {
      const auto [lhs, rhs] = even_sum_identity(n, t);
      if (lhs != rhs) {
        std::ostringstream msg;
        msg << "n=" << n << " t=" << t << ": " << lhs.get_str()
            << " != " << rhs.get_str();
        return {false, msg.str()};
      }
    }
  }
  return {true, "even-weight Krawtchouk sum matches closed form exactly"};
}

inline std::vector<std::pair<int, int>> family_grid(bool full) {
  std::vector<std::pair<int, int>> grid = {{2, 1}, {3, 1}, {4, 1}, {4, 2}};
  if (full) {
    grid.push_back({5, 1});
    grid.push_back({5, 2});
    grid.push_back({6, 1});
    grid.push_back({6, 2});
  }
  return grid;
}

inline Check trace_orthogonality(bool full) {
  for (const auto& [n, k] : family_grid(full)) {
    for (const LinearCodeF4& code : enumerate_even_codes(n, k)) {
      const auto words = code.codewords();
      for (const auto& a : words) {
        for (const auto& b : words) {
          if (gf4::trace_ip(a, b) != 0) {
            std::ostringstream msg;
            msg << "n=" << n << " k=" << k << ": trace form nonzero";
            return {false, msg.str()};
          }
        }
      }
    }
  }
  return {true, "every even code is self-orthogonal under the trace form"};
}

inline Check even_dual_count_check(bool full) {
  for (const auto& [n, k] : family_grid(full)) {
    const Int expect = even_dual_count(n, k);
    for (const LinearCodeF4& code : enumerate_even_codes(n, k)) {
      Int count(0);
      for (const auto& v : code.dual(LinearCodeF4::Form::dot).codewords())
        if (gf4::weight(v) % 2 == 0) ++count;
      if (count != expect) {
        std::ostringstream msg;
        msg << "n=" << n << " k=" << k << ": counted " << count.get_str()
            << " expected " << expect.get_str();
        return {false, msg.str()};
      }
    }
  }
  return {true, "even-vector count of the dot dual matches the closed form"};
}

// Cosets C+a for a in the trace-form dual keep the weight parity of a.
// (The analogous statement for the plain dot dual is false: the even code
// spanned by (1,w) has a mixed-parity coset, since weight parity couples to
// additions through the trace form, not the dot form.)
inline Check coset_parity(bool full) {
  for (const auto& [n, k] : family_grid(full)) {
    for (const LinearCodeF4& code : enumerate_even_codes(n, k)) {
      const auto words = code.codewords();
      for (const auto& a : code.dual(LinearCodeF4::Form::trace).codewords()) {
        const int parity = gf4::weight(a) % 2;
        for (const auto& c : words) {
          if (gf4::weight(gf4::add(a, c)) % 2 != parity) {
            std::ostringstream msg;
            msg << "n=" << n << " k=" << k << ": coset mixes weight parity";
            return {false, msg.str()};
          }
        }
      }
    }
  }
  return {true,
          "cosets of an even code inside its trace dual have fixed parity"};
}

inline Check family_averages(bool full) {
  for (const auto& [n, k] : family_grid(full)) {
    const CodeFamilyStats stats = family_stats(n, k);  // throws on
    // non-constant incidence, which is itself part of the check
    if (Rat(stats.N) * (rat_pow(Rat(4), k) - 1) !=
        Rat(stats.L) * Rat(even_nonzero_vector_count(n)))
      return {false, "double counting identity fails at n=" +
                         std::to_string(n) + " k=" + std::to_string(k)};
    for (int i = 0; i <= n; ++i) {
      if (stats.avgB[i] != stats.avgB_direct[i])
        return {false, "average spectrum formula mismatch at n=" +
                           std::to_string(n) + " k=" + std::to_string(k) +
                           " i=" + std::to_string(i)};
      if (stats.avgBperp[i] != stats.avgBperp_direct[i])
        return {false, "average dual spectrum formula mismatch at n=" +
                           std::to_string(n) + " k=" + std::to_string(k) +
                           " t=" + std::to_string(i)};
    }
  }
  const CodeFamilyStats s21 = family_stats(2, 1);
  if (s21.N != 3 || s21.L != 1 || s21.avgB != std::vector<Rat>{1, 0, 3})
    return {false, "reference family (n=2,k=1) statistics drifted"};
  bool empty_threw = false;
  try {
    family_stats(2, 2);
  } catch (const NoCodesError&) {
    empty_threw = true;
  }
  if (!empty_threw) return {false, "(n=2,k=2) should report an empty family"};
  return {true, "formula averages equal direct enumeration averages exactly"};
}

inline Check macwilliams_involution(bool full) {
  for (const auto& [n, k] : family_grid(full)) {
    const Rat size_c = rat_pow(Rat(4), k);
    const Rat size_dual = rat_pow(Rat(4), n - k);
    for (const LinearCodeF4& code : enumerate_even_codes(n, k)) {
      const WeightEnum we = code.weight_distribution();
      const WeightEnum round_trip =
          macwilliams(macwilliams(we, size_c), size_dual);
      if (round_trip.B != we.B)
        return {false, "double transform is not the identity at n=" +
                           std::to_string(n) + " k=" + std::to_string(k)};
    }
  }
  return {true, "transforming twice returns the original spectrum exactly"};
}

inline Check entropy_inverse(bool) {
  for (int q : {2, 3, 4}) {
    const double top = static_cast<double>(q - 1) / q;
    for (int i = 1; i <= 40; ++i) {
      const double x = top * i / 41.0;
      const double back = hq_inv(hq(x, q), q);
      if (std::abs(back - x) > 1e-10) {
        std::ostringstream msg;
        msg << "q=" << q << " x=" << x << " roundtrip " << back;
        return {false, msg.str()};
      }
    }
  }
  return {true, "hq_inv inverts hq to 1e-10 on [0,(q-1)/q]"};
}

inline Check tau0_involution(bool) {
  for (int q : {2, 3, 4}) {
    const double top = static_cast<double>(q - 1) / q;
    for (int i = 0; i <= 1000; ++i) {
      const double z = top * i / 1000.0;
      if (std::abs(tau0(tau0(z, q), q) - z) > 1e-12) {
        std::ostringstream msg;
        msg << "q=" << q << " z=" << z;
        return {false, msg.str()};
      }
    }
  }
  return {true, "tau0(tau0(z)) = z within 1e-12 on 1001 points"};
}

inline Check kraw_endpoint(bool full) {
  const std::vector<double> sigmas =
      full ? std::vector<double>{0.05, 0.1, 0.2, 0.3}
           : std::vector<double>{0.1, 0.2};
  for (int q : {2, 4}) {
    for (double sigma : sigmas) {
      const double xi = tau0(sigma, q);
      const double lhs = kraw_exponent(sigma, xi, q);
      const double rhs = (1.0 + hq(sigma, q) - hq(xi, q)) / 2.0;
      if (std::abs(lhs - rhs) > 1e-6) {
        std::ostringstream msg;
        msg << "q=" << q << " sigma=" << sigma << " got " << lhs
            << " expected " << rhs;
        return {false, msg.str()};
      }
    }
  }
  return {true, "exponent integral hits (1+H(sigma)-H(xi))/2 at xi=tau0"};
}

inline Check binary_constants(bool full) {
  const BoundConstants& c = bound_constants(2);
  if (std::abs(c.tau2 - 0.1) > 1e-12)
    return {false, "tau2(2) != 0.1 exactly: " + std::to_string(c.tau2)};
  if (std::abs(2.0 * c.tau2 - tau0(c.tau2, 2)) > 1e-9)
    return {false, "tau2(2) fails its defining root residual"};
  if (std::abs(tau_of_p(c.p_cr, 2) - c.tau_cr) > 1e-10)
    return {false, "p_cr(2) fails its defining equation"};
  if (std::abs(c.p_cr - 0.18) > 1e-12)
    return {false, "p_cr(2) != 0.18: " + std::to_string(c.p_cr)};
  if (full) {
    if (!c.tau1 || *c.tau1 < 0.10 || *c.tau1 > 0.11)
      return {false, "tau1(2) not detected inside [0.10, 0.11]"};
  }
  return {true, "tau2(2)=0.1, p_cr(2)=0.18, tau1 in the expected window"};
}

inline Check quaternary_constants(bool full) {
  const BoundConstants& c = bound_constants(4);
  if (std::abs(c.tau2 - 0.1699056897457398) > 1e-12)
    return {false, "tau2(4) drifted: " + std::to_string(c.tau2)};
  if (std::abs(2.0 * c.tau2 - tau0(c.tau2, 4)) > 1e-9)
    return {false, "tau2(4) fails its defining root residual"};
  if (std::abs(c.p_cr - 0.301) > 2e-3)
    return {false, "p_cr(4) outside 0.301 +- 2e-3: " + std::to_string(c.p_cr)};
  const double exact = 3.0 * (31.0 - 8.0 * std::sqrt(2.0)) / 196.0;
  if (std::abs(c.p_cr - exact) > 1e-9)
    return {false, "p_cr(4) fails the closed form"};
  const int points = full ? 50 : 8;
  for (int i = 1; i <= points; ++i) {
    const double tau = c.tau2 * i / points;
    const MaximumCheckResult check = maximum_check(tau, 4, full ? 96 : 48);
    if (!check.holds) {
      std::ostringstream msg;
      msg << "enumerator maximum leaves 0 at tau=" << tau << " (margin "
          << check.margin << ")";
      return {false, msg.str()};
    }
  }
  return {true, "p_cr(4)=0.3013...; enumerator maximum stays at 0 up to tau2"};
}

inline Check lp_duality(bool full) {
  const std::vector<long> sizes =
      full ? std::vector<long>{2, 4, 6, 8} : std::vector<long>{2, 4};
  for (long n : sizes) {
    const LpBoundReport report = lp_bound_report(n, 4, 0.25, 0.1);
    if (!report.recheck.feasible)
      return {false, "extracted certificate infeasible at n=" +
                         std::to_string(n) + " (witness " +
                         std::to_string(report.recheck.witness) + ")"};
    const double gap = std::abs(report.recheck.bound - report.bound);
    if (gap > 1e-7)
      return {false, "certificate value misses the optimum by " +
                         std::to_string(gap) + " at n=" + std::to_string(n)};
    if (!report.solution.certified)
      return {false, "final basis failed the exact recheck at n=" +
                         std::to_string(n)};
  }
  const double self_dual = pue_lower_bound(2, 4, 0.0, 0.1);
  if (self_dual > 1e-12)
    return {false, "n=2 rate-0 bound positive: " + std::to_string(self_dual)};
  return {true, "certificates reproduce LP optima; rate-0 n=2 bound <= 0"};
}

inline Check lp_soundness(bool full) {
  const int n = full ? 6 : 4;
  const double p = 0.1;
  for (int k = 1; 2 * k <= n && k <= 3; ++k) {
    const double rq = static_cast<double>(n - 2 * k) / n;
    const double lower = pue_lower_bound(n, 4, rq, p);
    for (const LinearCodeF4& code : enumerate_even_codes(n, k)) {
      const WeightEnum b = code.weight_distribution();
      const WeightEnum bperp =
          code.dual(LinearCodeF4::Form::trace).weight_distribution();
      const PueResult pue = pue_eval(b, bperp, p);
      if (pue.value < lower - 1e-9) {
        std::ostringstream msg;
        msg << "a real (" << n << ',' << k << ") code beats the bound: "
            << pue.value << " < " << lower;
        return {false, msg.str()};
      }
    }
  }
  return {true, "every enumerated even code respects the LP lower bound"};
}

inline Check flat_branch(bool) {
  for (double rq : {0.7, 0.8, 0.9, 1.0}) {
    const double expect = (1.0 - rq) / 2.0;
    const BoundPoint e = existence_exponent(rq, 0.1);
    const BoundPoint a = amrrw_exponent(rq, 0.1, 4);
    const BoundPoint h = hamming_exponent(rq, 0.1, 4);
    for (const BoundPoint* pt : {&e, &a, &h}) {
      if (pt->status != BranchStatus::flat || !pt->value ||
          std::abs(*pt->value - expect) > 1e-12) {
        std::ostringstream msg;
        msg << "flat value off at rq=" << rq;
        return {false, msg.str()};
      }
    }
  }
  return {true, "all three exponents equal (1-R_Q)/2 exactly on the flat range"};
}

inline Check exponent_sandwich(bool full) {
  const int points = full ? 100 : 20;
  for (int i = 0; i <= points; ++i) {
    const double rq = static_cast<double>(i) / points;
    const BoundPoint lower = existence_exponent(rq, 0.1);
    const BoundPoint upper_lp = amrrw_exponent(rq, 0.1, 4);
    const BoundPoint upper_h = hamming_exponent(rq, 0.1, 4);
    if (upper_lp.status != BranchStatus::not_applicable && upper_lp.value &&
        lower.value > *upper_lp.value + 1e-9) {
      std::ostringstream msg;
      msg << "existence exceeds the LP exponent at rq=" << rq;
      return {false, msg.str()};
    }
    if (upper_h.status != BranchStatus::not_applicable && upper_h.value &&
        lower.value > *upper_h.value + 1e-9) {
      std::ostringstream msg;
      msg << "existence exceeds the sphere-packing exponent at rq=" << rq;
      return {false, msg.str()};
    }
  }
  return {true, "attainable exponent never exceeds either upper exponent"};
}

}  // namespace verify_detail

// Runs every suite; `full` widens ranges and adds the slow scans.
inline std::vector<VerifyResult> run_verify(bool full) {
  using verify_detail::Check;
  struct Suite {
    const char* name;
    Check (*fn)(bool);
  };
  const Suite suites[] = {
      {"kraw-orthogonality", verify_detail::kraw_orthogonality},
      {"generating-function", verify_detail::generating_function},
      {"even-kraw-sum", verify_detail::even_kraw_sum},
      {"trace-orthogonality", verify_detail::trace_orthogonality},
      {"even-dual-count", verify_detail::even_dual_count_check},
      {"coset-parity", verify_detail::coset_parity},
      {"family-averages", verify_detail::family_averages},
      {"macwilliams-involution", verify_detail::macwilliams_involution},
      {"entropy-inverse", verify_detail::entropy_inverse},
      {"tau0-involution", verify_detail::tau0_involution},
      {"kraw-exponent-endpoint", verify_detail::kraw_endpoint},
      {"binary-critical-constants", verify_detail::binary_constants},
      {"quaternary-critical-constants", verify_detail::quaternary_constants},
      {"lp-duality", verify_detail::lp_duality},
      {"lp-soundness", verify_detail::lp_soundness},
      {"flat-branch-equality", verify_detail::flat_branch},
      {"exponent-sandwich", verify_detail::exponent_sandwich},
  };
  std::vector<VerifyResult> results;
  for (const Suite& suite : suites) {
    VerifyResult r;
    r.name = suite.name;
    try {
      const Check check = suite.fn(full);
      r.passed = check.first;
      r.detail = check.second;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qed

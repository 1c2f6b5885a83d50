#pragma once

// A small dense two-phase simplex solver for linear programs in the form
//
//   minimize    c . x
//   subject to  A_eq x  =  b_eq
//               A_ge x >=  b_ge
//               x >= 0
//
// with Bland's anti-cycling rule, plus an exact-rational recheck of the
// final basis that certifies optimality independently of floating-point
// round-off.  Dual multipliers are recovered from the final basis by an
// exact solve, so reported duals satisfy complementary slackness of the
// certified basis rather than accumulated tableau arithmetic.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qed/exact.hpp"

namespace qed {

struct LpProblem {
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<std::vector<double>> a_ge;
  std::vector<double> b_ge;
  std::vector<double> c;
  // Optional labels used by lp_to_text; sizes must match when non-empty.
  std::vector<std::string> eq_names;
  std::vector<std::string> ge_names;
  std::vector<std::string> var_names;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> dual_eq;  // free multipliers, one per equality row
  std::vector<double> dual_ge;  // nonnegative multipliers, one per >= row
  bool certified = false;  // exact-rational optimality check of final basis
  long iterations = 0;
};

namespace detail {

constexpr double kSimplexTol = 1e-9;
constexpr long kSimplexMaxIter = 200000;

inline void validate_problem(const LpProblem& lp) {
  const std::size_t n = lp.c.size();
  if (n == 0) throw ParameterError("solve_lp: no variables");
  if (lp.a_eq.size() != lp.b_eq.size())
    throw ParameterError("solve_lp: equality row/rhs count mismatch");
  if (lp.a_ge.size() != lp.b_ge.size())
    throw ParameterError("solve_lp: inequality row/rhs count mismatch");
  for (const auto& row : lp.a_eq)
    if (row.size() != n)
      throw ParameterError("solve_lp: equality row width mismatch");
  for (const auto& row : lp.a_ge)
    if (row.size() != n)
      throw ParameterError("solve_lp: inequality row width mismatch");
}

// Exact Gaussian elimination solve of M z = rhs over the rationals.
// Returns nullopt when M is singular.
inline std::optional<std::vector<Rat>> rat_solve(std::vector<std::vector<Rat>> m,
                                                 std::vector<Rat> rhs) {
  const std::size_t size = m.size();
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = size;
    for (std::size_t r = col; r < size; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == size) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rat inv = Rat(1) / m[col][col];
    for (std::size_t cc = col; cc < size; ++cc) m[col][cc] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < size; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rat factor = m[r][col];
      for (std::size_t cc = col; cc < size; ++cc)
        m[r][cc] -= factor * m[col][cc];
      rhs[r] -= factor * rhs[col];
    }
  }
  return rhs;
}

}  // namespace detail

inline LpSolution solve_lp(const LpProblem& lp) {
  detail::validate_problem(lp);
  const std::size_t n = lp.c.size();
  const std::size_t m_eq = lp.a_eq.size();
  const std::size_t m_ge = lp.a_ge.size();
  const std::size_t m = m_eq + m_ge;
  if (m == 0) throw ParameterError("solve_lp: no constraints");

  // Standard form: columns = n structural + m_ge surplus, rows sign-flipped
  // so every right-hand side is nonnegative.
  const std::size_t n_struct = n + m_ge;
  const std::size_t n_total = n_struct + m;  // plus one artificial per row
  std::vector<std::vector<double>> tab(m, std::vector<double>(n_total, 0.0));
  std::vector<double> rhs(m, 0.0);
  std::vector<int> flip(m, 1);

  for (std::size_t i = 0; i < m; ++i) {
    double b;
    if (i < m_eq) {
      for (std::size_t j = 0; j < n; ++j) tab[i][j] = lp.a_eq[i][j];
      b = lp.b_eq[i];
    } else {
      const std::size_t r = i - m_eq;
      for (std::size_t j = 0; j < n; ++j) tab[i][j] = lp.a_ge[r][j];
      tab[i][n + r] = -1.0;  // surplus
      b = lp.b_ge[r];
    }
    if (b < 0.0) {
      flip[i] = -1;
      for (std::size_t j = 0; j < n_struct; ++j) tab[i][j] = -tab[i][j];
      b = -b;
    }
    tab[i][n_struct + i] = 1.0;  // artificial
    rhs[i] = b;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n_struct + i;

  long iterations = 0;
  const double tol = detail::kSimplexTol;

  // Runs Bland-rule simplex on the current tableau for the given cost
  // vector restricted to columns < limit.  Returns false on unboundedness.
  auto run_phase = [&](const std::vector<double>& cost,
                       std::size_t limit) -> bool {
    // Reduced-cost row: z_j = cost_j - cost_B . B^{-1} A_j, maintained by
    // elimination from the explicit basic rows.
    std::vector<double> zrow(limit, 0.0);
    double zobj = 0.0;
    for (std::size_t j = 0; j < limit; ++j) zrow[j] = cost[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < limit; ++j) zrow[j] -= cb * tab[i][j];
      zobj -= cb * rhs[i];
    }
    while (true) {
      if (++iterations > detail::kSimplexMaxIter)
        throw NumericFailure("solve_lp: iteration limit exceeded");
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (zrow[j] < -tol) {
          enter = j;
          break;  // Bland: smallest eligible index
        }
      }
      if (enter == limit) return true;  // optimal for this phase
      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (tab[i][enter] > tol) {
          const double ratio = rhs[i] / tab[i][enter];
          if (ratio < best_ratio - 1e-15 ||
              (ratio < best_ratio + 1e-15 &&
               (leave == m || basis[i] < basis[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == m) return false;  // unbounded direction
      // Pivot on (leave, enter).
      const double piv = tab[leave][enter];
      for (std::size_t j = 0; j < n_total; ++j) tab[leave][j] /= piv;
      rhs[leave] /= piv;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave) continue;
        const double factor = tab[i][enter];
        if (factor == 0.0) continue;
        for (std::size_t j = 0; j < n_total; ++j)
          tab[i][j] -= factor * tab[leave][j];
        rhs[i] -= factor * rhs[leave];
      }
      const double zf = zrow[enter];
      if (zf != 0.0) {
        for (std::size_t j = 0; j < limit; ++j)
          zrow[j] -= zf * tab[leave][j];
        zobj -= zf * rhs[leave];
      }
      basis[leave] = enter;
    }
  };

  // Phase 1: drive the artificial variables to zero.
  std::vector<double> phase1_cost(n_total, 0.0);
  for (std::size_t j = n_struct; j < n_total; ++j) phase1_cost[j] = 1.0;
  if (!run_phase(phase1_cost, n_total))
    throw NumericFailure("solve_lp: phase 1 unbounded");
  double artificial_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n_struct) artificial_sum += rhs[i];
  LpSolution sol;
  sol.iterations = iterations;
  if (artificial_sum > 1e-7) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  // Pivot zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n_struct) continue;
    std::size_t enter = n_struct;
    for (std::size_t j = 0; j < n_struct; ++j) {
      if (std::abs(tab[i][j]) > tol) {
        enter = j;
        break;
      }
    }
    if (enter == n_struct)
      throw NumericFailure("solve_lp: redundant row blocks basis repair");
    const double piv = tab[i][enter];
    for (std::size_t j = 0; j < n_total; ++j) tab[i][j] /= piv;
    rhs[i] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == i) continue;
      const double factor = tab[r][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n_total; ++j)
        tab[r][j] -= factor * tab[i][j];
      rhs[r] -= factor * rhs[i];
    }
    basis[i] = enter;
  }

  // Phase 2: optimize the true objective over structural columns.
  std::vector<double> phase2_cost(n_total, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = lp.c[j];
  if (!run_phase(phase2_cost, n_struct)) {
    sol.status = LpStatus::unbounded;
    sol.iterations = iterations;
    return sol;
  }
  sol.iterations = iterations;

  // Recover the solution and, exactly, the duals of the final basis.
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = rhs[i];
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];

  // Exact data for the sign-flipped equality system [A | -I_surplus].
  auto exact_col = [&](std::size_t j) {
    std::vector<Rat> col(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      double v = 0.0;
      if (j < n) {
        v = (i < m_eq) ? lp.a_eq[i][j] : lp.a_ge[i - m_eq][j];
      } else if (j < n_struct) {
        v = (i == m_eq + (j - n)) ? -1.0 : 0.0;
      }
      if (v != 0.0) col[i] = rat_of_double(v) * flip[i];
    }
    return col;
  };
  std::vector<Rat> exact_b(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    const double b = (i < m_eq) ? lp.b_eq[i] : lp.b_ge[i - m_eq];
    exact_b[i] = rat_of_double(b) * flip[i];
  }
  auto exact_cost = [&](std::size_t j) {
    return (j < n) ? rat_of_double(lp.c[j]) : Rat(0);
  };

  std::vector<std::vector<Rat>> bmat(m, std::vector<Rat>(m, Rat(0)));
  std::vector<std::vector<Rat>> bmat_t(m, std::vector<Rat>(m, Rat(0)));
  bool basis_clean = true;
  std::vector<Rat> cb(m, Rat(0));
  for (std::size_t k = 0; k < m; ++k) {
    if (basis[k] >= n_struct) {
      basis_clean = false;
      break;
    }
    const auto col = exact_col(basis[k]);
    for (std::size_t i = 0; i < m; ++i) {
      bmat[i][k] = col[i];
      bmat_t[k][i] = col[i];
    }
    cb[k] = exact_cost(basis[k]);
  }

  sol.dual_eq.assign(m_eq, 0.0);
  sol.dual_ge.assign(m_ge, 0.0);
  if (basis_clean) {
    const auto xb = detail::rat_solve(bmat, exact_b);
    const auto y = detail::rat_solve(bmat_t, cb);
    if (xb && y) {
      bool primal_ok = true;
      for (const Rat& v : *xb)
        if (v < 0) primal_ok = false;
      bool dual_ok = true;
      for (std::size_t j = 0; j < n_struct && dual_ok; ++j) {
        Rat reduced = exact_cost(j);
        const auto col = exact_col(j);
        for (std::size_t i = 0; i < m; ++i) reduced -= (*y)[i] * col[i];
        if (reduced < 0) dual_ok = false;
      }
      sol.certified = primal_ok && dual_ok;
      // Duals for the original row orientation (undo the sign flips).
      for (std::size_t i = 0; i < m; ++i) {
        const double yi = (*y)[i].get_d() * flip[i];
        if (i < m_eq) {
          sol.dual_eq[i] = yi;
        } else {
          sol.dual_ge[i - m_eq] = yi;
        }
      }
      // Exact objective and primal vector from the certified basis.
      if (sol.certified) {
        Rat obj(0);
        for (std::size_t k = 0; k < m; ++k) obj += cb[k] * (*xb)[k];
        sol.objective = obj.get_d();
        std::fill(sol.x.begin(), sol.x.end(), 0.0);
        for (std::size_t k = 0; k < m; ++k)
          if (basis[k] < n) sol.x[basis[k]] = (*xb)[k].get_d();
      }
    }
  }
  sol.status = LpStatus::optimal;
  return sol;
}

// Serializes the program in the plain-text LP format understood by common
// solvers (Minimize / Subject To / Bounds / End sections).
inline std::string lp_to_text(const LpProblem& lp) {
  detail::validate_problem(lp);
  const std::size_t n = lp.c.size();
  auto var_name = [&](std::size_t j) {
    if (j < lp.var_names.size()) return lp.var_names[j];
    return std::string("x") + std::to_string(j + 1);
  };
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto term_row = [&](const std::vector<double>& row) {
    std::string out;
    bool first = true;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double v = row[j];
      if (v == 0.0) continue;
      if (first) {
        out += (v < 0.0) ? "- " : "";
        first = false;
      } else {
        out += (v < 0.0) ? " - " : " + ";
      }
      out += num(std::abs(v)) + " " + var_name(j);
    }
    if (first) out = "0 " + var_name(0);
    return out;
  };
  std::string text = "Minimize\n obj: " + term_row(lp.c) + "\nSubject To\n";
  for (std::size_t i = 0; i < lp.a_eq.size(); ++i) {
    const std::string name =
        (i < lp.eq_names.size()) ? lp.eq_names[i] : "e" + std::to_string(i + 1);
    text += " " + name + ": " + term_row(lp.a_eq[i]) + " = " +
            num(lp.b_eq[i]) + "\n";
  }
  for (std::size_t i = 0; i < lp.a_ge.size(); ++i) {
    const std::string name =
        (i < lp.ge_names.size()) ? lp.ge_names[i] : "g" + std::to_string(i + 1);
    text += " " + name + ": " + term_row(lp.a_ge[i]) + " >= " +
            num(lp.b_ge[i]) + "\n";
  }
  text += "Bounds\n";
  for (std::size_t j = 0; j < n; ++j) text += " 0 <= " + var_name(j) + "\n";
  text += "End\n";
  return text;
}

}  // namespace qed

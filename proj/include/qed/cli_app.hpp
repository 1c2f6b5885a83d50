#pragma once

// Command-line front end: the exponent table, CSV curve emission, P_ue
// evaluation from spectrum files, finite-length LP bounds with certificate
// echo, and the self-verification suites.

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qed/asymptotics.hpp"
#include "qed/io.hpp"
#include "qed/lp_bounds.hpp"
#include "qed/verify.hpp"

namespace qed::cli {

struct TableRow {
  double rq = 0.0;
  BoundPoint existence, amrrw, hamming;
};

inline std::vector<TableRow> table_rows(int q, double p) {
  std::vector<TableRow> rows;
  rows.reserve(11);
  for (int i = 0; i <= 10; ++i) {
    TableRow row;
    row.rq = static_cast<double>(i) / 10.0;
    if (q == 4) {
      row.existence = existence_exponent(row.rq, p);
    } else {
      row.existence = {row.rq, std::nullopt, BranchStatus::not_applicable};
    }
    row.amrrw = amrrw_exponent(row.rq, p, q);
    row.hamming = hamming_exponent(row.rq, p, q);
    rows.push_back(row);
  }
  return rows;
}

// Half-to-even rounding at 4 decimals (the default FE_TONEAREST mode of
// nearbyint), as used for the printed table.
inline std::string format_fixed4(double v) {
  const double r = std::nearbyint(v * 1e4) / 1e4;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", r == 0.0 ? 0.0 : r);
  return std::string(buf);
}

// A cell prints "--" only when the bound has no value at all; a value
// flagged not_applicable (small-rate LP exponent) still prints, with the
// status carried separately.
inline std::string format_cell(const BoundPoint& pt, bool raw) {
  if (!pt.value) return "--";
  if (raw) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", *pt.value);
    return std::string(buf);
  }
  return format_fixed4(*pt.value);
}

inline std::string render_table(const std::vector<TableRow>& rows, bool raw) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%5s  %12s  %12s  %12s\n", "R_Q",
                "existence", "amrrw", "hamming");
  out << line;
  for (const TableRow& row : rows) {
    std::snprintf(line, sizeof(line), "%5.1f  %12s  %12s  %12s\n", row.rq,
                  format_cell(row.existence, raw).c_str(),
                  format_cell(row.amrrw, raw).c_str(),
                  format_cell(row.hamming, raw).c_str());
    out << line;
  }
  return out.str();
}

// Parses "a:b:step" into an inclusive grid (the endpoint is kept when it
// lands within 1e-9 of a step multiple).
inline std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0, step = 0.0;
  char tail = '\0';
  const int got =
      std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail);
  if (got != 3) throw ParameterError("grid spec must be a:b:step");
  if (!(step > 0.0)) throw ParameterError("grid step must be positive");
  if (b < a) throw ParameterError("grid upper end below lower end");
  const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (long i = 0; i < count; ++i) grid.push_back(a + i * step);
  return grid;
}

namespace detail {

inline int cmd_table(int q, double p, bool raw) {
  std::cout << render_table(table_rows(q, p), raw);
  return 0;
}

inline int cmd_curves(int q, double p, const std::string& grid_spec,
                      const std::string& out_path) {
  const std::vector<double> grid = parse_grid(grid_spec);
  for (double rq : grid)
    if (rq < -1e-12 || rq > 1.0 + 1e-12)
      throw ParameterError("curves: grid must stay inside [0, 1]");
  const CurveSweep sweep = curve_sweep(grid, p, q);
  if (out_path.empty()) {
    write_curves_csv(sweep, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file: " + out_path);
    write_curves_csv(sweep, out);
  }
  return 0;
}

inline int cmd_pue(const std::string& in_path, double p) {
  const WeightEnumFile rec = read_weight_enum(in_path);
  const WeightEnum b = to_weight_enum(rec);
  WeightEnum bperp;
  if (rec.bperp) {
    bperp.q = rec.q;
    bperp.n = static_cast<int>(rec.n);
    bperp.B = *rec.bperp;
  } else if (rec.size_c) {
    bperp = macwilliams(b, *rec.size_c);
  } else {
    throw ParameterError(
        "spectrum file must provide Bperp or sizeC to derive it");
  }
  const PueResult result = pue_eval(b, bperp, p);
  if (!result.spectra_consistent)
    std::cerr << "warning: Bperp >= B fails at some weight; the value below "
                 "uses the spectra as given\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "P_ue = %.12g\n", result.value);
  std::cout << buf;
  return 0;
}

inline int cmd_lp(long n, int q, double rq, double p,
                  const std::string& export_path) {
  if (n < 1 || n > 50) throw ParameterError("lp: n must lie in [1, 50]");
  const LpBoundReport report = lp_bound_report(n, q, rq, p);
  if (!export_path.empty()) {
    std::ofstream out(export_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open export file: " + export_path);
    out << lp_to_text(build_primal(n, q, report.size_cperp, p));
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "n = %ld, q = %d, R_Q = %g, p = %g\n", n, q,
                rq, p);
  std::cout << buf;
  std::snprintf(buf, sizeof(buf), "|C_perp| = %.12g\n", report.size_cperp);
  std::cout << buf;
  std::snprintf(buf, sizeof(buf),
                "LP status: optimal, iterations = %ld, certified = %s\n",
                report.solution.iterations,
                report.solution.certified ? "yes" : "no");
  std::cout << buf;
  std::snprintf(buf, sizeof(buf), "P_ue lower bound = %.12g\n", report.bound);
  std::cout << buf;
  auto print_coeffs = [&](const char* label, const KrawPoly& poly) {
    std::cout << label;
    for (double c : poly.coeffs) {
      std::snprintf(buf, sizeof(buf), " %.12g", c == 0.0 ? 0.0 : c);
      std::cout << buf;
    }
    std::cout << '\n';
  };
  print_coeffs("certificate z:", report.z);
  print_coeffs("certificate y:", report.y);
  if (report.recheck.feasible) {
    std::snprintf(buf, sizeof(buf),
                  "certificate recheck: feasible, bound = %.12g\n",
                  report.recheck.bound);
    std::cout << buf;
  } else {
    std::snprintf(buf, sizeof(buf),
                  "certificate recheck: INFEASIBLE at j = %ld (%s)\n",
                  report.recheck.witness, report.recheck.reason.c_str());
    std::cout << buf;
    return 1;
  }
  return 0;
}

inline int cmd_verify(const std::string& level) {
  const bool full = (level == "full");
  const std::vector<VerifyResult> results = run_verify(full);
  bool all_passed = true;
  for (const VerifyResult& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " — " << r.detail;
    std::cout << '\n';
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "verify: all suites passed\n"
                           : "verify: FAILURES present\n");
  return all_passed ? 0 : 1;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{
      "bounds on the probability of undetected error for quantum codes"};
  app.require_subcommand(1);

  int q = 4;
  double p = 0.1;
  bool raw = false;
  std::string grid_spec = "0:1:0.01";
  std::string in_path, out_path, export_path;
  long n = 8;
  double rq = 0.0;
  std::string level = "fast";

  CLI::App* table =
      app.add_subcommand("table", "print the three-exponent rate table");
  table->add_option("--q", q, "alphabet size")->check(CLI::Range(2, 64));
  table->add_option("--p", p, "channel error parameter");
  table->add_flag("--raw", raw, "print full-precision values");

  CLI::App* curves =
      app.add_subcommand("curves", "emit exponent curves as CSV");
  curves->add_option("--q", q, "alphabet size")->check(CLI::Range(2, 64));
  curves->add_option("--p", p, "channel error parameter");
  curves->add_option("--grid", grid_spec, "rate grid as a:b:step");
  curves->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* pue = app.add_subcommand(
      "pue", "evaluate P_ue from a JSON weight-enumerator file");
  pue->add_option("--in", in_path, "input spectrum file")->required();
  pue->add_option("--p", p, "channel error parameter");

  CLI::App* lp = app.add_subcommand(
      "lp", "finite-length LP lower bound with dual certificate");
  lp->add_option("--n", n, "code length (<= 50)")->required();
  lp->add_option("--q", q, "alphabet size")->check(CLI::Range(2, 64));
  lp->add_option("--rq", rq, "quantum rate in [0, 1]");
  lp->add_option("--p", p, "channel error parameter");
  lp->add_option("--export", export_path, "write the LP in text format");

  CLI::App* verify =
      app.add_subcommand("verify", "run the self-verification suites");
  verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(table)) return detail::cmd_table(q, p, raw);
    if (app.got_subcommand(curves))
      return detail::cmd_curves(q, p, grid_spec, out_path);
    if (app.got_subcommand(pue)) return detail::cmd_pue(in_path, p);
    if (app.got_subcommand(lp)) return detail::cmd_lp(n, q, rq, p, export_path);
    if (app.got_subcommand(verify)) return detail::cmd_verify(level);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qed::cli

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qed/cli_app.hpp"
#include "qed/io.hpp"
#include "qed/verify.hpp"

namespace {

using qed::Rat;
using qed::WeightEnumFile;

namespace fs = std::filesystem;

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  return path.string();
}

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"qedb"};
  argv.insert(argv.end(), args.begin(), args.end());
  return qed::cli::run(static_cast<int>(argv.size()), argv.data());
}

TEST(WeightEnumFile, ParsesAllFieldForms) {
  const std::string text = R"({
    "q": 4, "n": 2,
    "B": [1, "0", "1.5"],
    "Bperp": ["1", 6, 9],
    "sizeC": "2.5"
  })";
  const WeightEnumFile rec = qed::parse_weight_enum(text);
  EXPECT_EQ(rec.q, 4);
  EXPECT_EQ(rec.n, 2);
  ASSERT_EQ(rec.b.size(), 3u);
  EXPECT_EQ(rec.b[2], Rat(3, 2));
  ASSERT_TRUE(rec.bperp.has_value());
  EXPECT_EQ((*rec.bperp)[1], Rat(6));
  ASSERT_TRUE(rec.size_c.has_value());
  EXPECT_EQ(*rec.size_c, Rat(5, 2));
}

TEST(WeightEnumFile, RoundTripsExactly) {
  WeightEnumFile rec;
  rec.q = 4;
  rec.n = 2;
  rec.b = {Rat(1), Rat(0), Rat(3, 7)};
  rec.bperp = std::vector<Rat>{Rat(1), Rat(6), Rat(9)};
  rec.size_c = Rat(4);
  const std::string text = qed::to_json_text(rec);
  const WeightEnumFile back = qed::parse_weight_enum(text);
  EXPECT_EQ(back.q, rec.q);
  EXPECT_EQ(back.n, rec.n);
  EXPECT_EQ(back.b, rec.b);
  EXPECT_EQ(back.bperp, rec.bperp);
  EXPECT_EQ(back.size_c, rec.size_c);
  // Serialization is stable.
  EXPECT_EQ(qed::to_json_text(back), text);
}

TEST(WeightEnumFile, DiagnosesMalformedInput) {
  EXPECT_THROW(qed::parse_weight_enum("{"), qed::ParameterError);
  EXPECT_THROW(qed::parse_weight_enum("[1,2]"), qed::ParameterError);
  EXPECT_THROW(qed::parse_weight_enum(R"({"n":2,"B":[1,0,0]})"),
               qed::ParameterError);  // q missing
  EXPECT_THROW(qed::parse_weight_enum(R"({"q":4,"B":[1,0,0]})"),
               qed::ParameterError);  // n missing
  EXPECT_THROW(qed::parse_weight_enum(R"({"q":4,"n":2,"B":[1,0]})"),
               qed::ParameterError);  // wrong length
  EXPECT_THROW(qed::parse_weight_enum(R"({"q":4,"n":2,"B":[1,0,-1]})"),
               qed::ParameterError);  // negative entry
  EXPECT_THROW(qed::parse_weight_enum(R"({"q":4,"n":2,"B":[1,0,{}]})"),
               qed::ParameterError);  // non-numeric entry
  EXPECT_THROW(qed::parse_weight_enum(R"({"q":1,"n":2,"B":[1,0,0]})"),
               qed::ParameterError);  // alphabet too small
  EXPECT_THROW(qed::read_weight_enum("/nonexistent/path.json"),
               qed::ParameterError);
}

TEST(WeightEnumFile, ConvertsToSpectrum) {
  WeightEnumFile rec;
  rec.q = 4;
  rec.n = 1;
  rec.b = {Rat(1), Rat(3)};
  const auto we = qed::to_weight_enum(rec);
  EXPECT_EQ(we.q, 4);
  EXPECT_EQ(we.n, 1);
  EXPECT_EQ(we.B, rec.b);
  EXPECT_EQ(we.total(), Rat(4));
}

TEST(CurvesCsv, HeaderCellsAndDeterminism) {
  std::vector<double> grid;
  for (int i = 0; i <= 4; ++i) grid.push_back(i / 4.0);
  const auto sweep = qed::curve_sweep(grid, 0.1, 4);
  std::ostringstream out;
  qed::write_curves_csv(sweep, out);
  const std::string text = out.str();

  std::istringstream lines(text);
  std::string line;
  ASSERT_TRUE(std::getline(lines, line));
  EXPECT_EQ(line, "R_Q,existence,amrrw,hamming,status");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), grid.size());
  // At rate 0 the Hamming column is empty but the others carry values.
  {
    std::istringstream cells(rows[0]);
    std::string cell;
    std::vector<std::string> fields;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    ASSERT_EQ(fields.size(), 5u);
    EXPECT_EQ(fields[0], "0");
    EXPECT_FALSE(fields[1].empty());
    EXPECT_FALSE(fields[2].empty());
    EXPECT_TRUE(fields[3].empty());
    EXPECT_EQ(fields[4], "curved;na;na");
  }
  // The flat tail row reads 0.125 across all three bounds.
  {
    std::istringstream cells(rows[3]);
    std::string cell;
    std::vector<std::string> fields;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    ASSERT_EQ(fields.size(), 5u);
    EXPECT_EQ(fields[0], "0.75");
    EXPECT_EQ(fields[1], "0.125");
    EXPECT_EQ(fields[2], "0.125");
    EXPECT_EQ(fields[3], "0.125");
    EXPECT_EQ(fields[4], "flat;flat;flat");
  }
  // Emission is deterministic.
  std::ostringstream again;
  qed::write_curves_csv(qed::curve_sweep(grid, 0.1, 4), again);
  EXPECT_EQ(again.str(), text);
}

TEST(GridSpec, ParsesAndValidates) {
  const auto g1 = qed::cli::parse_grid("0:1:0.25");
  ASSERT_EQ(g1.size(), 5u);
  EXPECT_DOUBLE_EQ(g1.front(), 0.0);
  EXPECT_DOUBLE_EQ(g1.back(), 1.0);
  const auto g2 = qed::cli::parse_grid("0:1:0.3");
  ASSERT_EQ(g2.size(), 4u);
  EXPECT_NEAR(g2.back(), 0.9, 1e-12);
  const auto g3 = qed::cli::parse_grid("0.5:0.5:0.1");
  ASSERT_EQ(g3.size(), 1u);
  EXPECT_DOUBLE_EQ(g3[0], 0.5);
  EXPECT_THROW(qed::cli::parse_grid("abc"), qed::ParameterError);
  EXPECT_THROW(qed::cli::parse_grid("0:1"), qed::ParameterError);
  EXPECT_THROW(qed::cli::parse_grid("0:1:0"), qed::ParameterError);
  EXPECT_THROW(qed::cli::parse_grid("1:0:0.1"), qed::ParameterError);
  EXPECT_THROW(qed::cli::parse_grid("0:1:0.1x"), qed::ParameterError);
}

TEST(TableFormat, FixedPointCells) {
  EXPECT_EQ(qed::cli::format_fixed4(0.62696295), "0.6270");
  EXPECT_EQ(qed::cli::format_fixed4(0.05), "0.0500");
  EXPECT_EQ(qed::cli::format_fixed4(0.0), "0.0000");
  // Values rounding to zero never print a negative sign.
  EXPECT_EQ(qed::cli::format_fixed4(-1e-9), "0.0000");

  qed::BoundPoint absent{0.0, std::nullopt, qed::BranchStatus::not_applicable};
  EXPECT_EQ(qed::cli::format_cell(absent, false), "--");
  qed::BoundPoint flagged{0.0, 0.6269, qed::BranchStatus::not_applicable};
  EXPECT_EQ(qed::cli::format_cell(flagged, false), "0.6269");
  qed::BoundPoint flat{0.7, 0.15, qed::BranchStatus::flat};
  EXPECT_EQ(qed::cli::format_cell(flat, true), "0.14999999999999999");
}

TEST(TableFormat, RenderedTableShape) {
  const auto rows = qed::cli::table_rows(4, 0.1);
  ASSERT_EQ(rows.size(), 11u);
  const std::string text = qed::cli::render_table(rows, false);
  std::istringstream lines(text);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 12);  // header + 11 rate rows
  EXPECT_NE(text.find("R_Q"), std::string::npos);
  EXPECT_NE(text.find("existence"), std::string::npos);
  EXPECT_NE(text.find("0.6270"), std::string::npos);
  EXPECT_NE(text.find("--"), std::string::npos);
}

TEST(SelfVerification, FastSuitesAllPass) {
  for (const auto& res : qed::run_verify(false))
    EXPECT_TRUE(res.passed) << res.name << ": " << res.detail;
}

TEST(Cli, TablePrintsReferenceRow) {
  testing::internal::CaptureStdout();
  const int rc = run_cli({"table"});
  const std::string out = testing::internal::GetCapturedStdout();
  EXPECT_EQ(rc, 0);
  EXPECT_NE(out.find("0.6270"), std::string::npos);
  EXPECT_NE(out.find("--"), std::string::npos);
}

TEST(Cli, PueEvaluatesSpectrumFile) {
  const std::string direct = write_temp(
      "qed_pue_direct.json",
      R"({"q":4,"n":2,"B":["1","0","0"],"Bperp":["1","6","9"]})");
  testing::internal::CaptureStdout();
  int rc = run_cli({"pue", "--in", direct.c_str(), "--p", "0.3"});
  std::string out = testing::internal::GetCapturedStdout();
  EXPECT_EQ(rc, 0);
  EXPECT_NE(out.find("P_ue = 0.51"), std::string::npos);

  // The dual spectrum may instead be derived from the code size.
  const std::string derived = write_temp(
      "qed_pue_derived.json", R"({"q":4,"n":2,"B":["1","0","0"],"sizeC":1})");
  testing::internal::CaptureStdout();
  rc = run_cli({"pue", "--in", derived.c_str(), "--p", "0.3"});
  out = testing::internal::GetCapturedStdout();
  EXPECT_EQ(rc, 0);
  EXPECT_NE(out.find("P_ue = 0.51"), std::string::npos);

  // Neither Bperp nor sizeC: the record is unusable.
  const std::string bare =
      write_temp("qed_pue_bare.json", R"({"q":4,"n":2,"B":["1","0","0"]})");
  EXPECT_EQ(run_cli({"pue", "--in", bare.c_str()}), 1);
  EXPECT_EQ(run_cli({"pue", "--in", "/nonexistent.json"}), 1);
}

TEST(Cli, LpReportsCertifiedBound) {
  const fs::path export_path = fs::temp_directory_path() / "qed_lp_export.txt";
  testing::internal::CaptureStdout();
  const int rc = run_cli({"lp", "--n", "4", "--q", "4", "--rq", "0.5", "--p",
                          "0.1", "--export", export_path.string().c_str()});
  const std::string out = testing::internal::GetCapturedStdout();
  EXPECT_EQ(rc, 0);
  EXPECT_NE(out.find("bound"), std::string::npos);
  EXPECT_NE(out.find("certificate"), std::string::npos);
  std::ifstream in(export_path);
  ASSERT_TRUE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  EXPECT_NE(buf.str().find("Minimize"), std::string::npos);
  EXPECT_NE(buf.str().find("total:"), std::string::npos);
  // Out-of-range length is rejected.
  EXPECT_EQ(run_cli({"lp", "--n", "99"}), 1);
}

TEST(Cli, CurvesWritesCsvFile) {
  const fs::path out_path = fs::temp_directory_path() / "qed_curves.csv";
  const std::string out_str = out_path.string();
  EXPECT_EQ(run_cli({"curves", "--grid", "0:1:0.5", "--out",
                     out_str.c_str()}),
            0);
  std::ifstream in(out_path);
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "R_Q,existence,amrrw,hamming,status");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
  // Bad arguments surface as errors, not crashes.
  EXPECT_EQ(run_cli({"curves", "--grid", "nope"}), 1);
  EXPECT_EQ(run_cli({"curves", "--grid", "0:2:0.5"}), 1);  // rate above 1
}

TEST(Cli, RejectsMissingSubcommand) {
  EXPECT_NE(run_cli({}), 0);
  EXPECT_NE(run_cli({"nonsense"}), 0);
  EXPECT_NE(run_cli({"pue"}), 0);  // --in is required
}

}  // namespace

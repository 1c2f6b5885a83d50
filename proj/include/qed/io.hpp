#pragma once

// File formats: the JSON weight-enumerator record consumed by the CLI
// (exact decimal/integer strings so spectra survive a round trip), and the
// CSV emitter for exponent curves.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qed/asymptotics.hpp"
#include "qed/code.hpp"
#include "qed/exact.hpp"

namespace qed {

// A stored spectrum record: B is mandatory; Bperp may be given directly or
// derived later from sizeC via the MacWilliams transform.
struct WeightEnumFile {
  int q = 4;
  long n = 0;
  std::vector<Rat> b;
  std::optional<std::vector<Rat>> bperp;
  std::optional<Rat> size_c;
};

namespace detail {

inline Rat rat_of_json(const nlohmann::json& value, const std::string& where) {
  try {
    if (value.is_string()) return rat_from_string(value.get<std::string>());
    if (value.is_number_integer())
      return Rat(Int(std::to_string(value.get<long long>())));
    if (value.is_number_unsigned())
      return Rat(Int(std::to_string(value.get<unsigned long long>())));
    if (value.is_number_float()) return rat_of_double(value.get<double>());
  } catch (const std::exception& e) {
    throw ParameterError("weight-enumerator file: bad value at " + where +
                         ": " + e.what());
  }
  throw ParameterError("weight-enumerator file: " + where +
                       " must be a number or a decimal string");
}

inline std::vector<Rat> rat_array(const nlohmann::json& arr, long n,
                                  const std::string& name) {
  if (!arr.is_array())
    throw ParameterError("weight-enumerator file: " + name +
                         " must be an array");
  if (static_cast<long>(arr.size()) != n + 1)
    throw ParameterError("weight-enumerator file: " + name + " must hold n+1=" +
                         std::to_string(n + 1) + " entries, found " +
                         std::to_string(arr.size()));
  std::vector<Rat> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(rat_of_json(arr[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// Parses the JSON record {q, n, B[], Bperp[]?, sizeC?}; errors carry the
// offending field or the parser's byte position.
inline WeightEnumFile parse_weight_enum(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("weight-enumerator file: ") + e.what());
  }
  if (!doc.is_object())
    throw ParameterError("weight-enumerator file: top level must be an object");
  WeightEnumFile rec;
  if (!doc.contains("q") || !doc["q"].is_number_integer())
    throw ParameterError("weight-enumerator file: integer field 'q' required");
  rec.q = doc["q"].get<int>();
  if (rec.q < 2) throw ParameterError("weight-enumerator file: q must be >= 2");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParameterError("weight-enumerator file: integer field 'n' required");
  rec.n = doc["n"].get<long>();
  if (rec.n < 0) throw ParameterError("weight-enumerator file: n must be >= 0");
  if (!doc.contains("B"))
    throw ParameterError("weight-enumerator file: field 'B' required");
  rec.b = detail::rat_array(doc["B"], rec.n, "B");
  if (doc.contains("Bperp"))
    rec.bperp = detail::rat_array(doc["Bperp"], rec.n, "Bperp");
  if (doc.contains("sizeC"))
    rec.size_c = detail::rat_of_json(doc["sizeC"], "sizeC");
  for (std::size_t i = 0; i < rec.b.size(); ++i)
    if (rec.b[i] < 0)
      throw ParameterError("weight-enumerator file: B[" + std::to_string(i) +
                           "] is negative");
  return rec;
}

inline WeightEnumFile read_weight_enum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weight_enum(buf.str());
}

// Serializes with exact strings so parse(to_json_text(x)) == x.
inline std::string to_json_text(const WeightEnumFile& rec) {
  nlohmann::json doc;
  doc["q"] = rec.q;
  doc["n"] = rec.n;
  nlohmann::json barr = nlohmann::json::array();
  for (const Rat& v : rec.b) barr.push_back(rat_to_string(v));
  doc["B"] = barr;
  if (rec.bperp) {
    nlohmann::json parr = nlohmann::json::array();
    for (const Rat& v : *rec.bperp) parr.push_back(rat_to_string(v));
    doc["Bperp"] = parr;
  }
  if (rec.size_c) doc["sizeC"] = rat_to_string(*rec.size_c);
  return doc.dump(2) + "\n";
}

inline WeightEnum to_weight_enum(const WeightEnumFile& rec) {
  WeightEnum we;
  we.q = rec.q;
  we.n = static_cast<int>(rec.n);
  we.B = rec.b;
  return we;
}

// ---------------------------------------------------------------------------
// CSV output for exponent curves.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace detail

// Header R_Q,existence,amrrw,hamming,status; an empty cell marks a point
// where the bound is not applicable; status joins the three branch tags
// with semicolons in column order.
inline void write_curves_csv(const CurveSweep& sweep, std::ostream& out) {
  out << "R_Q,existence,amrrw,hamming,status\n";
  for (std::size_t i = 0; i < sweep.rq.size(); ++i) {
    out << detail::csv_number(sweep.rq[i]) << ',';
    const BoundPoint* points[3] = {&sweep.existence[i], &sweep.amrrw[i],
                                   &sweep.hamming[i]};
    std::string status;
    for (int c = 0; c < 3; ++c) {
      const BoundPoint& pt = *points[c];
      if (pt.value.has_value()) out << detail::csv_number(*pt.value);
      out << ',';
      status += to_string(pt.status);
      if (c < 2) status += ';';
    }
    out << status << '\n';
  }
}

}  // namespace qed

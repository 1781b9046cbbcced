#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace onofri {

/// Provenance of a reference value. Every reference carries a label; rows
/// with no reference are informational and always pass.
enum class RefSource { closed_form, fixture, analytic_limit, none };

inline std::string to_string(RefSource s) {
  switch (s) {
    case RefSource::closed_form: return "closed-form";
    case RefSource::fixture: return "fixture";
    case RefSource::analytic_limit: return "analytic-limit";
    default: return "none";
  }
}

/// One verification row: named check, computed value, reference, tolerance,
/// verdict and quadrature bookkeeping.
struct CheckRow {
  std::string check_id;
  double value = 0.0;
  std::optional<double> reference;
  RefSource ref_source = RefSource::none;
  double tol = 0.0;
  bool pass = true;
  double quad_error = 0.0;
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckRow> rows;

  void add(CheckRow row) { rows.push_back(std::move(row)); }

  /// Checked row against an absolute tolerance.
  void check_abs(const std::string& id, double value, double reference, RefSource src,
                 double tol, double quad_error = 0.0, double seconds = 0.0) {
    CheckRow r;
    r.check_id = id;
    r.value = value;
    r.reference = reference;
    r.ref_source = src;
    r.tol = tol;
    r.pass = std::isfinite(value) && std::fabs(value - reference) <= tol;
    r.quad_error = quad_error;
    r.seconds = seconds;
    rows.push_back(std::move(r));
  }

  /// Checked row against a relative tolerance.
  void check_rel(const std::string& id, double value, double reference, RefSource src,
                 double rel_tol, double quad_error = 0.0, double seconds = 0.0) {
    check_abs(id, value, reference, src, rel_tol * std::fabs(reference), quad_error, seconds);
  }

  /// Boolean condition row (reference 1 = satisfied).
  void check_flag(const std::string& id, bool ok, double seconds = 0.0) {
    CheckRow r;
    r.check_id = id;
    r.value = ok ? 1.0 : 0.0;
    r.reference = 1.0;
    r.ref_source = RefSource::closed_form;
    r.tol = 0.0;
    r.pass = ok;
    r.seconds = seconds;
    rows.push_back(std::move(r));
  }

  /// Informational row: no reference, never fails.
  void info(const std::string& id, double value, double quad_error = 0.0,
            double seconds = 0.0) {
    CheckRow r;
    r.check_id = id;
    r.value = value;
    r.quad_error = quad_error;
    r.seconds = seconds;
    rows.push_back(std::move(r));
  }

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// JSON serialization: fixed key order and nlohmann's shortest-round-trip
/// number formatting make the output byte-stable for identical inputs.
inline std::string to_json(const Report& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["check_id"] = r.check_id;
    row["value"] = r.value;
    if (r.reference)
      row["reference"] = *r.reference;
    else
      row["reference"] = nullptr;
    row["ref_source"] = to_string(r.ref_source);
    row["tol"] = r.tol;
    row["pass"] = r.pass;
    row["quad_error"] = r.quad_error;
    row["seconds"] = r.seconds;
    arr.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["checks"] = std::move(arr);
  doc["all_pass"] = report.all_pass();
  return doc.dump(2) + "\n";
}

inline std::string to_csv(const Report& report) {
  std::string out = "check_id,value,reference,ref_source,tol,pass,quad_error,seconds\n";
  char buf[512];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,", r.check_id.c_str(), r.value);
    out += buf;
    if (r.reference) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.reference);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%s,%.17g,%d,%.17g,%.17g\n",
                  to_string(r.ref_source).c_str(), r.tol, r.pass ? 1 : 0, r.quad_error,
                  r.seconds);
    out += buf;
  }
  return out;
}

/// Fixtures: versioned key = value lines, '#' comments.
inline std::map<std::string, double> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open fixtures file: " + path);
  std::map<std::string, double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.empty()) continue;
    out[key] = std::stod(line.substr(eq + 1));
  }
  return out;
}

}  // namespace onofri

#include "fracslice/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fracslice/errors.hpp"

namespace fracslice {

namespace {

// JSON is emitted by hand so every number keeps 17 significant digits;
// nlohmann is only used for string escaping.
std::string jstr(const std::string& s) { return nlohmann::json(s).dump(); }

std::string jnum(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string jbool(bool b) { return b ? "true" : "false"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_quaternion(const Quaternion& q) {
  return "[" + format_double(q.w) + ", " + format_double(q.x1) + ", " + format_double(q.x2) + ", " +
         format_double(q.x3) + "]";
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  std::string o = "[";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& rep = reports[r];
    o += r ? ",\n  {" : "\n  {";
    o += "\n    \"identity\": " + jstr(rep.identity_name);
    o += ",\n    \"variant\": " + jstr(rep.variant);
    o += ",\n    \"backend\": " + jstr(rep.backend);
    o += ",\n    \"passed\": " + jbool(rep.passed);
    o += ",\n    \"tolerance\": " + jnum(rep.tolerance);
    o += ",\n    \"max_abs_residual\": " + jnum(rep.max_abs_residual);
    o += ",\n    \"max_rel_residual\": " + jnum(rep.max_rel_residual);
    o += ",\n    \"checks\": [";
    for (std::size_t k = 0; k < rep.checks.size(); ++k) {
      const auto& c = rep.checks[k];
      o += k ? ",\n      {" : "\n      {";
      o += "\"name\": " + jstr(c.name) + ", \"required\": " + jbool(c.required) + ", \"passed\": " +
           jbool(c.passed) + ", \"max_abs\": " + jnum(c.max_abs) + ", \"max_rel\": " + jnum(c.max_rel) +
           ", \"tolerance\": " + jnum(c.tolerance) + "}";
    }
    o += rep.checks.empty() ? "]" : "\n    ]";
    o += ",\n    \"notes\": [";
    for (std::size_t k = 0; k < rep.notes.size(); ++k) o += (k ? ", " : "") + jstr(rep.notes[k]);
    o += "]";
    o += ",\n    \"points\": [";
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
      const auto& p = rep.points[k];
      const auto& u = p.point.unit;
      o += k ? ",\n      {" : "\n      {";
      o += "\"unit\": [" + jnum(u.u1()) + ", " + jnum(u.u2()) + ", " + jnum(u.u3()) + "], \"x\": " +
           jnum(p.point.x) + ", \"y\": " + jnum(p.point.y) + ", \"residual\": " + jnum(p.residual);
      if (!p.error.empty()) o += ", \"error\": " + jstr(p.error);
      o += "}";
    }
    o += rep.points.empty() ? "]" : "\n    ]";
    o += "\n  }";
  }
  o += reports.empty() ? "]\n" : "\n]\n";
  return o;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string o = "identity,variant,u1,u2,u3,x,y,residual,error\n";
  for (const auto& rep : reports)
    for (const auto& p : rep.points) {
      const auto& u = p.point.unit;
      o += csv_field(rep.identity_name) + "," + csv_field(rep.variant) + "," + format_double(u.u1()) + "," +
           format_double(u.u2()) + "," + format_double(u.u3()) + "," + format_double(p.point.x) + "," +
           format_double(p.point.y) + "," + format_double(p.residual) + "," + csv_field(p.error) + "\n";
    }
  return o;
}

std::string summary_table(const std::vector<VerificationReport>& reports) {
  char line[256];
  std::string o;
  std::snprintf(line, sizeof line, "%-20s %-10s %-9s %12s %12s %8s  %s\n", "identity", "variant", "backend",
                "max_rel", "tolerance", "points", "result");
  o += line;
  int passed = 0;
  for (const auto& r : reports) {
    passed += r.passed;
    std::snprintf(line, sizeof line, "%-20s %-10s %-9s %12.3e %12.3e %8zu  %s\n", r.identity_name.c_str(),
                  r.variant.c_str(), r.backend.c_str(), r.max_rel_residual, r.tolerance, r.points.size(),
                  r.passed ? "PASS" : "FAIL");
    o += line;
  }
  std::snprintf(line, sizeof line, "%d/%zu passed\n", passed, reports.size());
  return o + line;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot rename onto '" + path + "'");
  }
}

}  // namespace fracslice

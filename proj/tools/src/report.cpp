#include "mfgl_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <system_error>

#include <unistd.h>

namespace mfgl::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_double(double x) {
  std::string s = format_double(x);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

ojson num(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  return x;
}

double get_num(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    throw InvalidArgument("report: bad number '" + s + "'");
  }
  if (!j.is_number()) throw InvalidArgument("report: expected a number");
  return j.get<double>();
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

void emit(const ojson& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ojson(key).dump() + ": ";
      emit(value, out, depth + 1);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        emit(j[i], out, depth + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      emit(j[i], out, depth + 1);
    }
    out += "\n" + close_pad + "]";
  } else if (j.is_number_float()) {
    out += json_double(j.get<double>());
  } else {
    out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw InvalidArgument("unsupported format '" + s + "'");
}

std::string to_string(Format f) { return f == Format::json ? "json" : "csv"; }

bool equivalent(const Report& a, const Report& b) {
  if (a.config != b.config || a.summary != b.summary || a.timings != b.timings) return false;
  if (a.params != b.params) return false;
  if (a.solutions.size() != b.solutions.size() || a.audits.size() != b.audits.size()) return false;
  for (std::size_t k = 0; k < a.solutions.size(); ++k) {
    const FixedPointSolution& x = a.solutions[k];
    const FixedPointSolution& y = b.solutions[k];
    if (x.point != y.point || !same(x.lambda, y.lambda) || !same(x.residual_l1, y.residual_l1) ||
        x.iterations != y.iterations || x.converged != y.converged || x.start_id != y.start_id) {
      return false;
    }
  }
  for (std::size_t k = 0; k < a.audits.size(); ++k) {
    const AuditRow& x = a.audits[k];
    const AuditRow& y = b.audits[k];
    if (x.check_id != y.check_id || x.instance != y.instance || !same(x.measured, y.measured) ||
        !same(x.bound, y.bound) || !same(x.ratio, y.ratio) || x.pass != y.pass ||
        x.applicable != y.applicable || x.error != y.error) {
      return false;
    }
  }
  return true;
}

nlohmann::ordered_json report_to_json(const Report& r) {
  ojson j;
  j["config"] = r.config;
  if (r.params) {
    const ComplexityParams& p = *r.params;
    j["params"] = {{"D", num(p.D)},
                   {"D_std_error", num(p.D_std_error)},
                   {"L1", num(p.L1)},
                   {"L2", num(p.L2)},
                   {"provenance",
                    {{"D", to_string(p.D_provenance)},
                     {"L1", to_string(p.L1_provenance)},
                     {"L2", to_string(p.L2_provenance)}}}};
  } else {
    j["params"] = nullptr;
  }
  ojson sols = ojson::array();
  for (const FixedPointSolution& s : r.solutions) {
    ojson point = ojson::array();
    for (double x : s.point.coords()) point.push_back(num(x));
    sols.push_back({{"start_id", s.start_id},
                    {"lambda", num(s.lambda)},
                    {"residual_l1", num(s.residual_l1)},
                    {"iterations", s.iterations},
                    {"converged", s.converged},
                    {"point", std::move(point)}});
  }
  j["solutions"] = std::move(sols);
  ojson audits = ojson::array();
  for (const AuditRow& a : r.audits) {
    audits.push_back({{"check_id", a.check_id},
                      {"instance", a.instance},
                      {"measured", num(a.measured)},
                      {"bound", num(a.bound)},
                      {"ratio", num(a.ratio)},
                      {"pass", a.pass},
                      {"applicable", a.applicable},
                      {"error", a.error}});
  }
  j["audits"] = std::move(audits);
  j["summary"] = r.summary;
  j["timings"] = r.timings;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  try {
    Report r;
    r.config = j.at("config");
    if (!j.at("params").is_null()) {
      const auto& p = j.at("params");
      ComplexityParams c;
      c.D = get_num(p.at("D"));
      c.D_std_error = get_num(p.at("D_std_error"));
      c.L1 = get_num(p.at("L1"));
      c.L2 = get_num(p.at("L2"));
      c.D_provenance = provenance_from_string(p.at("provenance").at("D").get<std::string>());
      c.L1_provenance = provenance_from_string(p.at("provenance").at("L1").get<std::string>());
      c.L2_provenance = provenance_from_string(p.at("provenance").at("L2").get<std::string>());
      r.params = c;
    }
    for (const auto& s : j.at("solutions")) {
      FixedPointSolution sol;
      sol.start_id = s.at("start_id").get<std::string>();
      sol.lambda = get_num(s.at("lambda"));
      sol.residual_l1 = get_num(s.at("residual_l1"));
      sol.iterations = s.at("iterations").get<int>();
      sol.converged = s.at("converged").get<bool>();
      std::vector<double> point;
      for (const auto& x : s.at("point")) point.push_back(get_num(x));
      sol.point = CubePoint(std::move(point));
      r.solutions.push_back(std::move(sol));
    }
    for (const auto& a : j.at("audits")) {
      AuditRow row;
      row.check_id = a.at("check_id").get<std::string>();
      row.instance = a.at("instance").get<std::string>();
      row.measured = get_num(a.at("measured"));
      row.bound = get_num(a.at("bound"));
      row.ratio = get_num(a.at("ratio"));
      row.pass = a.at("pass").get<bool>();
      row.applicable = a.at("applicable").get<bool>();
      row.error = a.at("error").get<std::string>();
      r.audits.push_back(std::move(row));
    }
    r.summary = j.at("summary");
    r.timings = j.at("timings");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("report: ") + e.what());
  }
}

std::string serialize_report(const Report& r, Format format) {
  std::string out;
  if (format == Format::json) {
    emit(report_to_json(r), out, 0);
    out += "\n";
    return out;
  }
  out = "check_id,instance,measured,bound,ratio,pass,applicable,error\n";
  for (const AuditRow& a : r.audits) {
    out += csv_field(a.check_id) + "," + csv_field(a.instance) + "," + format_double(a.measured) + "," +
           format_double(a.bound) + "," + format_double(a.ratio) + "," + (a.pass ? "true" : "false") + "," +
           (a.applicable ? "true" : "false") + "," + csv_field(a.error) + "\n";
  }
  return out;
}

Report parse_report(std::string_view json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("report: ") + e.what());
  }
  return report_from_json(j);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InvalidArgument("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidArgument("cannot rename onto " + path.string());
  }
}

}  // namespace mfgl::cli

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfgl/hamiltonians.hpp"
#include "mfgl/meanfield.hpp"
#include "mfgl/verify.hpp"

namespace mfgl::cli {

enum class Format { json, csv };

Format format_from_string(const std::string& s);
std::string to_string(Format f);

struct Report {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<ComplexityParams> params;
  std::vector<FixedPointSolution> solutions;
  std::vector<AuditRow> audits;
  /// Command-specific scalars such as Curie-Weiss roots or the lambda window.
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
};

/// Field-wise equality with NaN equal to NaN.
bool equivalent(const Report& a, const Report& b);

nlohmann::ordered_json report_to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);

/// JSON document, or the audit rows as CSV with a header line.
std::string serialize_report(const Report& r, Format format);
Report parse_report(std::string_view json_text);

std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Writes to a sibling temporary file, then renames over path.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace mfgl::cli

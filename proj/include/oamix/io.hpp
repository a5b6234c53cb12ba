#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>
#include "oamix/core.hpp"
#include "oamix/evaluate.hpp"
#include "oamix/fit.hpp"

namespace oamix::io {

/// Up to six significant digits with trailing zeros trimmed.
std::string format_number(double v);

/// Design CSV: run, x1..xm | a1..am, z12..z(m-1)m, block, and A for amount
/// designs (optional for proportion designs that carry totals).
std::string write_design_csv(const BlockedDesign& design);

/// Parses and validates a design CSV. Throws EmptyDesign, SchemaError
/// (naming the offending column) or ValidationError. With `validate` false
/// only the schema is checked.
BlockedDesign parse_design_csv(std::string_view text, bool validate = true);

BlockedDesign read_design_file(const std::filesystem::path& path, bool validate = true);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Response vector from a CSV with a "y" column, or a single unlabeled column.
std::vector<double> parse_response_csv(std::string_view text);

std::string fds_csv(const evaluate::FdsCurve& curve);
std::string fds_svg(const evaluate::FdsCurve& curve);

/// Writes `<base>.csv` and `<base>.svg`. Throws IOError.
void write_fds_outputs(const evaluate::FdsCurve& curve, const std::filesystem::path& base);

nlohmann::json to_json(const evaluate::EvalReport& report);
nlohmann::json to_json(const evaluate::BlockingReport& report);
nlohmann::json to_json(const std::vector<evaluate::PowerRow>& rows);
nlohmann::json to_json(const fit::FitResult& fit);

}  // namespace oamix::io

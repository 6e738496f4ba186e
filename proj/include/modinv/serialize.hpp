#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modinv/adeclassify.hpp"
#include "modinv/catalog.hpp"
#include "modinv/invariantsearch.hpp"
#include "modinv/kacdata.hpp"
#include "modinv/modulardata.hpp"

// JSON forms of the library types. Rationals are "num/den" strings, S entries
// are shortest round-trip decimal strings; see docs/formats.md.
namespace modinv {

using Json = nlohmann::ordered_json;

std::string format_double(double value);

Json to_json(const KacLabel& label);
KacLabel kac_label_from_json(const Json& j);

Json to_json(const MinimalModel& model);

Json to_json(const ModularData& data);
ModularData modular_data_from_json(const Json& j);

Json to_json(const FusionTable& table);

Json to_json(const ModularInvariant& invariant);
ModularInvariant invariant_from_json(const Json& j);

Json to_json(const InvariantReport& report);
Json to_json(const Sl2zReport& report);

Json to_json(const ChiralNetEntry& entry, bool with_matrix);
Json to_json(const Full2DEntry& entry, bool with_matrix);

/// User-supplied coupling matrix: {"level": m, "labels": [{"p":..,"q":..}], "Z": [[..]]}.
/// level and labels are optional.
struct MatrixFile {
  std::optional<int> level;
  std::vector<std::pair<int, int>> labels;
  Eigen::MatrixXd z;
};

/// Throws ParseError; syntax errors carry 1-based line and column.
MatrixFile parse_matrix_file(std::string_view text);
Json to_matrix_file(const ModularInvariant& invariant, const MinimalModel& model);

}  // namespace modinv

#include "modinv/serialize.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

Rational rational_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(std::string("expected rational string '") + key + "'");
  return parse_rational(j.at(key).get<std::string>());
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(std::string("expected integer field '") + key + "'");
  return j.at(key).get<int>();
}

double parse_double(const std::string& text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError("malformed decimal '" + text + "'");
  return value;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

Json to_json(const KacLabel& label) {
  return Json{{"p", label.p}, {"q", label.q}, {"weight", to_string(label.weight)}};
}

KacLabel kac_label_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected Kac label object");
  KacLabel label;
  label.p = int_field(j, "p");
  label.q = int_field(j, "q");
  label.weight = rational_field(j, "weight");
  return label;
}

Json to_json(const MinimalModel& model) {
  Json primaries = Json::array();
  for (const KacLabel& l : model.primaries) primaries.push_back(to_json(l));
  return Json{{"level", model.level}, {"central_charge", to_string(model.central_charge)}, {"primaries", primaries}};
}

Json to_json(const ModularData& data) {
  Json labels = Json::array();
  for (const KacLabel& l : data.labels) labels.push_back(to_json(l));
  Json s = Json::array();
  for (Eigen::Index i = 0; i < data.s.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < data.s.cols(); ++j) row.push_back(format_double(data.s(i, j)));
    s.push_back(row);
  }
  Json t = Json::array();
  for (const Rational& e : data.t_exponents) t.push_back(to_string(e));
  return Json{{"level", data.level},
              {"central_charge", to_string(data.central_charge)},
              {"tolerance", data.tolerance},
              {"labels", labels},
              {"S", s},
              {"T", t}};
}

ModularData modular_data_from_json(const Json& j) {
  try {
    ModularData data;
    data.level = int_field(j, "level");
    data.central_charge = rational_field(j, "central_charge");
    data.tolerance = j.at("tolerance").get<double>();
    for (const Json& l : j.at("labels")) data.labels.push_back(kac_label_from_json(l));
    const auto n = static_cast<Eigen::Index>(data.labels.size());
    const Json& s = j.at("S");
    if (!s.is_array() || static_cast<Eigen::Index>(s.size()) != n) throw ParseError("S must have one row per label");
    data.s.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = s.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("S row has wrong length");
      for (Eigen::Index c = 0; c < n; ++c) data.s(r, c) = parse_double(row.at(static_cast<std::size_t>(c)).get<std::string>());
    }
    for (const Json& t : j.at("T")) data.t_exponents.push_back(parse_rational(t.get<std::string>()));
    if (data.t_exponents.size() != data.labels.size()) throw ParseError("T must have one exponent per label");
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("modular data: ") + e.what());
  }
}

Json to_json(const FusionTable& table) {
  Json n = Json::array();
  for (std::size_t a = 0; a < table.rank(); ++a) {
    Json plane = Json::array();
    for (std::size_t b = 0; b < table.rank(); ++b) {
      Json row = Json::array();
      for (std::size_t c = 0; c < table.rank(); ++c) row.push_back(table(a, b, c));
      plane.push_back(row);
    }
    n.push_back(plane);
  }
  return n;
}

Json to_json(const ModularInvariant& invariant) {
  Json z = Json::array();
  for (Eigen::Index i = 0; i < invariant.z.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < invariant.z.cols(); ++j) row.push_back(invariant.z(i, j));
    z.push_back(row);
  }
  return Json{{"level", invariant.level},
              {"Z", z},
              {"residuals", {{"s_commutator", invariant.s_residual}, {"t_exact", invariant.t_exact}}}};
}

ModularInvariant invariant_from_json(const Json& j) {
  try {
    ModularInvariant inv;
    inv.level = int_field(j, "level");
    const Json& z = j.at("Z");
    const auto n = static_cast<Eigen::Index>(z.size());
    inv.z.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = z.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("Z must be square");
      for (Eigen::Index c = 0; c < n; ++c) {
        const Json& v = row.at(static_cast<std::size_t>(c));
        if (!v.is_number_integer()) throw ParseError("Z entries must be integers");
        inv.z(r, c) = v.get<std::int64_t>();
      }
    }
    inv.s_residual = j.at("residuals").at("s_commutator").get<double>();
    inv.t_exact = j.at("residuals").at("t_exact").get<bool>();
    return inv;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invariant: ") + e.what());
  }
}

Json to_json(const InvariantReport& r) {
  return Json{{"dimension_ok", r.dimension_ok}, {"nonnegative", r.nonnegative},
              {"integral", r.integral},         {"vacuum_normalized", r.vacuum_normalized},
              {"t_commutes", r.t_commutes},     {"s_residual", r.s_residual},
              {"s_commutes", r.s_commutes},     {"passed", r.passed}};
}

Json to_json(const Sl2zReport& r) {
  return Json{{"tolerance", r.tolerance},
              {"orthogonality", r.orthogonality},
              {"symmetry", r.symmetry},
              {"charge_conjugation", r.charge_conjugation},
              {"modular_relation", r.modular_relation},
              {"s_fourth_power", r.s_fourth_power},
              {"conjugation_is_permutation", r.conjugation_is_permutation},
              {"passed", r.passed}};
}

Json to_json(const ChiralNetEntry& entry, bool with_matrix) {
  Json j{{"level", entry.level},
         {"central_charge", to_string(entry.central_charge)},
         {"label", entry.label.to_string()},
         {"family", to_string(entry.family)},
         {"type", "I"}};
  if (with_matrix) j["matrix"] = to_json(entry.invariant).at("Z");
  return j;
}

Json to_json(const Full2DEntry& entry, bool with_matrix) {
  const bool type_one = entry.label.type == InvariantType::I;
  Json j{{"level", entry.level},
         {"central_charge", to_string(entry.central_charge)},
         {"label", entry.label.to_string()},
         {"family", type_one ? Json(to_string(net_family(entry.label, entry.level))) : Json(nullptr)},
         {"type", type_one ? "I" : "II"}};
  if (with_matrix) j["matrix"] = to_json(entry.matrix).at("Z");
  return j;
}

MatrixFile parse_matrix_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    const auto [line, column] = line_column(text, byte);
    throw ParseError("matrix file is not valid JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }
  if (!j.is_object() || !j.contains("Z")) throw ParseError("matrix file must be an object with a \"Z\" array");
  MatrixFile file;
  if (j.contains("level")) file.level = int_field(j, "level");
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw ParseError("\"labels\" must be an array");
    for (const Json& l : j.at("labels")) {
      if (l.is_array() && l.size() == 2 && l[0].is_number_integer() && l[1].is_number_integer())
        file.labels.emplace_back(l[0].get<int>(), l[1].get<int>());
      else if (l.is_object())
        file.labels.emplace_back(int_field(l, "p"), int_field(l, "q"));
      else
        throw ParseError("labels must be {\"p\":..,\"q\":..} objects or [p, q] pairs");
    }
  }
  const Json& z = j.at("Z");
  if (!z.is_array()) throw ParseError("\"Z\" must be an array of rows");
  const auto n = static_cast<Eigen::Index>(z.size());
  file.z.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = z.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError("\"Z\" row " + std::to_string(r) + " does not have " + std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& v = row.at(static_cast<std::size_t>(c));
      if (!v.is_number()) throw ParseError("\"Z\" entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not a number");
      file.z(r, c) = v.get<double>();
    }
  }
  return file;
}

Json to_matrix_file(const ModularInvariant& invariant, const MinimalModel& model) {
  Json labels = Json::array();
  for (const KacLabel& l : model.primaries) labels.push_back(Json{{"p", l.p}, {"q", l.q}});
  return Json{{"level", invariant.level}, {"labels", labels}, {"Z", to_json(invariant).at("Z")}};
}

}  // namespace modinv

#include "modinv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "modinv/catalog.hpp"
#include "modinv/errors.hpp"
#include "modinv/serialize.hpp"

namespace modinv::cli {

namespace {

class VerificationFailed : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_VERIFY"; }
};

std::string display(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

std::string label_text(const KacLabel& l) { return "(" + std::to_string(l.p) + "," + std::to_string(l.q) + ")"; }

bool level_command(Command c) { return c != Command::ChiralList && c != Command::Full2DList; }

// FNV-1a, 64 bit: stable across platforms and standard library versions.
std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

SearchOptions search_options(const RunConfig& config) {
  SearchOptions options;
  options.budget = config.budget;
  return options;
}

// Reads enumerated invariants for a level from the cache directory, falling
// back to a fresh search (and refreshing the entry) when the file is absent
// or unusable.
class InvariantCache {
public:
  InvariantCache(const RunConfig& config, std::ostream& err) : config_(config), err_(err) {}

  std::vector<ModularInvariant> operator()(const ModularData& data) const {
    if (!config_.cache_dir) return enumerate_invariants(data, search_options(config_));
    const std::string key = cache_key(data.level, config_.tolerance, config_.budget);
    const std::filesystem::path path = *config_.cache_dir / (key + ".json");
    if (std::filesystem::exists(path)) {
      try {
        return load(path, key, data);
      } catch (const std::exception& e) {
        err_ << "warning: ignoring cache entry " << path.string() << ": " << e.what() << "\n";
      }
    }
    std::vector<ModularInvariant> invariants = enumerate_invariants(data, search_options(config_));
    store(path, key, data.level, invariants);
    return invariants;
  }

private:
  std::vector<ModularInvariant> load(const std::filesystem::path& path, const std::string& key,
                                     const ModularData& data) const {
    std::ifstream in(path);
    Json j = Json::parse(in);
    if (j.at("key").get<std::string>() != key || j.at("level").get<int>() != data.level)
      throw ParseError("key or level mismatch");
    std::vector<ModularInvariant> invariants;
    for (const Json& entry : j.at("invariants")) {
      ModularInvariant inv = invariant_from_json(entry);
      if (inv.level != data.level || !verify_invariant(inv.z, data).passed)
        throw ParseError("stored matrix is not a modular invariant");
      invariants.push_back(std::move(inv));
    }
    if (invariants.empty()) throw ParseError("no invariants stored");
    return invariants;
  }

  void store(const std::filesystem::path& path, const std::string& key, int level,
             const std::vector<ModularInvariant>& invariants) const {
    try {
      std::filesystem::create_directories(path.parent_path());
      Json list = Json::array();
      for (const ModularInvariant& inv : invariants) list.push_back(to_json(inv));
      Json j{{"key", key}, {"version", kVersion}, {"level", level}, {"invariants", list}};
      std::filesystem::path tmp = path;
      tmp += ".tmp";
      {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump() << "\n";
        if (!out) throw std::runtime_error("write failed");
      }
      std::filesystem::rename(tmp, path);
    } catch (const std::exception& e) {
      err_ << "warning: could not write cache entry " << path.string() << ": " << e.what() << "\n";
    }
  }

  const RunConfig& config_;
  std::ostream& err_;
};

void render_info(const RunConfig& config, std::ostream& out) {
  const MinimalModel model = kac_table(config.level);
  const ModularData data = modular_s_matrix(model, config.tolerance);
  const std::vector<double> dims = quantum_dimensions(data);
  const double mu = mu_index(data);
  switch (config.format) {
    case OutputFormat::Json: {
      Json d = Json::array();
      for (double x : dims) d.push_back(x);
      Json j{{"level", model.level},
             {"central_charge", to_string(model.central_charge)},
             {"primaries", to_json(model).at("primaries")},
             {"mu_index", mu},
             {"quantum_dimensions", d},
             {"sl2z", to_json(verify_sl2z(data))},
             {"modular_data", to_json(data)}};
      out << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "index,p,q,weight,t_exponent,quantum_dimension\n";
      for (std::size_t i = 0; i < model.size(); ++i)
        out << i << "," << model.primaries[i].p << "," << model.primaries[i].q << ","
            << to_string(model.primaries[i].weight) << "," << to_string(data.t_exponents[i]) << ","
            << format_double(dims[i]) << "\n";
      break;
    case OutputFormat::Table:
      out << "level           " << model.level << "\n"
          << "central charge  " << to_display_string(model.central_charge) << "\n"
          << "primaries       " << model.size() << "\n"
          << "mu-index        " << display(mu) << "\n\n";
      out << std::left << std::setw(7) << "index" << std::setw(10) << "(p,q)" << std::setw(14) << "h"
          << std::setw(14) << "T exponent"
          << "d\n";
      for (std::size_t i = 0; i < model.size(); ++i)
        out << std::setw(7) << i << std::setw(10) << label_text(model.primaries[i]) << std::setw(14)
            << to_display_string(model.primaries[i].weight) << std::setw(14) << to_display_string(data.t_exponents[i])
            << display(dims[i]) << "\n";
      break;
  }
}

void render_fusion(const RunConfig& config, std::ostream& out) {
  const MinimalModel model = kac_table(config.level);
  const ModularData data = modular_s_matrix(model, config.tolerance);
  const FusionTable table = fusion_rules(data);
  const std::size_t n = table.rank();
  switch (config.format) {
    case OutputFormat::Json: {
      Json labels = Json::array();
      for (const KacLabel& l : model.primaries) labels.push_back(to_json(l));
      out << Json{{"level", model.level}, {"labels", labels}, {"N", to_json(table)}}.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "a_p,a_q,b_p,b_q,c_p,c_q,multiplicity\n";
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (int k = table(a, b, c); k != 0)
              out << model.primaries[a].p << "," << model.primaries[a].q << "," << model.primaries[b].p << ","
                  << model.primaries[b].q << "," << model.primaries[c].p << "," << model.primaries[c].q << "," << k
                  << "\n";
      break;
    case OutputFormat::Table:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          out << label_text(model.primaries[a]) << " x " << label_text(model.primaries[b]) << " =";
          bool first = true;
          for (std::size_t c = 0; c < n; ++c)
            if (int k = table(a, b, c); k != 0) {
              out << (first ? " " : " + ");
              if (k != 1) out << k;
              out << label_text(model.primaries[c]);
              first = false;
            }
          out << "\n";
        }
      break;
  }
}

void render_invariants(const RunConfig& config, const LevelClassification& level, std::ostream& out) {
  const auto& model = level.model;
  switch (config.format) {
    case OutputFormat::Json: {
      Json list = Json::array();
      for (const ModularInvariant& inv : level.invariants) list.push_back(to_json(inv));
      out << Json{{"level", model.level}, {"invariants", list}}.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "invariant,row_p,row_q,col_p,col_q,value\n";
      for (std::size_t k = 0; k < level.invariants.size(); ++k) {
        const IntMatrix& z = level.invariants[k].z;
        for (Eigen::Index i = 0; i < z.rows(); ++i)
          for (Eigen::Index j = 0; j < z.cols(); ++j)
            if (z(i, j) != 0)
              out << k << "," << model.primaries[static_cast<std::size_t>(i)].p << ","
                  << model.primaries[static_cast<std::size_t>(i)].q << ","
                  << model.primaries[static_cast<std::size_t>(j)].p << ","
                  << model.primaries[static_cast<std::size_t>(j)].q << "," << z(i, j) << "\n";
      }
      break;
    case OutputFormat::Table:
      for (std::size_t k = 0; k < level.invariants.size(); ++k) {
        const ModularInvariant& inv = level.invariants[k];
        out << "invariant " << k << "  trace " << inv.trace() << "  |ZS-SZ| " << display(inv.s_residual) << "\n";
        for (Eigen::Index i = 0; i < inv.z.rows(); ++i)
          for (Eigen::Index j = 0; j < inv.z.cols(); ++j)
            if (inv.z(i, j) != 0)
              out << "  Z[" << label_text(model.primaries[static_cast<std::size_t>(i)]) << ","
                  << label_text(model.primaries[static_cast<std::size_t>(j)]) << "] = " << inv.z(i, j) << "\n";
      }
      break;
  }
}

void render_classify(const RunConfig& config, const LevelClassification& level, std::ostream& out) {
  const char* type_names[] = {"I", "II"};
  switch (config.format) {
    case OutputFormat::Json: {
      Json list = Json::array();
      for (std::size_t k = 0; k < level.labels.size(); ++k) {
        const DiagonalExponents exps = diagonal_exponents(level.invariants[k], level.model);
        list.push_back(Json{{"label", level.labels[k].to_string()},
                            {"type", type_names[static_cast<int>(level.labels[k].type)]},
                            {"trace", level.invariants[k].trace()},
                            {"diagonal_exponents", {{"first", exps.first}, {"second", exps.second}}}});
      }
      out << Json{{"level", level.model.level},
                  {"central_charge", to_string(level.model.central_charge)},
                  {"labels", list}}
                 .dump(2)
          << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "level,label,type,trace\n";
      for (std::size_t k = 0; k < level.labels.size(); ++k)
        out << level.model.level << ",\"" << level.labels[k].to_string() << "\","
            << type_names[static_cast<int>(level.labels[k].type)] << "," << level.invariants[k].trace() << "\n";
      break;
    case OutputFormat::Table:
      out << std::left << std::setw(14) << "label" << std::setw(6) << "type"
          << "trace\n";
      for (std::size_t k = 0; k < level.labels.size(); ++k)
        out << std::setw(14) << level.labels[k].to_string() << std::setw(6)
            << type_names[static_cast<int>(level.labels[k].type)] << level.invariants[k].trace() << "\n";
      break;
  }
}

template <typename Entry>
void render_list(const RunConfig& config, const std::vector<Entry>& entries, std::ostream& out) {
  auto row = [](const Entry& e) {
    const Json j = to_json(e, false);
    return std::array<std::string, 5>{std::to_string(e.level), to_display_string(e.central_charge),
                                      e.label.to_string(), j.at("family").is_null() ? "-" : j.at("family").get<std::string>(),
                                      j.at("type").get<std::string>()};
  };
  switch (config.format) {
    case OutputFormat::Json: {
      Json list = Json::array();
      for (const Entry& e : entries) list.push_back(to_json(e, config.with_matrix));
      out << list.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "level,central_charge,label,family,type\n";
      for (const Entry& e : entries) {
        const auto r = row(e);
        out << r[0] << "," << to_string(e.central_charge) << ",\"" << r[2] << "\"," << r[3] << "," << r[4] << "\n";
      }
      break;
    case OutputFormat::Table:
      out << std::left << std::setw(6) << "m" << std::setw(10) << "c" << std::setw(12) << "label" << std::setw(24)
          << "family"
          << "type\n";
      for (const Entry& e : entries) {
        const auto r = row(e);
        out << std::setw(6) << r[0] << std::setw(10) << r[1] << std::setw(12) << r[2] << std::setw(24) << r[3] << r[4]
            << "\n";
      }
      break;
  }
}

int render_verify(const RunConfig& config, std::ostream& out) {
  if (!config.input) throw DomainError("verify needs a matrix file");
  std::ifstream in(*config.input);
  if (!in) throw DomainError("cannot read matrix file " + config.input->string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const MatrixFile file = parse_matrix_file(buffer.str());
  if (file.level && *file.level != config.level)
    throw DomainError("matrix file is for level " + std::to_string(*file.level) + ", requested level " +
                      std::to_string(config.level));
  const MinimalModel model = kac_table(config.level);
  if (!file.labels.empty()) {
    if (file.labels.size() != model.size()) throw DomainError("label list length does not match the model");
    for (std::size_t i = 0; i < model.size(); ++i) {
      const KacLabel c = canonical_label(model.level, file.labels[i].first, file.labels[i].second);
      if (c.p != model.primaries[i].p || c.q != model.primaries[i].q)
        throw DomainError("label " + std::to_string(i) + " is not in canonical primary order");
    }
  }
  const ModularData data = modular_s_matrix(model, config.tolerance);
  const InvariantReport report = verify_invariant(file.z, data);
  switch (config.format) {
    case OutputFormat::Json:
      out << to_json(report).dump(2) << "\n";
      break;
    case OutputFormat::Csv:
      out << "nonnegative,integral,vacuum_normalized,t_commutes,s_residual,passed\n"
          << report.nonnegative << "," << report.integral << "," << report.vacuum_normalized << ","
          << report.t_commutes << "," << format_double(report.s_residual) << "," << report.passed << "\n";
      break;
    case OutputFormat::Table: {
      auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
      out << "nonnegative        " << mark(report.nonnegative) << "\n"
          << "integral           " << mark(report.integral) << "\n"
          << "Z_00 = 1           " << mark(report.vacuum_normalized) << "\n"
          << "ZT = TZ (exact)    " << mark(report.t_commutes) << "\n"
          << "ZS = SZ            " << mark(report.s_commutes) << "  residual " << display(report.s_residual) << "\n"
          << "modular invariant  " << (report.passed ? "yes" : "no") << "\n";
      break;
    }
  }
  if (!report.passed) throw VerificationFailed("matrix is not a modular invariant at level " + std::to_string(config.level));
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  if (budget == 0) throw DomainError("budget must be positive");
  if (level < 2) throw DomainError(std::string(level_command(command) ? "level" : "max level") + " must be >= 2");
  if (command == Command::Verify && !input) throw DomainError("verify needs a matrix file");
}

std::string cache_key(int level, double tolerance, std::uint64_t budget) {
  std::ostringstream canonical;
  canonical << "modinv/" << kVersion << "/level=" << level << "/tolerance=" << format_double(tolerance)
            << "/budget=" << budget;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical.str());
  return hex.str();
}

std::string cache_key(const RunConfig& config) { return cache_key(config.level, config.tolerance, config.budget); }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const InvariantCache cache(config, err);
    const InvariantProvider provider = [&cache](const ModularData& data) { return cache(data); };
    const SearchOptions options = search_options(config);
    // Render into a buffer so a failure never leaves partial output behind.
    std::ostringstream buffer;
    int status = 0;
    switch (config.command) {
      case Command::Info: render_info(config, buffer); break;
      case Command::Fusion: render_fusion(config, buffer); break;
      case Command::Invariants:
        render_invariants(config, classify_level(config.level, options, config.tolerance, provider), buffer);
        break;
      case Command::Classify:
        render_classify(config, classify_level(config.level, options, config.tolerance, provider), buffer);
        break;
      case Command::ChiralList:
        render_list(config, chiral_net_list(config.level, options, config.tolerance, provider), buffer);
        break;
      case Command::Full2DList:
        render_list(config, full_2d_list(config.level, options, config.tolerance, provider), buffer);
        break;
      case Command::Verify:
        try {
          status = render_verify(config, buffer);
        } catch (const VerificationFailed&) {
          out << buffer.str();
          throw;
        }
        break;
    }
    out << buffer.str();
    return status;
  } catch (const ParseError& e) {
    err << "error code=" << e.code() << ": " << e.what();
    if (e.line() != 0) err << " (line " << e.line() << ", column " << e.column() << ")";
    err << "\n";
    return 1;
  } catch (const ResourceError& e) {
    err << "error code=" << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error code=" << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error code=E_INTERNAL: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::optional<std::string>& env_cache_dir) {
  CLI::App app{"Virasoro minimal-model modular data, modular invariants and A-D-E catalogs", "modinv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig config;
  std::string format = "table";
  std::string cache_dir = env_cache_dir.value_or("");
  std::string input;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--tolerance", config.tolerance, "Tolerance for numerical predicates");
    sub->add_option("--budget", config.budget, "Enumeration candidate budget");
    sub->add_option("--cache-dir", cache_dir, std::string("Cache directory (default $") + kCacheEnvVar + ")");
  };
  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"info", "Central charge, primaries, quantum dimensions and mu-index", Command::Info},
      {"fusion", "Verlinde fusion rules", Command::Fusion},
      {"invariants", "Enumerate all modular invariants at a level", Command::Invariants},
      {"classify", "Label the modular invariants at a level with A-D-E pairs", Command::Classify},
      {"chiral-list", "Type I catalog of chiral extensions up to a level", Command::ChiralList},
      {"full-2d-list", "All labelled invariants up to a level", Command::Full2DList},
      {"verify", "Check whether a matrix file holds a modular invariant", Command::Verify},
  };
  std::vector<std::pair<CLI::App*, Command>> registered;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (level_command(s.command)) {
      sub->add_option("-m,--m,--level", config.level, "Minimal model level m >= 2")->required();
    } else {
      sub->add_option("--max-m,--m", config.level, "Largest level to include")->required();
      sub->add_flag("--with-matrix", config.with_matrix, "Include the coupling matrix in JSON output");
    }
    if (s.command == Command::Verify) sub->add_option("file", input, "Matrix file (JSON)")->required();
    registered.emplace_back(sub, s.command);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error code=E_USAGE: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [sub, command] : registered)
    if (sub->parsed()) config.command = command;
  config.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Table;
  if (!cache_dir.empty()) config.cache_dir = cache_dir;
  if (!input.empty()) config.input = input;
  return run(config, out, err);
}

}  // namespace modinv::cli

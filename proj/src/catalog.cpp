#include "modinv/catalog.hpp"

#include <algorithm>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

constexpr int kFirstListedLevel = 3;

void require_max_level(int max_m) {
  if (max_m < 2) throw DomainError("catalog requires max_m >= 2, got " + std::to_string(max_m));
}

bool is_d_even(const DynkinDiagram& g) { return g.family == DynkinFamily::D && g.rank % 2 == 0; }

bool is_exceptional(const InvariantLabel& label) {
  static const std::vector<std::string> exceptional = {"(E6,A12)", "(E8,A30)", "(A10,E6)", "(A28,E8)"};
  return std::find(exceptional.begin(), exceptional.end(), label.to_string()) != exceptional.end();
}

}  // namespace

std::string to_string(NetFamily family) {
  switch (family) {
    case NetFamily::VirasoroDiagonal: return "virasoro-diagonal";
    case NetFamily::SimpleCurrentIndex2: return "simple-current-index-2";
    case NetFamily::Exceptional: return "exceptional";
  }
  return "unknown";
}

LevelClassification classify_level(int level, const SearchOptions& options, double tolerance,
                                   const InvariantProvider& provider) {
  LevelClassification result;
  result.model = kac_table(level);
  result.data = modular_s_matrix(result.model, tolerance);
  result.invariants = provider ? provider(result.data) : enumerate_invariants(result.data, options);
  const std::vector<DynkinDiagram> catalog = dynkin_catalog(level + 1);
  result.labels.reserve(result.invariants.size());
  for (const ModularInvariant& z : result.invariants) result.labels.push_back(match_invariant(z, result.model, catalog));
  return result;
}

NetFamily net_family(const InvariantLabel& label, int level) {
  if (label.type != InvariantType::I)
    throw ClassificationError("type II label " + label.to_string() + " has no chiral net family");
  if (label.first.coxeter_number != level || label.second.coxeter_number != level + 1)
    throw ClassificationError("label " + label.to_string() + " does not have Coxeter numbers (" +
                              std::to_string(level) + "," + std::to_string(level + 1) + ")");
  const bool diagonal = label.first == dynkin_a(level - 1) && label.second == dynkin_a(level);
  const bool simple_current = is_d_even(label.first) != is_d_even(label.second);
  const bool exceptional = is_exceptional(label);
  if (int(diagonal) + int(simple_current) + int(exceptional) != 1)
    throw ClassificationError("label " + label.to_string() + " does not fall in exactly one chiral family");
  if (diagonal) return NetFamily::VirasoroDiagonal;
  if (simple_current) return NetFamily::SimpleCurrentIndex2;
  return NetFamily::Exceptional;
}

std::vector<ChiralNetEntry> chiral_net_list(int max_m, const SearchOptions& options, double tolerance,
                                            const InvariantProvider& provider) {
  require_max_level(max_m);
  std::vector<ChiralNetEntry> entries;
  for (int m = kFirstListedLevel; m <= max_m; ++m) {
    const LevelClassification level = classify_level(m, options, tolerance, provider);
    int diagonal = 0;
    for (std::size_t i = 0; i < level.invariants.size(); ++i) {
      if (level.labels[i].type != InvariantType::I) continue;
      ChiralNetEntry entry{m, level.model.central_charge, level.labels[i], net_family(level.labels[i], m),
                           level.invariants[i]};
      if (entry.family == NetFamily::VirasoroDiagonal) ++diagonal;
      entries.push_back(std::move(entry));
    }
    if (diagonal != 1)
      throw ConsistencyError("level " + std::to_string(m) + " has " + std::to_string(diagonal) + " diagonal entries");
  }
  return entries;
}

std::vector<Full2DEntry> full_2d_list(int max_m, const SearchOptions& options, double tolerance,
                                      const InvariantProvider& provider) {
  require_max_level(max_m);
  std::vector<Full2DEntry> entries;
  for (int m = kFirstListedLevel; m <= max_m; ++m) {
    const LevelClassification level = classify_level(m, options, tolerance, provider);
    for (std::size_t i = 0; i < level.invariants.size(); ++i)
      entries.push_back({m, level.model.central_charge, level.labels[i], level.invariants[i]});
  }
  return entries;
}

bool identify_simple_current(const ChiralNetEntry& entry, const FusionTable& fusion) {
  bool has_current = false;
  for (std::size_t j : fusion.invertible_sectors())
    if (j != 0 && fusion(j, j, 0) == 1) has_current = true;
  const bool d_even_label = is_d_even(entry.label.first) || is_d_even(entry.label.second);
  if (d_even_label && !has_current)
    throw ConsistencyError("label " + entry.label.to_string() + " at level " + std::to_string(entry.level) +
                           " needs a simple current but the fusion ring has no invertible sector");
  return has_current && d_even_label;
}

}  // namespace modinv

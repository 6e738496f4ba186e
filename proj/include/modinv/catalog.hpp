#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modinv/adeclassify.hpp"
#include "modinv/invariantsearch.hpp"
#include "modinv/kacdata.hpp"
#include "modinv/modulardata.hpp"

namespace modinv {

enum class NetFamily { VirasoroDiagonal, SimpleCurrentIndex2, Exceptional };

std::string to_string(NetFamily family);  // "virasoro-diagonal", ...

/// Everything computed for one level: enumerated invariants and their labels,
/// index-aligned.
struct LevelClassification {
  MinimalModel model;
  ModularData data;
  std::vector<ModularInvariant> invariants;
  std::vector<InvariantLabel> labels;
};

struct ChiralNetEntry {
  int level = 0;
  Rational central_charge;
  InvariantLabel label;
  NetFamily family = NetFamily::VirasoroDiagonal;
  ModularInvariant invariant;
};

struct Full2DEntry {
  int level = 0;
  Rational central_charge;
  InvariantLabel label;
  ModularInvariant matrix;
};

/// Source of enumerated invariants for a level; lets callers (the CLI cache)
/// substitute stored results for a fresh search.
using InvariantProvider = std::function<std::vector<ModularInvariant>(const ModularData&)>;

LevelClassification classify_level(int level, const SearchOptions& options = {}, double tolerance = kDefaultTolerance,
                                   const InvariantProvider& provider = {});

/// Family of a type I label. Throws ClassificationError for type II labels or
/// labels outside the three families.
NetFamily net_family(const InvariantLabel& label, int level);

/// Type I catalog for levels 3..max_m, ascending level then canonical
/// invariant order. The single-sector level 2 theory is not listed.
std::vector<ChiralNetEntry> chiral_net_list(int max_m, const SearchOptions& options = {},
                                            double tolerance = kDefaultTolerance,
                                            const InvariantProvider& provider = {});

/// All labelled invariants for levels 3..max_m.
std::vector<Full2DEntry> full_2d_list(int max_m, const SearchOptions& options = {},
                                      double tolerance = kDefaultTolerance, const InvariantProvider& provider = {});

/// True iff the fusion ring has an invertible sector J != 0 with N_JJ^0 = 1
/// and the label contains a D_even diagram. A D_even label without such a
/// sector throws ConsistencyError.
bool identify_simple_current(const ChiralNetEntry& entry, const FusionTable& fusion);

}  // namespace modinv

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modinv/rational.hpp"

namespace modinv {

/// A primary field of the level-m minimal model, stored by the canonical
/// (lexicographically smaller) representative of {(p,q), (m-p, m+1-q)}.
struct KacLabel {
  int p = 1;
  int q = 1;
  Rational weight;

  friend bool operator==(const KacLabel&, const KacLabel&) = default;
};

/// Primary content of the minimal model with central charge 1 - 6/(m(m+1)).
/// Primaries are ordered by ascending weight, ties broken by (p,q); the
/// vacuum (1,1) is always first.
struct MinimalModel {
  int level = 2;
  Rational central_charge;
  std::vector<KacLabel> primaries;

  std::size_t size() const { return primaries.size(); }

  /// Position of the class containing (p,q), either representative.
  std::size_t index_of(int p, int q) const;
};

/// Structure constants of [L_j, L_k] = (j-k) L_{j+k} + c/12 (j^3 - j) delta_{j+k,0}.
struct VirasoroBracket {
  std::int64_t mode = 0;                // j + k, the index of the L term
  std::int64_t linear_coefficient = 0;  // j - k
  Rational central_coefficient;         // multiple of c
};

Rational central_charge(int level);

MinimalModel kac_table(int level);

/// h(p,q) = ((p(m+1) - q m)^2 - 1) / (4 m (m+1)).
Rational conformal_weight(int level, int p, int q);

/// Canonical representative of the identification class of (p,q).
KacLabel canonical_label(int level, int p, int q);

VirasoroBracket virasoro_bracket(std::int64_t j, std::int64_t k);

}  // namespace modinv

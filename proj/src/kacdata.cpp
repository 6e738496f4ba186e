#include "modinv/kacdata.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

void require_level(int level) {
  if (level < 2) throw DomainError("level must be >= 2, got " + std::to_string(level));
}

void require_label(int level, int p, int q) {
  require_level(level);
  if (p < 1 || p > level - 1 || q < 1 || q > level)
    throw DomainError("Kac label (" + std::to_string(p) + "," + std::to_string(q) +
                      ") out of range for level " + std::to_string(level));
}

}  // namespace

Rational central_charge(int level) {
  require_level(level);
  return Rational(1) - Rational(6, std::int64_t{level} * (level + 1));
}

Rational conformal_weight(int level, int p, int q) {
  require_label(level, p, q);
  const std::int64_t m = level;
  const std::int64_t r = p * (m + 1) - q * m;
  return Rational(r * r - 1, 4 * m * (m + 1));
}

KacLabel canonical_label(int level, int p, int q) {
  require_label(level, p, q);
  const int pp = level - p;
  const int qq = level + 1 - q;
  if (std::tie(pp, qq) < std::tie(p, q)) return {pp, qq, conformal_weight(level, pp, qq)};
  return {p, q, conformal_weight(level, p, q)};
}

MinimalModel kac_table(int level) {
  require_level(level);
  MinimalModel model;
  model.level = level;
  model.central_charge = central_charge(level);
  for (int p = 1; p < level; ++p) {
    for (int q = 1; q <= level; ++q) {
      KacLabel label = canonical_label(level, p, q);
      if (label.p == p && label.q == q) model.primaries.push_back(label);
    }
  }
  std::sort(model.primaries.begin(), model.primaries.end(), [](const KacLabel& a, const KacLabel& b) {
    return std::tie(a.weight, a.p, a.q) < std::tie(b.weight, b.p, b.q);
  });
  return model;
}

std::size_t MinimalModel::index_of(int p, int q) const {
  const KacLabel label = canonical_label(level, p, q);
  auto it = std::find_if(primaries.begin(), primaries.end(),
                         [&](const KacLabel& l) { return l.p == label.p && l.q == label.q; });
  if (it == primaries.end())
    throw DomainError("label (" + std::to_string(p) + "," + std::to_string(q) + ") not in model");
  return static_cast<std::size_t>(it - primaries.begin());
}

VirasoroBracket virasoro_bracket(std::int64_t j, std::int64_t k) {
  VirasoroBracket bracket;
  bracket.mode = j + k;
  bracket.linear_coefficient = j - k;
  bracket.central_coefficient = (j + k == 0) ? Rational(j * j * j - j, 12) : Rational(0);
  return bracket;
}

}  // namespace modinv

#include "modinv/adeclassify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

using Grid = std::vector<std::vector<std::int64_t>>;  // [p][q], 1-based

Grid unfolded_diagonal(const ModularInvariant& z, const MinimalModel& model) {
  const int m = model.level;
  if (static_cast<std::size_t>(z.z.rows()) != model.size() || z.z.cols() != z.z.rows())
    throw DomainError("invariant dimension does not match the minimal model");
  Grid grid(static_cast<std::size_t>(m), std::vector<std::int64_t>(static_cast<std::size_t>(m + 1), 0));
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::int64_t k = z.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    if (k == 0) continue;
    const KacLabel& label = model.primaries[i];
    grid[static_cast<std::size_t>(label.p)][static_cast<std::size_t>(label.q)] += k;
    const int p2 = m - label.p;
    const int q2 = m + 1 - label.q;
    if (p2 != label.p || q2 != label.q) grid[static_cast<std::size_t>(p2)][static_cast<std::size_t>(q2)] += k;
  }
  return grid;
}

std::vector<std::int64_t> multiplicities(const std::vector<int>& exponents, int coxeter_number) {
  std::vector<std::int64_t> mult(static_cast<std::size_t>(coxeter_number), 0);
  for (int e : exponents) ++mult[static_cast<std::size_t>(e)];
  return mult;
}

std::string describe(const Grid& grid) {
  std::ostringstream out;
  out << "unfolded diagonal {";
  bool first = true;
  for (std::size_t p = 1; p < grid.size(); ++p)
    for (std::size_t q = 1; q < grid[p].size(); ++q)
      if (grid[p][q] != 0) {
        out << (first ? "" : ", ") << "(" << p << "," << q << "):" << grid[p][q];
        first = false;
      }
  out << "}";
  return out.str();
}

}  // namespace

std::string DynkinDiagram::name() const {
  const char letter = family == DynkinFamily::A ? 'A' : family == DynkinFamily::D ? 'D' : 'E';
  return std::string(1, letter) + std::to_string(rank);
}

bool DynkinDiagram::type_one() const {
  switch (family) {
    case DynkinFamily::A: return true;
    case DynkinFamily::D: return rank % 2 == 0;
    case DynkinFamily::E: return rank != 7;
  }
  return false;
}

Eigen::MatrixXd DynkinDiagram::adjacency() const {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(rank, rank);
  auto link = [&](int a, int b) { adj(a, b) = adj(b, a) = 1; };
  switch (family) {
    case DynkinFamily::A:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      break;
    case DynkinFamily::D:
      // path 0..rank-2, node rank-1 forks off node rank-3
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1);
      link(rank - 3, rank - 1);
      break;
    case DynkinFamily::E:
      // path 0..rank-2, node rank-1 attached to node 2
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1);
      link(2, rank - 1);
      break;
  }
  return adj;
}

DynkinDiagram dynkin_a(int rank) {
  if (rank < 1) throw DomainError("A_n requires n >= 1");
  DynkinDiagram g{DynkinFamily::A, rank, rank + 1, {}};
  for (int e = 1; e <= rank; ++e) g.exponents.push_back(e);
  return g;
}

DynkinDiagram dynkin_d(int rank) {
  if (rank < 4) throw DomainError("D_n requires n >= 4");
  DynkinDiagram g{DynkinFamily::D, rank, 2 * rank - 2, {}};
  for (int e = 1; e <= 2 * rank - 3; e += 2) g.exponents.push_back(e);
  g.exponents.push_back(rank - 1);
  std::sort(g.exponents.begin(), g.exponents.end());
  return g;
}

DynkinDiagram dynkin_e(int rank) {
  switch (rank) {
    case 6: return {DynkinFamily::E, 6, 12, {1, 4, 5, 7, 8, 11}};
    case 7: return {DynkinFamily::E, 7, 18, {1, 5, 7, 9, 11, 13, 17}};
    case 8: return {DynkinFamily::E, 8, 30, {1, 7, 11, 13, 17, 19, 23, 29}};
    default: throw DomainError("E_n exists only for n in {6, 7, 8}");
  }
}

DynkinDiagram parse_dynkin(const std::string& name) {
  static const std::regex pattern(R"(\s*([ADE])(\d{1,4})\s*)");
  std::smatch match;
  if (!std::regex_match(name, match, pattern)) throw ParseError("malformed Dynkin diagram name '" + name + "'");
  const int rank = std::stoi(match[2].str());
  switch (match[1].str()[0]) {
    case 'A': return dynkin_a(rank);
    case 'D': return dynkin_d(rank);
    default: return dynkin_e(rank);
  }
}

std::vector<DynkinDiagram> dynkin_catalog(int max_coxeter) {
  if (max_coxeter < 2) throw DomainError("dynkin_catalog requires max_coxeter >= 2");
  std::vector<DynkinDiagram> catalog;
  for (int h = 2; h <= max_coxeter; ++h) {
    catalog.push_back(dynkin_a(h - 1));
    if (h % 2 == 0 && h >= 6) catalog.push_back(dynkin_d((h + 2) / 2));
    if (h == 12) catalog.push_back(dynkin_e(6));
    if (h == 18) catalog.push_back(dynkin_e(7));
    if (h == 30) catalog.push_back(dynkin_e(8));
  }
  for (const DynkinDiagram& g : catalog) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency(), Eigen::EigenvaluesOnly);
    std::vector<double> expected;
    for (int e : g.exponents) expected.push_back(2 * std::cos(std::numbers::pi * e / g.coxeter_number));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < g.rank; ++i) {
      if (std::abs(solver.eigenvalues()(i) - expected[static_cast<std::size_t>(i)]) > 1e-9)
        throw ConsistencyError("adjacency spectrum of " + g.name() + " does not match its exponents");
    }
  }
  return catalog;
}

std::string InvariantLabel::to_string() const { return "(" + first.name() + "," + second.name() + ")"; }

InvariantLabel parse_label(const std::string& text) {
  static const std::regex pattern(R"(\s*\(\s*([ADE]\d+)\s*,\s*([ADE]\d+)\s*\)\s*)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) throw ParseError("malformed invariant label '" + text + "'");
  InvariantLabel label;
  label.first = parse_dynkin(match[1].str());
  label.second = parse_dynkin(match[2].str());
  label.type = label.first.type_one() && label.second.type_one() ? InvariantType::I : InvariantType::II;
  return label;
}

DiagonalExponents diagonal_exponents(const ModularInvariant& z, const MinimalModel& model) {
  const Grid grid = unfolded_diagonal(z, model);
  const int m = model.level;
  std::vector<std::int64_t> rows(static_cast<std::size_t>(m), 0), cols(static_cast<std::size_t>(m + 1), 0);
  for (int p = 1; p < m; ++p)
    for (int q = 1; q <= m; ++q) {
      rows[static_cast<std::size_t>(p)] += grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      cols[static_cast<std::size_t>(q)] += grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    }
  const std::int64_t row_gcd = std::accumulate(rows.begin(), rows.end(), std::int64_t{0},
                                               [](std::int64_t a, std::int64_t b) { return std::gcd(a, b); });
  const std::int64_t col_gcd = std::accumulate(cols.begin(), cols.end(), std::int64_t{0},
                                               [](std::int64_t a, std::int64_t b) { return std::gcd(a, b); });
  DiagonalExponents result;
  for (int p = 1; p < m; ++p)
    for (std::int64_t k = 0; row_gcd != 0 && k < rows[static_cast<std::size_t>(p)] / row_gcd; ++k)
      result.first.push_back(p);
  for (int q = 1; q <= m; ++q)
    for (std::int64_t k = 0; col_gcd != 0 && k < cols[static_cast<std::size_t>(q)] / col_gcd; ++k)
      result.second.push_back(q);
  return result;
}

InvariantLabel match_invariant(const ModularInvariant& z, const MinimalModel& model,
                               const std::vector<DynkinDiagram>& catalog) {
  const Grid grid = unfolded_diagonal(z, model);
  const int m = model.level;
  std::vector<InvariantLabel> matches;
  for (const DynkinDiagram& g1 : catalog) {
    if (g1.coxeter_number != m) continue;
    const auto mult1 = multiplicities(g1.exponents, m);
    for (const DynkinDiagram& g2 : catalog) {
      if (g2.coxeter_number != m + 1) continue;
      if (g1.family != DynkinFamily::A && g2.family != DynkinFamily::A) continue;
      const auto mult2 = multiplicities(g2.exponents, m + 1);
      bool equal = true;
      for (int p = 1; p < m && equal; ++p)
        for (int q = 1; q <= m && equal; ++q)
          equal = grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] ==
                  mult1[static_cast<std::size_t>(p)] * mult2[static_cast<std::size_t>(q)];
      if (equal) {
        InvariantLabel label{g1, g2, g1.type_one() && g2.type_one() ? InvariantType::I : InvariantType::II};
        matches.push_back(label);
      }
    }
  }
  if (matches.size() == 1) return matches.front();
  std::ostringstream msg;
  msg << (matches.empty() ? "no" : "ambiguous") << " A-D-E pair for invariant at level " << m << ": "
      << describe(grid);
  if (!matches.empty()) {
    msg << "; candidates";
    for (const auto& l : matches) msg << " " << l.to_string();
  }
  throw ClassificationError(msg.str());
}

std::vector<InvariantLabel> physical_filter(const std::vector<InvariantLabel>& labels) {
  std::vector<InvariantLabel> kept;
  std::copy_if(labels.begin(), labels.end(), std::back_inserter(kept),
               [](const InvariantLabel& l) { return l.type == InvariantType::I; });
  return kept;
}

}  // namespace modinv

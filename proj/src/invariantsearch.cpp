#include "modinv/invariantsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

constexpr double kPivotThreshold = 1e-6;

std::vector<std::int64_t> row_major(const IntMatrix& z) {
  std::vector<std::int64_t> flat;
  flat.reserve(static_cast<std::size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) flat.push_back(z(i, j));
  return flat;
}

double commutator_residual(const Eigen::MatrixXd& z, const Eigen::MatrixXd& s) {
  if (z.size() == 0) return 0;
  return (z * s - s * z).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> TClassPartition::allowed_entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t a = 0; a < class_of.size(); ++a)
    for (std::size_t b : classes[class_of[a]]) entries.emplace_back(a, b);
  return entries;
}

Eigen::MatrixXd CommutantBasis::matrix(std::size_t j) const {
  const auto n = static_cast<Eigen::Index>(rank);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < entries.size(); ++e)
    z(static_cast<Eigen::Index>(entries[e].first), static_cast<Eigen::Index>(entries[e].second)) =
        coordinates(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j));
  return z;
}

TClassPartition t_classes(const ModularData& data) {
  TClassPartition partition;
  partition.class_of.resize(data.size());
  std::map<Rational, std::size_t> by_exponent;
  for (std::size_t a = 0; a < data.size(); ++a) {
    auto [it, inserted] = by_exponent.try_emplace(data.t_exponents[a], partition.classes.size());
    if (inserted) partition.classes.emplace_back();
    partition.classes[it->second].push_back(a);
    partition.class_of[a] = it->second;
  }
  return partition;
}

CommutantBasis commutant_basis(const ModularData& data, const SearchOptions& options) {
  const TClassPartition partition = t_classes(data);
  CommutantBasis basis;
  basis.rank = data.size();
  basis.entries = partition.allowed_entries();

  // Normal matrix of the linear map Z -> ZS - SZ restricted to the T-allowed
  // pattern. For unit matrices E_ac, E_a'c':
  //   G = d_aa' (S S^T)_cc' - S_a'a S_c'c - S_aa' S_cc' + (S^T S)_a'a d_cc'
  const Eigen::MatrixXd& s = data.s;
  const Eigen::MatrixXd sst = s * s.transpose();
  const Eigen::MatrixXd sts = s.transpose() * s;
  const auto u = static_cast<Eigen::Index>(basis.entries.size());
  Eigen::MatrixXd gram(u, u);
  for (Eigen::Index x = 0; x < u; ++x) {
    const auto a = static_cast<Eigen::Index>(basis.entries[static_cast<std::size_t>(x)].first);
    const auto c = static_cast<Eigen::Index>(basis.entries[static_cast<std::size_t>(x)].second);
    for (Eigen::Index y = 0; y <= x; ++y) {
      const auto a2 = static_cast<Eigen::Index>(basis.entries[static_cast<std::size_t>(y)].first);
      const auto c2 = static_cast<Eigen::Index>(basis.entries[static_cast<std::size_t>(y)].second);
      double value = -s(a2, a) * s(c2, c) - s(a, a2) * s(c, c2);
      if (a == a2) value += sst(c, c2);
      if (c == c2) value += sts(a2, a);
      gram(x, y) = value;
      gram(y, x) = value;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) throw NumericalInstabilityError("eigen-decomposition of commutant system failed");
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();

  Eigen::Index null_dim = 0;
  while (null_dim < u && eigenvalues(null_dim) < options.null_threshold) ++null_dim;
  basis.spectral_gap = null_dim < u ? eigenvalues(null_dim) : std::numeric_limits<double>::infinity();
  if (basis.spectral_gap < options.instability_band) {
    std::ostringstream msg;
    msg << "commutant rank is ambiguous at level " << data.level << ": eigenvalue " << basis.spectral_gap
        << " lies between the null threshold " << options.null_threshold << " and " << options.instability_band;
    throw NumericalInstabilityError(msg.str());
  }
  basis.coordinates = solver.eigenvectors().leftCols(null_dim);

  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    const double residual = commutator_residual(basis.matrix(j), s);
    if (residual > data.tolerance) {
      std::ostringstream msg;
      msg << "commutant basis vector " << j << " has |ZS - SZ| = " << residual;
      throw NumericalInstabilityError(msg.str());
    }
  }
  return basis;
}

IntMatrix entry_bounds(const ModularData& data) {
  const std::vector<double> dims = quantum_dimensions(data);
  const auto n = static_cast<Eigen::Index>(dims.size());
  IntMatrix bounds(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      bounds(a, b) = static_cast<std::int64_t>(
          std::ceil(dims[static_cast<std::size_t>(a)] * dims[static_cast<std::size_t>(b)] - 1e-9));
  return bounds;
}

bool invariant_order(const IntMatrix& a, const IntMatrix& b) {
  if (a.trace() != b.trace()) return a.trace() > b.trace();
  return row_major(a) < row_major(b);
}

std::vector<ModularInvariant> enumerate_invariants(const ModularData& data, const SearchOptions& options) {
  return enumerate_invariants(data, commutant_basis(data, options), options);
}

std::vector<ModularInvariant> enumerate_invariants(const ModularData& data, const CommutantBasis& basis,
                                                   const SearchOptions& options) {
  if (basis.rank != data.size()) throw DomainError("commutant basis does not match modular data dimension");
  const IntMatrix bounds = entry_bounds(data);
  const std::size_t u = basis.entries.size();
  const std::size_t k = basis.dimension();
  if (k == 0) throw ConsistencyError("commutant is empty; the identity should always commute");

  std::vector<std::int64_t> entry_bound(u);
  std::size_t vacuum = u;
  for (std::size_t e = 0; e < u; ++e) {
    const auto [a, b] = basis.entries[e];
    entry_bound[e] = bounds(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    if (a == 0 && b == 0) vacuum = e;
  }
  if (vacuum == u) throw ConsistencyError("vacuum entry missing from T-allowed pattern");

  // Pick k pattern entries whose coordinate rows are independent: Z_00 first,
  // then the entries with the smallest bounds. Fixing integer values on them
  // determines Z.
  std::vector<std::size_t> order(u);
  for (std::size_t e = 0; e < u; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if ((x == vacuum) != (y == vacuum)) return x == vacuum;
    return entry_bound[x] < entry_bound[y];
  });
  std::vector<std::size_t> pivots;
  std::vector<Eigen::VectorXd> span;
  for (std::size_t e : order) {
    Eigen::VectorXd row = basis.coordinates.row(static_cast<Eigen::Index>(e)).transpose();
    for (const Eigen::VectorXd& q : span) row -= q.dot(row) * q;
    const double norm = row.norm();
    if (norm > kPivotThreshold) {
      pivots.push_back(e);
      span.push_back(row / norm);
    } else if (e == vacuum) {
      throw ConsistencyError("every commutant element vanishes at Z_00");
    }
    if (pivots.size() == k) break;
  }
  if (pivots.size() != k) throw NumericalInstabilityError("could not find independent pivot entries");

  Eigen::MatrixXd pivot_block(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i)
    pivot_block.row(static_cast<Eigen::Index>(i)) = basis.coordinates.row(static_cast<Eigen::Index>(pivots[i]));
  // Z (on the pattern) = solve * (values at pivots); solve is the identity on
  // pivot rows.
  const Eigen::MatrixXd solve = basis.coordinates * pivot_block.inverse();

  std::vector<double> pivot_bound(k);
  for (std::size_t i = 0; i < k; ++i) pivot_bound[i] = static_cast<double>(entry_bound[pivots[i]]);

  // remaining_min/max(e, j): range of sum_{i >= j} solve(e, i) z_i over the
  // box 0 <= z_i <= bound_i.
  const auto ue = static_cast<Eigen::Index>(u);
  Eigen::MatrixXd remaining_min = Eigen::MatrixXd::Zero(ue, static_cast<Eigen::Index>(k + 1));
  Eigen::MatrixXd remaining_max = Eigen::MatrixXd::Zero(ue, static_cast<Eigen::Index>(k + 1));
  for (Eigen::Index j = static_cast<Eigen::Index>(k) - 1; j >= 1; --j) {
    for (Eigen::Index e = 0; e < ue; ++e) {
      const double span = solve(e, j) * pivot_bound[static_cast<std::size_t>(j)];
      remaining_min(e, j) = remaining_min(e, j + 1) + std::min(0.0, span);
      remaining_max(e, j) = remaining_max(e, j + 1) + std::max(0.0, span);
    }
  }

  const double tol = options.integrality_tolerance;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<ModularInvariant> found;
  const auto n = static_cast<Eigen::Index>(data.size());
  std::uint64_t nodes = 0;

  auto accept_leaf = [&](const Eigen::VectorXd& z_values) {
    for (Eigen::Index e = 0; e < ue; ++e) {
      const double v = z_values(e);
      const double r = std::round(v);
      if (std::abs(v - r) > tol || r < 0 || r > static_cast<double>(entry_bound[static_cast<std::size_t>(e)]))
        return;
    }
    ModularInvariant inv;
    inv.level = data.level;
    inv.z = IntMatrix::Zero(n, n);
    for (std::size_t e = 0; e < u; ++e)
      inv.z(static_cast<Eigen::Index>(basis.entries[e].first), static_cast<Eigen::Index>(basis.entries[e].second)) =
          static_cast<std::int64_t>(std::round(z_values(static_cast<Eigen::Index>(e))));
    if (seen.insert(row_major(inv.z)).second) {
      inv.s_residual = commutator_residual(inv.z.cast<double>(), data.s);
      inv.t_exact = true;
      found.push_back(std::move(inv));
    }
  };

  // Depth-first over the free pivots. At depth j every entry e must still be
  // able to land in [0, bound_e]; that confines z_j to an interval.
  auto search = [&](auto&& self, std::size_t depth, const Eigen::VectorXd& partial) -> void {
    if (depth == k) {
      accept_leaf(partial);
      return;
    }
    const auto j = static_cast<Eigen::Index>(depth);
    double lo = 0;
    double hi = pivot_bound[depth];
    for (Eigen::Index e = 0; e < ue && lo <= hi; ++e) {
      const double low_rest = partial(e) + remaining_min(e, j + 1);
      const double high_rest = partial(e) + remaining_max(e, j + 1);
      const double upper = static_cast<double>(entry_bound[static_cast<std::size_t>(e)]) + tol;
      const double coeff = solve(e, j);
      if (std::abs(coeff) < 1e-12) {
        if (high_rest < -tol || low_rest > upper) return;
        continue;
      }
      double a = (-tol - high_rest) / coeff;
      double b = (upper - low_rest) / coeff;
      if (coeff < 0) std::swap(a, b);
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    }
    const auto first = static_cast<std::int64_t>(std::ceil(lo - 1e-9));
    const auto last = static_cast<std::int64_t>(std::floor(hi + 1e-9));
    for (std::int64_t value = first; value <= last; ++value) {
      if (++nodes > options.budget) {
        std::ostringstream msg;
        msg << "enumeration at level " << data.level << " exceeded the budget of " << options.budget
            << " search nodes";
        throw ResourceError(msg.str());
      }
      self(self, depth + 1, partial + static_cast<double>(value) * solve.col(j));
    }
  };
  search(search, 1, solve.col(0));

  std::sort(found.begin(), found.end(),
            [](const ModularInvariant& a, const ModularInvariant& b) { return invariant_order(a.z, b.z); });
  return found;
}

InvariantReport verify_invariant(const Eigen::MatrixXd& z, const ModularData& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  if (z.rows() != n || z.cols() != n) {
    std::ostringstream msg;
    msg << "matrix is " << z.rows() << "x" << z.cols() << ", modular data has dimension " << n;
    throw DomainError(msg.str());
  }
  InvariantReport report;
  report.dimension_ok = true;
  report.nonnegative = n == 0 || z.minCoeff() >= 0;
  report.integral = (z.array() == z.array().round()).all();
  report.vacuum_normalized = n > 0 && z(0, 0) == 1;
  report.t_commutes = true;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (z(a, b) != 0 && data.t_exponents[static_cast<std::size_t>(a)] != data.t_exponents[static_cast<std::size_t>(b)])
        report.t_commutes = false;
  report.s_residual = commutator_residual(z, data.s);
  report.s_commutes = report.s_residual < data.tolerance;
  report.passed = report.nonnegative && report.integral && report.vacuum_normalized && report.t_commutes &&
                  report.s_commutes;
  return report;
}

InvariantReport verify_invariant(const IntMatrix& z, const ModularData& data) {
  return verify_invariant(Eigen::MatrixXd(z.cast<double>()), data);
}

}  // namespace modinv

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "modinv/modulardata.hpp"

namespace modinv {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Sectors grouped by exact T exponent. Classes are ordered by their smallest
/// member, so the vacuum's class is first.
struct TClassPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;

  bool same_class(std::size_t a, std::size_t b) const { return class_of[a] == class_of[b]; }
  /// Entries (a, b) allowed to be nonzero by ZT = TZ, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> allowed_entries() const;
};

/// Orthonormal basis (entrywise inner product) of the real solutions of
/// ZS = SZ, ZT = TZ. Column j of `coordinates` holds basis vector j on the
/// sparsity pattern `entries`.
struct CommutantBasis {
  std::size_t rank = 0;  // matrix size n
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  Eigen::MatrixXd coordinates;
  /// Smallest discarded eigenvalue of the normal equations, i.e. the spectral
  /// gap that separated the null space (infinity when nothing was discarded).
  double spectral_gap = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(coordinates.cols()); }
  Eigen::MatrixXd matrix(std::size_t j) const;
};

struct ModularInvariant {
  int level = 0;
  IntMatrix z;
  double s_residual = 0;  // max |ZS - SZ|
  bool t_exact = true;    // ZT = TZ with exact T exponents

  std::int64_t trace() const { return z.trace(); }
};

struct SearchOptions {
  /// Eigenvalues of the commutant normal matrix below this span the null space.
  double null_threshold = 1e-8;
  /// Eigenvalues in [null_threshold, instability_band) make the rank ambiguous.
  double instability_band = 1e-3;
  double integrality_tolerance = 1e-6;
  /// Upper bound on the number of search nodes (pivot value assignments).
  std::uint64_t budget = 50'000'000;
};

struct InvariantReport {
  bool dimension_ok = false;
  bool nonnegative = false;
  bool integral = false;
  bool vacuum_normalized = false;  // Z_00 = 1
  bool t_commutes = false;
  double s_residual = 0;
  bool s_commutes = false;
  bool passed = false;
};

TClassPartition t_classes(const ModularData& data);

/// Throws NumericalInstabilityError when the spectrum near zero does not show
/// a clean gap, or a returned vector fails to commute with S.
CommutantBasis commutant_basis(const ModularData& data, const SearchOptions& options = {});

/// Entry bound ceil(d_a d_b) used to prune the search.
IntMatrix entry_bounds(const ModularData& data);

/// All nonnegative integer points of the commutant with Z_00 = 1 and
/// 0 <= Z_ab <= ceil(d_a d_b), sorted by trace descending then row-major
/// lexicographic order.
std::vector<ModularInvariant> enumerate_invariants(const ModularData& data, const SearchOptions& options = {});

/// Same search over a caller-supplied basis of the commutant.
std::vector<ModularInvariant> enumerate_invariants(const ModularData& data, const CommutantBasis& basis,
                                                   const SearchOptions& options = {});

/// Throws DomainError on dimension mismatch; everything else is reported.
InvariantReport verify_invariant(const Eigen::MatrixXd& z, const ModularData& data);
InvariantReport verify_invariant(const IntMatrix& z, const ModularData& data);

/// Canonical ordering used by enumerate_invariants.
bool invariant_order(const IntMatrix& a, const IntMatrix& b);

}  // namespace modinv

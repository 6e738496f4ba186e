#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modinv/invariantsearch.hpp"
#include "modinv/kacdata.hpp"

namespace modinv {

enum class DynkinFamily { A, D, E };

struct DynkinDiagram {
  DynkinFamily family = DynkinFamily::A;
  int rank = 1;
  int coxeter_number = 2;
  std::vector<int> exponents;  // sorted, with multiplicity

  std::string name() const;  // "A10", "D16", "E6"
  Eigen::MatrixXd adjacency() const;
  /// A_n, D_even, E6 and E8 label local extensions; D_odd and E7 do not.
  bool type_one() const;

  friend bool operator==(const DynkinDiagram& a, const DynkinDiagram& b) {
    return a.family == b.family && a.rank == b.rank;
  }
};

DynkinDiagram dynkin_a(int rank);
DynkinDiagram dynkin_d(int rank);  // rank >= 4
DynkinDiagram dynkin_e(int rank);  // rank in {6, 7, 8}

/// Parses "A10", "D5", "E8".
DynkinDiagram parse_dynkin(const std::string& name);

/// Every A/D/E diagram with Coxeter number <= max_coxeter, ordered by
/// Coxeter number then family. Each diagram's adjacency spectrum is checked
/// against its exponents; a mismatch throws ConsistencyError.
std::vector<DynkinDiagram> dynkin_catalog(int max_coxeter);

enum class InvariantType { I, II };

struct InvariantLabel {
  DynkinDiagram first;   // Coxeter number m, indexed by p
  DynkinDiagram second;  // Coxeter number m+1, indexed by q
  InvariantType type = InvariantType::I;

  std::string to_string() const;  // "(A10,E6)"
  friend bool operator==(const InvariantLabel& a, const InvariantLabel& b) {
    return a.first == b.first && a.second == b.second && a.type == b.type;
  }
};

/// Parses "(A10,E6)" and derives the type from the diagrams.
InvariantLabel parse_label(const std::string& text);

struct DiagonalExponents {
  std::vector<int> first;   // p values with multiplicity
  std::vector<int> second;  // q values with multiplicity
};

/// Reads the diagonal of Z on the unfolded Kac grid, where both
/// representatives of a class carry Z's diagonal entry, and factors it as an
/// outer product of p- and q-multiplicities. If the diagonal does not factor,
/// the returned multisets are the row/column marginals reduced by their gcd.
DiagonalExponents diagonal_exponents(const ModularInvariant& z, const MinimalModel& model);

/// Unique CIZ pair (G1, G2) with h(G1) = m, h(G2) = m+1 matching the diagonal
/// exponents. Throws ClassificationError on no match or several matches.
InvariantLabel match_invariant(const ModularInvariant& z, const MinimalModel& model,
                               const std::vector<DynkinDiagram>& catalog);

std::vector<InvariantLabel> physical_filter(const std::vector<InvariantLabel>& labels);

}  // namespace modinv

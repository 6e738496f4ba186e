#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modinv/kacdata.hpp"

namespace modinv {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kFusionTolerance = 1e-6;

/// S and T for a set of sectors. T is diagonal and kept exactly: entry i is
/// exp(2 pi i t_exponents[i]) with t_exponents[i] in [0, 1).
struct ModularData {
  int level = 0;
  Rational central_charge;
  std::vector<KacLabel> labels;
  Eigen::MatrixXd s;
  std::vector<Rational> t_exponents;
  double tolerance = kDefaultTolerance;

  std::size_t size() const { return labels.size(); }
  Eigen::VectorXcd t_phases() const;
};

struct Sl2zReport {
  double tolerance = kDefaultTolerance;
  double orthogonality = 0;       // |S S^T - I|
  double symmetry = 0;            // |S - S^T|
  double charge_conjugation = 0;  // |S^2 - C|
  double modular_relation = 0;    // |(S T)^3 - S^2|
  double s_fourth_power = 0;      // |S^4 - I|
  bool conjugation_is_permutation = false;
  std::vector<std::size_t> conjugation;  // C as a permutation, when it is one
  bool passed = false;

  /// Name and residual of the largest violated relation, for error messages.
  std::string worst_relation() const;
};

/// A fusion ring N_{ab}^c stored densely, index order (a, b, c).
class FusionTable {
public:
  FusionTable() = default;
  explicit FusionTable(std::size_t rank);

  std::size_t rank() const { return rank_; }
  int operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return entries_[(a * rank_ + b) * rank_ + c];
  }
  int& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return entries_[(a * rank_ + b) * rank_ + c];
  }
  /// (N_a)_{bc} = N_{ab}^c
  Eigen::MatrixXd fusion_matrix(std::size_t a) const;

  /// Sectors whose fusion matrix is a permutation (quantum dimension 1).
  std::vector<std::size_t> invertible_sectors() const;

private:
  std::size_t rank_ = 0;
  std::vector<int> entries_;
};

/// Exact T exponents h - c/24 reduced mod 1, in primary order.
std::vector<Rational> modular_t_matrix(const MinimalModel& model);

/// S matrix of the minimal model with T attached. Throws ConsistencyError if
/// the result fails verify_sl2z at the given tolerance.
ModularData modular_s_matrix(const MinimalModel& model, double tolerance = kDefaultTolerance);

/// Never throws; failures are reported in the result.
Sl2zReport verify_sl2z(const ModularData& data);

/// Verlinde formula. Entries farther than integrality_tolerance from a
/// nonnegative integer raise FusionIntegralityError.
FusionTable fusion_rules(const ModularData& data, double integrality_tolerance = kFusionTolerance);

/// d_a = S_{0a} / S_{00}
std::vector<double> quantum_dimensions(const ModularData& data);

/// Global dimension sum_a d_a^2.
double mu_index(const ModularData& data);

/// 4 cos^2(pi/k) for k = 3..max_m.
std::vector<double> jones_index_values(int max_m);

}  // namespace modinv

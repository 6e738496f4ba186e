#include "modinv/modulardata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modinv/errors.hpp"

namespace modinv {

namespace {

// sin(pi * k / n) with k reduced mod 2n first, so large products of Kac
// indices do not lose precision in the argument.
double sin_pi_ratio(std::int64_t k, std::int64_t n) {
  k %= 2 * n;
  if (k < 0) k += 2 * n;
  return std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

void require_valid(const ModularData& data, const char* operation) {
  Sl2zReport report = verify_sl2z(data);
  if (!report.passed)
    throw ConsistencyError(std::string(operation) + " requires valid modular data: " + report.worst_relation());
}

}  // namespace

Eigen::VectorXcd ModularData::t_phases() const {
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(t_exponents.size()));
  for (std::size_t i = 0; i < t_exponents.size(); ++i)
    phases(static_cast<Eigen::Index>(i)) = std::polar(1.0, 2.0 * std::numbers::pi * to_double(t_exponents[i]));
  return phases;
}

std::string Sl2zReport::worst_relation() const {
  struct Item {
    const char* name;
    double value;
  };
  const Item items[] = {{"S S^T = I", orthogonality},
                        {"S = S^T", symmetry},
                        {"S^2 = C", charge_conjugation},
                        {"(S T)^3 = S^2", modular_relation},
                        {"S^4 = I", s_fourth_power}};
  const Item* worst = std::max_element(std::begin(items), std::end(items),
                                       [](const Item& a, const Item& b) { return a.value < b.value; });
  std::ostringstream out;
  if (!conjugation_is_permutation && worst->value < tolerance) {
    out << "S^2 is not a permutation matrix";
  } else {
    out << worst->name << " violated, residual " << worst->value;
  }
  return out.str();
}

FusionTable::FusionTable(std::size_t rank) : rank_(rank), entries_(rank * rank * rank, 0) {}

Eigen::MatrixXd FusionTable::fusion_matrix(std::size_t a) const {
  const auto n = static_cast<Eigen::Index>(rank_);
  Eigen::MatrixXd m(n, n);
  for (std::size_t b = 0; b < rank_; ++b)
    for (std::size_t c = 0; c < rank_; ++c) m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) = (*this)(a, b, c);
  return m;
}

std::vector<std::size_t> FusionTable::invertible_sectors() const {
  std::vector<std::size_t> result;
  for (std::size_t a = 0; a < rank_; ++a) {
    bool permutation = true;
    for (std::size_t b = 0; b < rank_ && permutation; ++b) {
      int row = 0;
      for (std::size_t c = 0; c < rank_; ++c) row += (*this)(a, b, c);
      permutation = row == 1;
    }
    if (permutation) result.push_back(a);
  }
  return result;
}

std::vector<Rational> modular_t_matrix(const MinimalModel& model) {
  const Rational shift = model.central_charge / 24;
  std::vector<Rational> exponents;
  exponents.reserve(model.size());
  for (const KacLabel& label : model.primaries) exponents.push_back(fractional_part(label.weight - shift));
  return exponents;
}

ModularData modular_s_matrix(const MinimalModel& model, double tolerance) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  ModularData data;
  data.level = model.level;
  data.central_charge = model.central_charge;
  data.labels = model.primaries;
  data.t_exponents = modular_t_matrix(model);
  data.tolerance = tolerance;

  const std::int64_t m = model.level;
  const auto n = static_cast<Eigen::Index>(model.size());
  const double norm = std::sqrt(8.0 / static_cast<double>(m * (m + 1)));
  data.s.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const KacLabel& a = model.primaries[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const KacLabel& b = model.primaries[static_cast<std::size_t>(j)];
      const std::int64_t sign_exponent = 1 + std::int64_t{a.p} * b.q + std::int64_t{a.q} * b.p;
      const double sign = (sign_exponent % 2 == 0) ? 1.0 : -1.0;
      data.s(i, j) = norm * sign * sin_pi_ratio((m + 1) * a.p * b.p, m) * sin_pi_ratio(m * a.q * b.q, m + 1);
    }
  }
  if (data.s(0, 0) < 0) data.s = -data.s;

  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(data.s(0, j) > 0))
      throw ConsistencyError("vacuum row of S is not strictly positive at column " + std::to_string(j));
  }
  Sl2zReport report = verify_sl2z(data);
  if (!report.passed)
    throw ConsistencyError("modular data for level " + std::to_string(m) + ": " + report.worst_relation());
  return data;
}

Sl2zReport verify_sl2z(const ModularData& data) {
  Sl2zReport report;
  report.tolerance = data.tolerance;
  const Eigen::MatrixXd& s = data.s;
  const Eigen::Index n = s.rows();
  if (s.cols() != n || static_cast<std::size_t>(n) != data.t_exponents.size()) {
    report.orthogonality = report.symmetry = report.charge_conjugation = report.modular_relation =
        report.s_fourth_power = std::numeric_limits<double>::infinity();
    return report;
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd s2 = s * s;

  report.orthogonality = max_abs(s * s.transpose() - identity);
  report.symmetry = max_abs(s - s.transpose());
  report.s_fourth_power = max_abs(s2 * s2 - identity);

  // C = round(S^2), accepted only if it is a 0/1 permutation matrix.
  const Eigen::MatrixXd c = s2.array().round().matrix();
  report.charge_conjugation = max_abs(s2 - c);
  report.conjugation_is_permutation = true;
  report.conjugation.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> column_hits(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n && report.conjugation_is_permutation; ++i) {
    int hits = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (c(i, j) == 1.0) {
        ++hits;
        ++column_hits[static_cast<std::size_t>(j)];
        report.conjugation[static_cast<std::size_t>(i)] = static_cast<std::size_t>(j);
      } else if (c(i, j) != 0.0) {
        report.conjugation_is_permutation = false;
      }
    }
    if (hits != 1) report.conjugation_is_permutation = false;
  }
  if (report.conjugation_is_permutation)
    report.conjugation_is_permutation =
        std::all_of(column_hits.begin(), column_hits.end(), [](int h) { return h == 1; });
  if (!report.conjugation_is_permutation) report.conjugation.clear();

  const Eigen::MatrixXcd st = s.cast<std::complex<double>>() * data.t_phases().asDiagonal();
  report.modular_relation = max_abs(st * st * st - s2.cast<std::complex<double>>());

  const double tol = data.tolerance;
  report.passed = report.conjugation_is_permutation && report.orthogonality < tol && report.symmetry < tol &&
                  report.charge_conjugation < tol && report.modular_relation < tol && report.s_fourth_power < tol;
  return report;
}

FusionTable fusion_rules(const ModularData& data, double integrality_tolerance) {
  require_valid(data, "fusion_rules");
  const Eigen::MatrixXd& s = data.s;
  const Eigen::Index n = s.rows();
  const Eigen::MatrixXd s_conj = s;  // S is real
  FusionTable table(static_cast<std::size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a) {
    // (N_a)_{bc} = sum_x S_{bx} (S_{ax} / S_{0x}) conj(S_{cx})
    const Eigen::RowVectorXd weight = s.row(a).cwiseQuotient(s.row(0));
    const Eigen::MatrixXd na = (s.array().rowwise() * weight.array()).matrix() * s_conj.transpose();
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const double value = na(b, c);
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > integrality_tolerance || rounded < 0) {
          std::ostringstream msg;
          msg << "Verlinde entry N(" << a << "," << b << "," << c << ") = " << value
              << " is not a nonnegative integer within " << integrality_tolerance;
          throw FusionIntegralityError(msg.str());
        }
        table(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c)) =
            static_cast<int>(rounded);
      }
    }
  }
  return table;
}

std::vector<double> quantum_dimensions(const ModularData& data) {
  require_valid(data, "quantum_dimensions");
  std::vector<double> dims(data.size());
  for (std::size_t i = 0; i < dims.size(); ++i)
    dims[i] = data.s(0, static_cast<Eigen::Index>(i)) / data.s(0, 0);
  return dims;
}

double mu_index(const ModularData& data) {
  require_valid(data, "mu_index");
  // Accumulate in extended precision; at m = 30 the sum is near 1e6 and the
  // double-precision rounding drift alone exceeds 1e-9.
  const long double s00 = data.s(0, 0);
  long double sum = 0;
  for (Eigen::Index i = 0; i < data.s.cols(); ++i) {
    const long double d = data.s(0, i) / s00;
    sum += d * d;
  }
  return static_cast<double>(sum);
}

std::vector<double> jones_index_values(int max_m) {
  if (max_m < 3) throw DomainError("jones_index_values requires max_m >= 3, got " + std::to_string(max_m));
  std::vector<double> values;
  for (int k = 3; k <= max_m; ++k) {
    const double c = std::cos(std::numbers::pi / k);
    values.push_back(4 * c * c);
  }
  return values;
}

}  // namespace modinv

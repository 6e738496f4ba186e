// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance        run every criterion
//   acceptance <id>   run criterion <id> only (1..12)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modinv/catalog.hpp"
#include "support/oracles.hpp"

using namespace modinv;

namespace {

// Pinned tolerances.
constexpr double kRelationTolerance = 1e-9;
constexpr double kIntegralityTolerance = 1e-6;
constexpr double kMuTolerance = 1e-9;
constexpr double kSpectrumTolerance = 1e-9;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << what;
      else detail << "; " << what;
      passed = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

using Eigen::MatrixXi;

void central_charges(Outcome& o) {
  Rational previous(-1);
  for (int m = 2; m <= 40; ++m) {
    const Rational expected = Rational(1) - Rational(6, std::int64_t{m} * (m + 1));
    const Rational c = central_charge(m);
    o.require(c == expected, "c(" + std::to_string(m) + ") = " + to_string(c));
    o.require(c > previous && c < 1, "not increasing toward 1 at m=" + std::to_string(m));
    previous = c;
  }
}

void modular_relations(Outcome& o) {
  double worst = 0;
  for (int m = 3; m <= 30; ++m) {
    const Sl2zReport r = verify_sl2z(modular_s_matrix(kac_table(m)));
    const double level_worst = std::max({r.orthogonality, r.symmetry, r.charge_conjugation, r.modular_relation,
                                         r.s_fourth_power});
    worst = std::max(worst, level_worst);
    o.require(level_worst < kRelationTolerance && r.conjugation_is_permutation,
              "m=" + std::to_string(m) + " residual " + std::to_string(level_worst));
  }
  if (o.passed) o.detail << "max residual " << std::scientific << std::setprecision(2) << worst;
}

void fusion_integrality(Outcome& o) {
  for (int m = 3; m <= 12; ++m) {
    const ModularData data = modular_s_matrix(kac_table(m));
    const auto n = static_cast<std::size_t>(data.size());
    // Raw Verlinde sums, computed independently of the library's fusion code.
    const Eigen::MatrixXd& s = data.s;
    double worst = 0;
    std::vector<MatrixXi> mats(n, MatrixXi::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          double v = 0;
          for (std::size_t x = 0; x < n; ++x) {
            const auto i = [](std::size_t k) { return static_cast<Eigen::Index>(k); };
            v += s(i(a), i(x)) * s(i(b), i(x)) * s(i(c), i(x)) / s(0, i(x));
          }
          const double r = std::round(v);
          worst = std::max(worst, std::abs(v - r));
          o.require(r >= 0, "negative multiplicity at m=" + std::to_string(m));
          mats[a](static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) = static_cast<int>(r);
        }
    o.require(worst < kIntegralityTolerance, "m=" + std::to_string(m) + " integrality defect " + std::to_string(worst));
    const FusionTable table = fusion_rules(data);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table(a, b, c) != mats[a](static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)))
            o.require(false, "library fusion differs at m=" + std::to_string(m));
    // (a x b) x c = a x (b x c)  <=>  N_a N_b = sum_e N_ab^e N_e
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        MatrixXi rhs = MatrixXi::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t e = 0; e < n; ++e)
          if (int k = mats[a](static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(e))) rhs += k * mats[e];
        if (mats[a] * mats[b] != rhs) {
          o.require(false, "associativity fails at m=" + std::to_string(m));
          return;
        }
      }
  }
}

void mu_consistency(Outcome& o) {
  double worst = 0;
  for (int m = 3; m <= 30; ++m) {
    const ModularData data = modular_s_matrix(kac_table(m));
    const double mu = mu_index(data);
    const double inverse = 1.0 / (data.s(0, 0) * data.s(0, 0));
    worst = std::max(worst, std::abs(mu - inverse));
    o.require(std::abs(mu - inverse) < kMuTolerance,
              [&] {
                std::ostringstream s;
                s << "m=" << m << " mu=" << std::setprecision(17) << mu << " 1/S00^2=" << inverse;
                return s.str();
              }());
    if (m == 3) o.require(std::abs(mu - 4) < kMuTolerance, "mu(3) = " + std::to_string(mu));
  }
  if (o.passed) o.detail << "max difference " << std::scientific << std::setprecision(2) << worst;
}

void enumeration_counts(Outcome& o) {
  const std::vector<int> stated = {1, 1, 2, 2, 2, 2, 3, 3, 3, 3};
  std::ostringstream counts;
  for (int m = 3; m <= 12; ++m) {
    const auto n = static_cast<int>(enumerate_invariants(modular_s_matrix(kac_table(m))).size());
    counts << (m == 3 ? "" : ",") << n;
    o.require(n == oracle::ade_pair_count(m), "m=" + std::to_string(m) + " count " + std::to_string(n) +
                                                   " != ADE pair count " + std::to_string(oracle::ade_pair_count(m)));
    o.require(n == stated[static_cast<std::size_t>(m - 3)],
              "m=" + std::to_string(m) + " count " + std::to_string(n) + " != listed " +
                  std::to_string(stated[static_cast<std::size_t>(m - 3)]));
  }
  o.detail << " [counts " << counts.str() << "]";
}

std::set<std::string> label_set(int m) {
  std::set<std::string> out;
  for (const auto& l : classify_level(m).labels) out.insert(l.to_string());
  return out;
}

void exceptional_levels(Outcome& o) {
  const std::set<std::string> e29 = {"(A28,A29)", "(A28,D16)", "(A28,E8)"};
  const std::set<std::string> e30 = {"(A29,A30)", "(D16,A30)", "(E8,A30)"};
  const LevelClassification l29 = classify_level(29), l30 = classify_level(30);
  o.require(l29.invariants.size() == 3, "m=29 has " + std::to_string(l29.invariants.size()) + " invariants");
  o.require(l30.invariants.size() == 3, "m=30 has " + std::to_string(l30.invariants.size()) + " invariants");
  o.require(label_set(29) == e29, "m=29 labels differ");
  o.require(label_set(30) == e30, "m=30 labels differ");
  o.require(l30.labels.front().to_string() == "(A29,A30)" && l30.invariants.front().z.isIdentity(),
            "m=30 diagonal invariant is not (A29,A30)");
}

void chiral_catalog(Outcome& o) {
  const auto list = chiral_net_list(30);
  std::map<std::string, int> exceptional;
  std::map<int, int> diagonal;
  std::map<int, FusionTable> fusion;
  for (const auto& e : list) {
    if (e.family == NetFamily::Exceptional) ++exceptional[e.label.to_string()];
    if (e.family == NetFamily::VirasoroDiagonal) ++diagonal[e.level];
    if (e.family != NetFamily::SimpleCurrentIndex2) continue;
    const auto d_even = [](const DynkinDiagram& g) { return g.family == DynkinFamily::D && g.rank % 2 == 0; };
    o.require(d_even(e.label.first) || d_even(e.label.second), e.label.to_string() + " lacks a D_even diagram");
    if (!fusion.count(e.level)) fusion.emplace(e.level, fusion_rules(modular_s_matrix(kac_table(e.level))));
    o.require(identify_simple_current(e, fusion.at(e.level)), e.label.to_string() + " has no simple current");
  }
  for (const char* l : {"(E6,A12)", "(A10,E6)", "(E8,A30)", "(A28,E8)"})
    o.require(exceptional[l] == 1, std::string(l) + " appears " + std::to_string(exceptional[l]) + " times");
  o.require(exceptional.size() == 4, "unexpected exceptional entries");
  for (int m = 3; m <= 30; ++m) o.require(diagonal[m] == 1, "level " + std::to_string(m) + " diagonal count");
}

void full_catalog(Outcome& o) {
  const auto full = full_2d_list(18);
  const auto chiral = chiral_net_list(18);
  std::set<std::string> labels;
  for (const auto& e : full) labels.insert(e.label.to_string());
  o.require(labels.count("(A16,E7)") == 1, "(A16,E7) missing");
  o.require(labels.count("(E7,A18)") == 1, "(E7,A18) missing");
  std::vector<std::pair<int, std::string>> a, b;
  for (const auto& e : full)
    if (e.label.type == InvariantType::I) a.emplace_back(e.level, e.label.to_string());
  for (const auto& e : chiral) b.emplace_back(e.level, e.label.to_string());
  o.require(a == b, "type I restriction differs from the chiral list");
}

void dynkin_spectra(Outcome& o) {
  for (const auto& g : dynkin_catalog(30)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency(), Eigen::EigenvaluesOnly);
    std::vector<double> expected;
    for (int e : g.exponents) expected.push_back(2 * std::cos(std::numbers::pi * e / g.coxeter_number));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < g.rank; ++i)
      o.require(std::abs(solver.eigenvalues()(i) - expected[static_cast<std::size_t>(i)]) < kSpectrumTolerance,
                g.name() + " spectrum");
  }
}

void jones_indices(Outcome& o) {
  const auto v = jones_index_values(20);
  o.require(v.size() >= 2, "fewer than two values");
  for (std::size_t i = 1; i < v.size(); ++i) o.require(v[i] > v[i - 1], "not strictly increasing");
  for (double x : v) o.require(x < 4, "value >= 4");
  if (v.size() >= 2) {
    o.require(std::abs(v[0] - 1) < 1e-12, "first value " + std::to_string(v[0]));
    o.require(std::abs(v[1] - 2) < 1e-12, "second value " + std::to_string(v[1]));
  }
}

void virasoro_jacobi(Outcome& o) {
  auto outer = [](std::int64_t i, const VirasoroBracket& inner) {
    VirasoroBracket r = virasoro_bracket(i, inner.mode);
    r.linear_coefficient *= inner.linear_coefficient;
    r.central_coefficient *= inner.linear_coefficient;
    return r;
  };
  int triples = 0;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j)
      for (int k = -10; k <= 10; ++k, ++triples) {
        const auto a = outer(i, virasoro_bracket(j, k));
        const auto b = outer(j, virasoro_bracket(k, i));
        const auto c = outer(k, virasoro_bracket(i, j));
        const bool ok = a.mode == b.mode && b.mode == c.mode &&
                        a.linear_coefficient + b.linear_coefficient + c.linear_coefficient == 0 &&
                        a.central_coefficient + b.central_coefficient + c.central_coefficient == 0;
        if (!ok) {
          o.require(false, "Jacobi fails at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
          return;
        }
      }
  o.detail << triples << " triples";
}

void oracle_equivalence(Outcome& o) {
  for (int m : {3, 4, 5}) {
    const ModularData data = modular_s_matrix(kac_table(m));
    std::set<std::vector<std::int64_t>> ours;
    for (const auto& z : enumerate_invariants(data)) {
      const IntMatrix rm = z.z.transpose();  // column-major storage of the transpose is row-major Z
      ours.insert(std::vector<std::int64_t>(rm.data(), rm.data() + rm.size()));
    }
    o.require(ours == oracle::brute_force_invariants(data), "m=" + std::to_string(m) + " sets differ");
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "central charge table is exact and increasing", 1, central_charges},
      {2, "modular relations hold for m in [3,30]", 30, modular_relations},
      {3, "Verlinde fusion is integral and associative for m in [3,12]", 60, fusion_integrality},
      {4, "mu-index equals 1/S00^2 for m in [3,30]", 10, mu_consistency},
      {5, "invariant counts for m = 3..12", 120, enumeration_counts},
      {6, "levels 29 and 30 carry the E8 invariants", 600, exceptional_levels},
      {7, "chiral catalog up to level 30", 600, chiral_catalog},
      {8, "full catalog up to level 18 contains the E7 invariants", 600, full_catalog},
      {9, "Dynkin spectra up to h = 30", 5, dynkin_spectra},
      {10, "Jones index values", 1, jones_indices},
      {11, "Virasoro Jacobi identity for |index| <= 10", 5, virasoro_jacobi},
      {12, "brute-force and commutant enumerators agree for m in {3,4,5}", 300, oracle_equivalence},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    try {
      only = std::stoi(argv[1]);
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion-id]\n";
      return 2;
    }
  }
  int failures = 0, ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s)
      outcome.require(false, "took " + std::to_string(elapsed) + " s, limit " + std::to_string(c.time_limit_s) + " s");
    char id[8];
    std::snprintf(id, sizeof id, "AC%02d", c.id);
    std::cout << (outcome.passed ? "[PASS] " : "[FAIL] ") << id << " " << c.title << " (" << std::fixed
              << std::setprecision(2) << elapsed << " s)";
    const std::string detail = outcome.detail.str();
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << std::endl;
    if (!outcome.passed) ++failures;
  }
  if (ran == 0) {
    std::cerr << "no criterion with id " << only << "\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

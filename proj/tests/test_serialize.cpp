#include <catch_amalgamated.hpp>

#include <random>

#include "modinv/errors.hpp"
#include "modinv/serialize.hpp"

using namespace modinv;

TEST_CASE("rational text round-trips", "[serialize][property]") {
  std::mt19937_64 rng(20261015);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000), den(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Rational r(num(rng), den(rng));
    CHECK(parse_rational(to_string(r)) == r);
  }
  CHECK(to_string(Rational(7, 10)) == "7/10");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("4") == Rational(4));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2 "), ParseError);
}

TEST_CASE("doubles print in shortest round-trip form", "[serialize][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("modular data JSON round-trip", "[serialize]") {
  for (int m : {2, 3, 7, 12}) {
    const ModularData data = modular_s_matrix(kac_table(m));
    const Json j = to_json(data);
    CHECK(j.at("level") == m);
    const ModularData back = modular_data_from_json(Json::parse(j.dump()));
    CHECK(back.level == data.level);
    CHECK(back.central_charge == data.central_charge);
    CHECK(back.t_exponents == data.t_exponents);
    REQUIRE(back.labels.size() == data.labels.size());
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      CHECK(back.labels[i].p == data.labels[i].p);
      CHECK(back.labels[i].weight == data.labels[i].weight);
    }
    CHECK((back.s - data.s).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(modular_data_from_json(Json{{"level", 3}}), ParseError);
}

TEST_CASE("invariant JSON round-trip", "[serialize]") {
  const ModularData data = modular_s_matrix(kac_table(11));
  for (const auto& z : enumerate_invariants(data)) {
    const ModularInvariant back = invariant_from_json(Json::parse(to_json(z).dump()));
    CHECK(back.level == z.level);
    CHECK(back.z == z.z);
    CHECK(back.t_exact == z.t_exact);
    CHECK(back.s_residual == z.s_residual);
  }
}

TEST_CASE("matrix files", "[serialize]") {
  const MinimalModel model = kac_table(3);
  const ModularData data = modular_s_matrix(model);
  const ModularInvariant z = enumerate_invariants(data).front();

  SECTION("written files parse back") {
    const MatrixFile file = parse_matrix_file(to_matrix_file(z, model).dump(2));
    CHECK(file.level == 3);
    CHECK(file.labels.size() == 3);
    CHECK(file.z == z.z.cast<double>());
  }
  SECTION("labels may be pairs and level may be absent") {
    const MatrixFile file = parse_matrix_file(R"({"labels": [[1,1],[1,2],[2,1]], "Z": [[1,0,0],[0,1,0],[0,0,1]]})");
    CHECK_FALSE(file.level.has_value());
    CHECK(file.labels[1] == std::pair{1, 2});
  }
  SECTION("syntax errors carry a position") {
    try {
      parse_matrix_file("{\n  \"Z\": [[1, 0],\n         [0, 1]\n  oops\n}");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(e.column() >= 3);
    }
  }
  SECTION("structural errors") {
    CHECK_THROWS_AS(parse_matrix_file(R"({"Z": [[1, 0], [0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file(R"({"Z": [["a"]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file(R"([1, 2])"), ParseError);
  }
}

TEST_CASE("catalog entries serialise their family", "[serialize]") {
  const auto full = full_2d_list(11);
  bool saw_null = false;
  for (const auto& e : full) {
    const Json j = to_json(e, true);
    CHECK(j.contains("matrix"));
    if (e.label.type == InvariantType::II) {
      CHECK(j.at("family").is_null());
      CHECK(j.at("type") == "II");
      saw_null = true;
    }
  }
  CHECK(saw_null);
  const auto chiral = chiral_net_list(3);
  const Json j = to_json(chiral.front(), false);
  CHECK(j.at("family") == "virasoro-diagonal");
  CHECK_FALSE(j.contains("matrix"));
  CHECK(j.at("central_charge") == "1/2");
}

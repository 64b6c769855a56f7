#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmetric/errors.hpp"
#include "qmetric/io.hpp"
#include "qmetric/sampling.hpp"

using namespace qmetric;
using io::json;

TEST_CASE("round trips") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_space(1 + t % 6, rng);
    const auto alg = random_algebra(3, 3, rng);
    // written values are rounded to 12 digits, so compare at that scale
    const auto y = io::read_space(io::write(x));
    CHECK(y.labels() == x.labels());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(y.d(i, j) - x.d(i, j)) <= 1e-11);
    CHECK(io::read_algebra(io::write(alg)) == alg);
    const auto a = random_element(alg, rng);
    CHECK(max_norm(io::read_element(io::write(a), alg) - a, alg) <= 1e-11);
    const auto f = random_sa_function(x, alg, rng);
    const auto g = io::read_function(io::write(f));
    CHECK(sup_norm(f - g) <= 1e-10);
    const auto s = random_alg_state(alg, rng);
    const auto s2 = io::read_alg_state(io::write(s), alg);
    CHECK(std::abs(k_mu(s2) - k_mu(s)) <= 1e-9);
  }
}

TEST_CASE("num keeps twelve digits") {
  CHECK(io::num(1.0 / 3.0) == 0.333333333333);
  CHECK(io::num(0.0) == 0.0);
  CHECK(io::num(-0.0) == 0.0);
  CHECK(io::num(2.0) == 2.0);
}

TEST_CASE("functional states by label or index") {
  const auto x = io::read_space(json::parse(R"({"dist": [[0, 1], [1, 0]], "labels": ["a", "b"]})"));
  const Algebra alg({2});
  const auto j = json::parse(R"({"terms": [
      {"w": 0.5, "x": "b", "phi": {"weights": [1], "densities": [[[1, 0], [0, 0]]]}},
      {"w": 0.5, "x": 0, "phi": {"weights": [1], "densities": [[[0.5, 0], [0, 0.5]]]}}]})");
  const auto s = io::read_functional_state(j, x, alg);
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms()[0].point == 1);
  CHECK(s.terms()[1].point == 0);
}

TEST_CASE("errors carry a location") {
  const Algebra alg({2});
  CHECK_THROWS_WITH_AS(io::read_algebra(json::parse(R"({"blocks": [2, 0]})")), doctest::Contains("blocks[1]"),
                       StructuralError);
  CHECK_THROWS_WITH_AS(io::read_element(json::parse(R"([[[1, 0], [0, "x"]]])"), alg),
                       doctest::Contains("element[0][1][1]"), StructuralError);
  CHECK_THROWS_WITH_AS(io::read_space(json::parse(R"({"dist": [[0, 1], [1]]})")), doctest::Contains("row 1"),
                       std::exception);
  CHECK_THROWS_AS(io::read_space(json::parse(R"({"dist": [[0, 1], [2, 0]]})")), PreconditionError);
  CHECK_THROWS_WITH_AS(io::read_space(json::parse(R"({"dist": [[0, 1], [1, 0]], "labels": [true, 1]})")),
                       doctest::Contains("labels"), StructuralError);
  const auto x = io::read_space(json::parse(R"({"dist": [[0]], "labels": ["p"]})"));
  CHECK_THROWS_WITH_AS(io::read_functional_state(
                           json::parse(R"({"terms": [{"w": 1, "x": "q", "phi": {"weights": [1], "densities": [[[1,0],[0,0]]]}}]})"),
                           x, alg),
                       doctest::Contains("\"q\""), StructuralError);
  CHECK_THROWS_AS(io::parse_file("/nonexistent/file.json"), StructuralError);
}

TEST_CASE("extension problems") {
  const auto p = io::read_extension(json::parse(
      R"({"space": {"dist": [[0,1,2],[1,0,1],[2,1,0]], "labels": ["a","b","c"]}, "subset": ["a", 2], "values": [0, 2], "K": 1})"));
  CHECK(p.subset == std::vector<std::size_t>{0, 2});
  CHECK(p.values == std::vector<double>{0.0, 2.0});
  CHECK(p.K == 1.0);
  CHECK_THROWS_AS(io::read_extension(json::parse(R"({"space": {"dist": [[0]]}, "subset": [0], "values": []})")),
                  StructuralError);
}

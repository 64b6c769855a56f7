#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmetric/errors.hpp"
#include "qmetric/funcspace.hpp"
#include "qmetric/generators.hpp"
#include "qmetric/sampling.hpp"

using namespace qmetric;

namespace {

const Complex I(0.0, 1.0);

FiniteMetricSpace two(double d) { return FiniteMetricSpace::validate({{0, d}, {d, 0}}); }

SeminormSpec spec(NormKind n, QKind q, double K = 1.0) { return SeminormSpec{n, q, std::nullopt, K}; }

SeminormSpec state_spec(NormKind n, const FiniteMetricSpace& x, const Algebra& alg, Rng& rng) {
  SeminormSpec s{n, QKind::state, random_pure_state(x, alg, rng), 1.0};
  return s;
}

// every spec that makes sense on a given C(X, A)
std::vector<SeminormSpec> all_specs(const FiniteMetricSpace& x, const Algebra& alg, Rng& rng) {
  std::vector<SeminormSpec> out;
  for (auto n : {NormKind::op, NormKind::max, NormKind::real_max}) {
    out.push_back(spec(n, QKind::quotient_CX));
    out.push_back(spec(n, QKind::quotient_C));
    out.push_back(state_spec(n, x, alg, rng));
  }
  out.push_back(spec(NormKind::real_max, QKind::conv));
  out.push_back(spec(NormKind::real_max, QKind::conv_K, std::max(diameter(x), 0.5)));
  return out;
}

std::vector<double> random_reals(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return f;
}

std::vector<Complex> as_complex(const std::vector<double>& f) { return {f.begin(), f.end()}; }

}  // namespace

TEST_CASE("lip part examples") {
  Algebra c({1});
  const auto x = two(1.0);
  const auto constant = classical_embed(x, {2.0, 2.0}, c);
  CHECK(lip_part(constant, NormKind::op) == 0.0);
  CHECK(lip_part(classical_embed(x, {0.0, 3.0}, c), NormKind::op) == doctest::Approx(3.0));

  Algebra a2({2});
  const auto flip = matrix_unit(a2, 0, 1, 2) + matrix_unit(a2, 0, 2, 1);
  MatrixFunction f(two(2.0), a2, {AlgElement::zero(a2), flip});
  CHECK(lip_part(f, NormKind::op) == doctest::Approx(0.5));
  CHECK(lip_part(f, NormKind::real_max) == doctest::Approx(0.5));
  CHECK(lip_part(f, NormKind::max) == doctest::Approx(0.5));

  const auto single = FiniteMetricSpace::validate({{0.0}});
  CHECK(lip_part(MatrixFunction(single, a2, {flip}), NormKind::op) == 0.0);
}

TEST_CASE("q term examples") {
  Algebra c({1});
  const auto x = two(1.0);
  const auto f = classical_embed(x, {0.0, 3.0}, c);
  CHECK(q_term(f, spec(NormKind::op, QKind::quotient_CX)) == 0.0);
  CHECK(q_term(f, spec(NormKind::op, QKind::quotient_C)) == doctest::Approx(1.5));

  Algebra a2({2});
  const auto single = FiniteMetricSpace::validate({{0.0}});
  const AlgElement h({CMatrix(2, {0, 1.0 + I, 1.0 - I, 0})});
  CHECK(q_term(MatrixFunction(single, a2, {h}), spec(NormKind::real_max, QKind::conv)) == doctest::Approx(1.0));
  CHECK(q_term(MatrixFunction(single, a2, {h}), spec(NormKind::real_max, QKind::conv_K, 4.0)) ==
        doctest::Approx(0.5));
}

TEST_CASE("realmax without self-adjointness is refused") {
  Algebra a2({2});
  MatrixFunction f(two(1.0), a2, {AlgElement::zero(a2), matrix_unit(a2, 0, 1, 2)});
  CHECK_THROWS_AS(lip_part(f, NormKind::real_max), PreconditionError);
  CHECK_THROWS_AS(lipnorm(f, spec(NormKind::real_max, QKind::conv)), PreconditionError);
  CHECK_THROWS_AS(spec(NormKind::real_max, QKind::conv_K, 0.0).check(), PreconditionError);
  CHECK_THROWS_AS(spec(NormKind::op, QKind::state).check(), PreconditionError);
}

TEST_CASE("self-adjoint coordinates") {
  Algebra alg({2, 3});
  const auto lay = sa_layout(alg);
  CHECK(lay.size() == 4 + 9);
  CHECK(lay.size() == alg.sa_dimension());
  CHECK(lay[0].row == 0);
  CHECK(lay[0].col == 0);
  CHECK_FALSE(lay[0].imag);
  CHECK(lay[1].col == 1);
  CHECK_FALSE(lay[1].imag);
  CHECK(lay[2].imag);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_self_adjoint(alg, rng);
    CHECK(from_sa_coordinates(alg, sa_coordinates(a)) == a);
  }
}

TEST_CASE("kernel is the scalars") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_space(1 + t % 5, rng);
    const auto alg = random_algebra(3, 3, rng);
    for (const auto& s : all_specs(x, alg, rng)) {
      const double lam = std::uniform_real_distribution<double>(-3, 3)(rng);
      const Complex z = s.norm == NormKind::max ? Complex(lam, 0.7) : Complex(lam);
      MatrixFunction k(x, alg, std::vector<AlgElement>(x.size(), AlgElement::scalar(alg, z)));
      CHECK(lipnorm(k, s) <= 1e-12);
      auto p = k;
      p.at(0) += Complex(1e-3) * random_self_adjoint(alg, rng);
      if (x.size() > 1 || alg.max_block() > 1) CHECK(lipnorm(p, s) > 0.0);
    }
  }
  Algebra a2({2});
  const auto c5 = circle_net(5);
  const auto id = MatrixFunction(c5, a2, std::vector<AlgElement>(5, AlgElement::identity(a2)));
  CHECK(lipnorm(id, spec(NormKind::real_max, QKind::conv)) == 0.0);
}

TEST_CASE("seminorm axioms") {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto x = random_space(2 + t % 5, rng);
    const auto alg = random_algebra(2, 3, rng);
    for (const auto& s : all_specs(x, alg, rng)) {
      const auto a = random_sa_function(x, alg, rng), b = random_sa_function(x, alg, rng);
      const double la = lipnorm(a, s), lb = lipnorm(b, s);
      CHECK(lipnorm(a + b, s) <= la + lb + 1e-12 * (1 + la + lb));
      const double c = std::uniform_real_distribution<double>(-3, 3)(rng);
      CHECK(std::abs(lipnorm(Complex(c) * a, s) - std::abs(c) * la) <= 1e-12 * (1 + la * std::abs(c)));
    }
  }
}

TEST_CASE("classical functions recover the Lipschitz constant") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_space(2 + t % 9, rng);
    const auto alg = random_algebra(3, 3, rng);
    const auto f = random_reals(x.size(), rng);
    const double want = oracle::lipschitz(x, f);
    const auto a = classical_embed(x, as_complex(f), alg);
    CHECK(std::abs(lipnorm(a, spec(NormKind::op, QKind::quotient_CX)) - want) <= 1e-12 * (1 + want));
    CHECK(std::abs(classical_lipschitz(x, f) - want) <= 1e-12 * (1 + want));
    const auto ac = classical_embed(x, as_complex(f), Algebra({1}));
    CHECK(std::abs(lipnorm(ac, spec(NormKind::real_max, QKind::conv_K, diameter(x))) - want) <= 1e-12 * (1 + want));
    CHECK(std::abs(lipnorm(a, spec(NormKind::real_max, QKind::conv_K, diameter(x))) - want) <= 1e-12 * (1 + want));
  }
  const auto x = two(1.0);
  const auto one = classical_embed(x, {1.0, 1.0}, Algebra({2}));
  for (std::size_t i = 0; i < 2; ++i) CHECK(one.at(i) == AlgElement::identity(Algebra({2})));
}

TEST_CASE("classical embedding is linear") {
  Rng rng(5);
  const auto x = random_space(6, rng);
  const Algebra alg({2, 1});
  const auto f = random_reals(6, rng), g = random_reals(6, rng);
  std::vector<Complex> h(6);
  for (std::size_t i = 0; i < 6; ++i) h[i] = 2.0 * f[i] - 3.0 * g[i];
  const auto lhs = classical_embed(x, h, alg);
  const auto rhs = Complex(2.0) * classical_embed(x, as_complex(f), alg) - Complex(3.0) * classical_embed(x, as_complex(g), alg);
  for (std::size_t i = 0; i < 6; ++i) CHECK(max_norm(lhs.at(i) - rhs.at(i), alg) <= 1e-14);
}

TEST_CASE("quotient terms are ordered") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_space(1 + t % 6, rng);
    const auto alg = random_algebra(3, 3, rng);
    const auto a = random_sa_function(x, alg, rng);
    for (auto n : {NormKind::op, NormKind::max, NormKind::real_max}) {
      const double cx = q_term(a, spec(n, QKind::quotient_CX));
      const double c = q_term(a, spec(n, QKind::quotient_C));
      CHECK(cx <= c + 1e-12);
      for (int k = 0; k < 3; ++k) CHECK(c <= q_term(a, state_spec(n, x, alg, rng)) + 1e-12);
    }
  }
}

TEST_CASE("specs are mutually equivalent on random elements") {
  Rng rng(7);
  const auto x = random_space(5, rng);
  const Algebra alg({2, 3});
  const auto specs = all_specs(x, alg, rng);
  std::vector<std::vector<double>> lo(specs.size(), std::vector<double>(specs.size(), 1e300));
  std::vector<std::vector<double>> hi(specs.size(), std::vector<double>(specs.size(), 0.0));
  for (int t = 0; t < 500; ++t) {
    const auto a = random_sa_function(x, alg, rng);
    std::vector<double> v;
    for (const auto& s : specs) v.push_back(lipnorm(a, s));
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t j = 0; j < specs.size(); ++j) {
        lo[i][j] = std::min(lo[i][j], v[i] / v[j]);
        hi[i][j] = std::max(hi[i][j], v[i] / v[j]);
      }
  }
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = 0; j < specs.size(); ++j) {
      CHECK(lo[i][j] > 0.0);
      CHECK(std::isfinite(hi[i][j]));
    }
}

TEST_CASE("quasi-Leibniz") {
  Algebra a2({2});
  const auto x = two(1.0);
  const auto id = MatrixFunction(x, a2, {AlgElement::identity(a2), AlgElement::identity(a2)});
  const auto r0 = quasi_leibniz_check(id, id, spec(NormKind::op, QKind::quotient_CX), 1.0, 0.0);
  CHECK(r0.rhs == 0.0);
  CHECK(r0.jordan_lhs == 0.0);
  CHECK(r0.lie_lhs == 0.0);
  CHECK_FALSE(r0.violated);

  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_space(2 + t % 5, rng);
    const auto alg = random_algebra(3, 3, rng);
    const auto a = random_sa_function(x, alg, rng), b = random_sa_function(x, alg, rng);
    CHECK_FALSE(quasi_leibniz_check(a, b, spec(NormKind::op, QKind::quotient_CX), 1.0, 0.0).violated);
    const auto conv = spec(NormKind::real_max, QKind::conv);
    const double m = static_cast<double>(alg.max_block());
    CHECK(leibniz_constant(conv, alg) == std::sqrt(2.0) * m);
    CHECK_FALSE(quasi_leibniz_check(a, b, conv, std::sqrt(2.0) * m, 0.0).violated);
    // every spec with its own constant
    for (const auto& s : all_specs(x, alg, rng)) {
      const auto r = quasi_leibniz_check(a, b, s, leibniz_constant(s, alg), 0.0);
      CHECK_MESSAGE(!r.violated, to_string(s.norm) << "/" << to_string(s.q) << " slack " << r.slack);
    }
  }
}

TEST_CASE("Jordan and Lie products") {
  Rng rng(9);
  const auto x = random_space(3, rng);
  const Algebra alg({2, 2});
  const auto a = random_sa_function(x, alg, rng), b = random_sa_function(x, alg, rng);
  const auto j = jordan(a, b), l = lie(a, b);
  CHECK(j.is_self_adjoint(1e-12));
  CHECK(l.is_self_adjoint(1e-12));
  const auto ab = a * b;
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(max_norm(j.at(i) + Complex(0, 1) * l.at(i) - ab.at(i), alg) <= 1e-14);
}

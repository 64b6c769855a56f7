#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "qmetric/errors.hpp"
#include "qmetric/generators.hpp"
#include "qmetric/propinquity.hpp"
#include "qmetric/sampling.hpp"

using namespace qmetric;

namespace {

const double kLp = 1e-7;

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// inf-convolution written out on the joined matrix, clamped to the data range
MatrixFunction by_formula(const Bridge& br, const MatrixFunction& a) {
  const std::size_t nx = br.joined.x.size(), ny = br.joined.y.size();
  const std::size_t w = br.algebra.sa_dimension();
  std::vector<std::vector<double>> c(nx);
  for (std::size_t i = 0; i < nx; ++i) c[i] = sa_coordinates(a.at(i));
  std::vector<AlgElement> out;
  for (std::size_t j = 0; j < ny; ++j) {
    std::vector<double> v(w);
    for (std::size_t k = 0; k < w; ++k) {
      double lo = c[0][k], hi = c[0][k], best = INFINITY;
      for (std::size_t i = 0; i < nx; ++i) {
        lo = std::min(lo, c[i][k]);
        hi = std::max(hi, c[i][k]);
        best = std::min(best, c[i][k] + br.joined.joined[i][nx + j]);
      }
      v[k] = std::clamp(best, lo, hi);
    }
    out.push_back(from_sa_coordinates(br.algebra, v));
  }
  return MatrixFunction(br.joined.y, br.algebra, out);
}

}  // namespace

TEST_CASE("a space against itself") {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_space(3 + t % 4, rng);
    const Algebra alg({2});
    const double eps = 1e-3 * (1 + t);
    const auto br = build_bridge(x, x, x.matrix(), eps, alg);
    CHECK(br.delta_xy == 0.0);
    CHECK(br.height == 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::find(br.w_set.begin(), br.w_set.end(), std::pair{i, i}) != br.w_set.end());
    for (const auto& a : sample_unit_ball(x, alg, conv_spec(), 3, 10 + t)) {
      const auto m = match_element(br, a);
      // the copy of x sits at the offset from x, which is all the extension can move
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(real_max_norm(m.b.at(i) - a.at(i), alg) <= br.offset + 1e-12);
      CHECK(m.record.w_defect <= br.offset + 1e-12);
      CHECK(m.record.ok);
    }
    const auto pb = propinquity_upper_bound(x, x, x.matrix(), eps, alg, 2, 5);
    CHECK(pb.bound == eps / 2);
  }
}

TEST_CASE("offsets and thresholds") {
  const auto x = circle_net(6);
  const Algebra alg({2, 3});
  const auto br = build_bridge(x, x, x.matrix(), 0.01, alg);
  CHECK(br.offset == doctest::Approx(0.01 / (8 * std::sqrt(2.0) * 3)));
  CHECK(br.threshold == doctest::Approx(0.01 / (2 * std::sqrt(2.0) * 3)));
  CHECK(br.joined.d(0, 6) == doctest::Approx(br.offset));
  std::size_t prev = 0;
  for (double eps : {1e-4, 1e-2, 0.5, 2.0, 8.0, 40.0}) {
    const auto b = build_bridge(x, x, x.matrix(), eps, alg);
    CHECK(b.threshold > 0.0);
    CHECK(b.w_set.size() >= prev);
    prev = b.w_set.size();
  }
  CHECK(prev > 6);
  CHECK_THROWS_AS(build_bridge(x, x, x.matrix(), 0.0, alg), PreconditionError);
}

TEST_CASE("W pairs every point with a nearest net point") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_space(8 + t % 5, rng);
    const auto net = epsilon_net(x, 0.3 + 0.02 * t);
    const auto br = build_bridge(subspace(x, net), x, restricted_cross(x, net), 1e-3, Algebra({2}));
    for (std::size_t y = 0; y < x.size(); ++y) {
      std::size_t near = 0;
      for (std::size_t k = 1; k < net.size(); ++k)
        if (x.d(net[k], y) < x.d(net[near], y)) near = k;
      CHECK(std::find(br.w_set.begin(), br.w_set.end(), std::pair{near, y}) != br.w_set.end());
    }
  }
}

TEST_CASE("joined spaces satisfy the triangle inequality") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_space(7, rng);
    const auto net = epsilon_net(x, 0.4);
    const auto br = build_bridge(subspace(x, net), x, restricted_cross(x, net), 0.01, random_algebra(2, 3, rng));
    const auto& d = br.joined.joined;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < d.size(); ++k) CHECK(d[i][k] <= d[i][j] + d[j][k] + 1e-12);
  }
}

TEST_CASE("matched elements follow the extension formula") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_space(9, rng);
    const auto alg = random_algebra(2, 2, rng);
    const auto net = epsilon_net(x, 0.35);
    const auto xn = subspace(x, net);
    const auto br = build_bridge(xn, x, restricted_cross(x, net), 0.01, alg);
    for (const auto& a : sample_unit_ball(xn, alg, conv_spec(), 4, 100 + t)) {
      const auto m = match_element(br, a);
      const auto want = by_formula(br, a);
      for (std::size_t j = 0; j < x.size(); ++j)
        CHECK(real_max_norm(m.b.at(j) - want.at(j), alg) <= 1e-12);
    }
  }
}

TEST_CASE("certificates re-verify from scratch") {
  Rng rng(5);
  for (int t = 0; t < 6; ++t) {
    const auto x = circle_net(12 + 2 * t);
    const Algebra alg = t % 2 ? Algebra({2, 1}) : Algebra({2});
    const auto net = epsilon_net(x, 0.2 + 0.05 * t);
    const auto xn = subspace(x, net);
    const auto fwd = build_bridge(xn, x, restricted_cross(x, net), 0.01, alg);
    const auto back = reverse(fwd);
    const double m = static_cast<double>(alg.max_block());
    auto check = [&](const Bridge& br, const MatrixFunction& a) {
      const auto matched = match_element(br, a);
      const auto b = by_formula(br, a);
      CHECK(lipnorm(b, conv_spec()) <= 1.0 + kLp);
      double wd = 0.0, od = 0.0;
      for (const auto& [i, j] : br.w_set) {
        wd = std::max(wd, real_max_norm(a.at(i) - b.at(j), alg));
        od = std::max(od, op_norm(a.at(i) - b.at(j), alg));
      }
      CHECK(wd <= br.threshold + kLp);
      CHECK(od <= std::sqrt(2.0) * m * br.threshold + kLp);
      CHECK(matched.record.w_defect == doctest::Approx(wd).epsilon(1e-9));
      CHECK(matched.record.ok);
    };
    for (const auto& a : sample_unit_ball(xn, alg, conv_spec(), 5, 7 * t)) check(fwd, a);
    for (const auto& a : sample_unit_ball(x, alg, conv_spec(), 5, 7 * t + 1)) check(back, a);
  }
}

TEST_CASE("classical algebra bound") {
  const auto x = circle_net(16);
  const auto net = epsilon_net(x, 0.3);
  const auto pb = propinquity_upper_bound(subspace(x, net), x, restricted_cross(x, net), 0.02, Algebra({1}), 3, 1);
  CHECK(pb.bound == doctest::Approx(std::sqrt(2.0) * pb.delta_xy + 0.01));
  CHECK(pb.certified());
  CHECK(pb.certificates.size() == 6);
}

TEST_CASE("circle nets of 8 and 16 points") {
  const auto fine = circle_net(16);
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < 16; i += 2) even.push_back(i);
  const Algebra alg({2});
  const double eps = 1e-3;
  const auto pb = propinquity_upper_bound(subspace(fine, even), fine, restricted_cross(fine, even), eps, alg, 4, 3);
  const double haus = hausdorff(fine, even, iota(16));
  CHECK(pb.delta_xy == doctest::Approx(haus));
  CHECK(pb.bound <= std::sqrt(2.0) * 2 * haus + eps / 2 + 1e-12);
  CHECK(pb.certified());
  // refining to all 16 points closes the gap to eps/2
  const auto same = propinquity_upper_bound(fine, fine, fine.matrix(), eps, alg, 2, 3);
  CHECK(same.bound < pb.bound);
}

TEST_CASE("swapping the spaces gives the same bound") {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_space(8, rng);
    const auto net = epsilon_net(x, 0.3);
    const auto cross = restricted_cross(x, net);
    DistMatrix tr(x.size(), std::vector<double>(net.size()));
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) tr[j][i] = cross[i][j];
    const Algebra alg({3});
    const auto xn = subspace(x, net);
    const auto a = propinquity_upper_bound(xn, x, cross, 0.01, alg, 1, 2);
    const auto b = propinquity_upper_bound(x, xn, tr, 0.01, alg, 1, 2);
    CHECK(std::memcmp(&a.bound, &b.bound, sizeof(double)) == 0);
  }
}

TEST_CASE("epsilon sweep on a space against itself") {
  const auto x = interval_net(6, 2.0);
  for (double eps : {1e-6, 1e-4, 1e-2, 0.1, 1.0}) {
    const auto pb = propinquity_upper_bound(x, x, x.matrix(), eps, Algebra({2, 2}), 2, 9);
    CHECK(pb.bound == eps / 2);
    CHECK(pb.certified());
  }
}

TEST_CASE("approximation table") {
  const auto x = circle_net(32);
  const Algebra alg({2});
  const double eps = 1e-3;
  std::vector<double> sched{0.5, 0.25, 0.12, 0.06, 0.01};
  const auto rows = approx_table(x, alg, sched, eps, 2, 11);
  REQUIRE(rows.size() == sched.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto net = epsilon_net(x, sched[r]);
    CHECK(rows[r].net_size == net.size());
    CHECK(rows[r].hausdorff == doctest::Approx(hausdorff(x, net, iota(32))));
    CHECK(rows[r].hausdorff <= diameter(x) + 1e-12);
    CHECK(rows[r].bound == doctest::Approx(std::sqrt(2.0) * 2 * rows[r].delta_xy + eps / 2));
    CHECK(rows[r].certified);
  }
  CHECK(rows.back().net_size == 32);  // below the minimal distance
  CHECK(rows.back().bound == eps / 2);
  CHECK(rows.back().bound < rows.front().bound);

  std::ostringstream os;
  write_table_csv(os, rows);
  const std::string csv = os.str();
  CHECK(csv.rfind("eps_n,net_size,hausdorff,delta_xy,bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK_THROWS_AS(approx_table(x, alg, {0.1, 0.2}, eps, 1, 1), PreconditionError);
}

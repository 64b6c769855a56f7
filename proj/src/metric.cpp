#include "qmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

// Full triangle check over a dense matrix; throws naming the first bad triple.
void check_triangles(const DistMatrix& d, double tol, const char* what) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j] + tol)
          throw PreconditionError(std::string(what) + ": triangle inequality fails for (" + idx(i) + "," + idx(j) +
                                  ") via " + idx(k) + ": " + std::to_string(d[i][j]) + " > " +
                                  std::to_string(d[i][k]) + " + " + std::to_string(d[k][j]));
}

void check_square(const DistMatrix& d, const char* what) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i].size() != d.size())
      throw StructuralError(std::string(what) + ": row " + idx(i) + " has " + idx(d[i].size()) + " entries, expected " +
                            idx(d.size()));
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::validate(const DistMatrix& dist, std::vector<std::string> labels,
                                              const Tolerances& tol) {
  check_square(dist, "metric");
  const std::size_t n = dist.size();
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(idx(i));
  if (labels.size() != n) throw StructuralError("metric: " + idx(labels.size()) + " labels for " + idx(n) + " points");
  {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw StructuralError("metric: duplicate point labels");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist[i][j];
      if (!std::isfinite(v)) throw PreconditionError("metric: non-finite distance at (" + idx(i) + "," + idx(j) + ")");
      if (v < -tol.metric) throw PreconditionError("metric: negative distance at (" + idx(i) + "," + idx(j) + ")");
    }
    if (std::abs(dist[i][i]) > tol.metric)
      throw PreconditionError("metric: nonzero self-distance at (" + idx(i) + "," + idx(i) + ")");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > tol.metric)
        throw PreconditionError("metric: symmetry fails at (" + idx(i) + "," + idx(j) + ")");
      if (dist[i][j] <= tol.metric)
        throw PreconditionError("metric: distinct points " + idx(i) + " and " + idx(j) + " at distance 0");
    }
  check_triangles(dist, tol.metric, "metric");

  FiniteMetricSpace x;
  x.n_ = n;
  x.labels_ = std::move(labels);
  x.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      x.dist_[i * n + j] = i == j ? 0.0 : 0.5 * (dist[i][j] + dist[j][i]);
  return x;
}

std::optional<std::size_t> FiniteMetricSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

DistMatrix FiniteMetricSpace::matrix() const {
  DistMatrix m(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = d(i, j);
  return m;
}

double diameter(const FiniteMetricSpace& x) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::max(best, x.d(i, j));
  return best;
}

double hausdorff(const FiniteMetricSpace& x, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) throw PreconditionError("hausdorff: subsets must be non-empty");
  for (std::size_t i : a)
    if (i >= x.size()) throw StructuralError("hausdorff: index " + idx(i) + " out of range");
  for (std::size_t i : b)
    if (i >= x.size()) throw StructuralError("hausdorff: index " + idx(i) + " out of range");

  auto one_sided = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
    double worst = 0.0;
    for (std::size_t i : from) {
      double near = std::numeric_limits<double>::infinity();
      for (std::size_t j : to) near = std::min(near, x.d(i, j));
      worst = std::max(worst, near);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

double distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  double worst = 0.0;
  for (const auto& [a, b] : pairs)
    for (const auto& [c, e] : pairs) worst = std::max(worst, std::abs(x.d(a, c) - y.d(b, e)));
  return worst;
}

namespace {

// Depth-first assignment of f (X -> Y) then g (Y -> X).  Every correspondence
// contains graph(f) u graph(g)^T for some pair of maps and distortion only
// grows with the relation, so the minimum is attained on such unions.
struct GhSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  double best;

  void run(std::size_t step, double current) {
    if (current >= best) return;
    const std::size_t nx = x.size();
    if (step == nx + y.size()) {
      best = current;
      return;
    }
    for (std::size_t choice = 0; choice < (step < nx ? y.size() : nx); ++choice) {
      const std::pair<std::size_t, std::size_t> p =
          step < nx ? std::pair{step, choice} : std::pair{choice, step - nx};
      double worst = current;
      for (const auto& [a, b] : rel) {
        worst = std::max(worst, std::abs(x.d(p.first, a) - y.d(p.second, b)));
        if (worst >= best) break;
      }
      if (worst >= best) continue;
      rel.push_back(p);
      run(step + 1, worst);
      rel.pop_back();
    }
  }
};

}  // namespace

double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t cap) {
  if (x.size() == 0 || y.size() == 0) throw PreconditionError("gh_exact: spaces must be non-empty");
  if (x.size() > cap || y.size() > cap)
    throw PreconditionError("gh_exact: spaces of size " + idx(x.size()) + " and " + idx(y.size()) +
                            " exceed the exhaustive-search cap " + idx(cap) + "; use gh_upper with a cross matrix");
  // any correspondence is a valid start; the all-pairs one has distortion
  // max(diam X, diam Y)
  GhSearch s{x, y, {}, std::max(diameter(x), diameter(y)) + 1.0};
  s.run(0, 0.0);
  return 0.5 * s.best;
}

JoinedSpace join(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross, double offset,
                 const Tolerances& tol) {
  if (cross.size() != x.size()) throw StructuralError("join: cross matrix needs " + idx(x.size()) + " rows");
  for (const auto& row : cross)
    if (row.size() != y.size()) throw StructuralError("join: cross matrix needs " + idx(y.size()) + " columns");
  if (!(offset >= 0.0) || !std::isfinite(offset)) throw PreconditionError("join: offset must be finite and >= 0");

  JoinedSpace j{x, y, cross, offset, {}};
  const std::size_t nx = x.size();
  const std::size_t n = nx + y.size();
  j.joined.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx; ++b) j.joined[a][b] = x.d(a, b);
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) j.joined[nx + a][nx + b] = y.d(a, b);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < y.size(); ++b) {
      const double v = cross[a][b];
      if (!std::isfinite(v) || v < -tol.metric)
        throw PreconditionError("join: cross distance (" + idx(a) + "," + idx(b) + ") is negative or non-finite");
      j.joined[a][nx + b] = j.joined[nx + b][a] = std::max(0.0, v) + offset;
    }
  // zero cross distances are allowed: the union is then a pseudometric, which
  // is all the Hausdorff bound needs
  check_triangles(j.joined, tol.metric, "join");
  return j;
}

double gh_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross,
                const Tolerances& tol) {
  const JoinedSpace j = join(x, y, cross, 0.0, tol);
  if (x.size() == 0 || y.size() == 0) throw PreconditionError("gh_upper: spaces must be non-empty");
  double worst = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < y.size(); ++b) near = std::min(near, cross[a][b]);
    worst = std::max(worst, near);
  }
  for (std::size_t b = 0; b < y.size(); ++b) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < x.size(); ++a) near = std::min(near, cross[a][b]);
    worst = std::max(worst, near);
  }
  return std::max(0.0, worst);
}

std::vector<std::size_t> epsilon_net(const FiniteMetricSpace& x, double eps, std::size_t seed) {
  if (!(eps > 0.0)) throw PreconditionError("epsilon_net: eps must be > 0");
  if (x.size() == 0) return {};
  if (seed >= x.size()) throw StructuralError("epsilon_net: seed index out of range");
  std::vector<std::size_t> net{seed};
  std::vector<double> gap(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) gap[i] = x.d(i, seed);
  for (;;) {
    // ties go to the lowest index, keeping the net deterministic
    std::size_t far = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (gap[i] > gap[far]) far = i;
    if (gap[far] <= eps) break;
    net.push_back(far);
    for (std::size_t i = 0; i < x.size(); ++i) gap[i] = std::min(gap[i], x.d(i, far));
  }
  return net;
}

FiniteMetricSpace scale(const FiniteMetricSpace& x, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("scale: factor must be > 0");
  auto m = x.matrix();
  for (auto& row : m)
    for (double& v : row) v *= c;
  return FiniteMetricSpace::validate(m, x.labels());
}

FiniteMetricSpace subspace(const FiniteMetricSpace& x, std::span<const std::size_t> indices) {
  DistMatrix m(indices.size(), std::vector<double>(indices.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= x.size()) throw StructuralError("subspace: index " + idx(indices[a]) + " out of range");
    labels.push_back(x.labels()[indices[a]]);
    for (std::size_t b = 0; b < indices.size(); ++b) m[a][b] = x.d(indices[a], indices[b]);
  }
  return FiniteMetricSpace::validate(m, std::move(labels));
}

DistMatrix restricted_cross(const FiniteMetricSpace& x, std::span<const std::size_t> indices) {
  DistMatrix m(indices.size(), std::vector<double>(x.size()));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= x.size()) throw StructuralError("restricted_cross: index out of range");
    for (std::size_t b = 0; b < x.size(); ++b) m[a][b] = x.d(indices[a], b);
  }
  return m;
}

}  // namespace qmetric

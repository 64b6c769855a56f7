#include "qmetric/propinquity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qmetric/errors.hpp"
#include "qmetric/mcshane.hpp"

namespace qmetric {

SeminormSpec conv_spec() { return SeminormSpec{NormKind::real_max, QKind::conv, std::nullopt, 1.0}; }

namespace {

double cross_hausdorff(const DistMatrix& cross, std::size_t nx, std::size_t ny) {
  double worst = 0.0;
  for (std::size_t a = 0; a < nx; ++a) {
    double near = cross[a][0];
    for (std::size_t b = 1; b < ny; ++b) near = std::min(near, cross[a][b]);
    worst = std::max(worst, near);
  }
  for (std::size_t b = 0; b < ny; ++b) {
    double near = cross[0][b];
    for (std::size_t a = 1; a < nx; ++a) near = std::min(near, cross[a][b]);
    worst = std::max(worst, near);
  }
  return worst;
}

DistMatrix transpose(const DistMatrix& m) {
  if (m.empty()) return {};
  DistMatrix t(m[0].size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace

Bridge build_bridge(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross, double epsilon,
                    const Algebra& alg, const Tolerances& tol) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("build_bridge: epsilon must be > 0");
  if (x.size() == 0 || y.size() == 0) throw PreconditionError("build_bridge: spaces must be non-empty");
  const double m = static_cast<double>(alg.max_block());
  const double offset = epsilon / (8.0 * std::sqrt(2.0) * m);

  Bridge b{join(x, y, cross, offset, tol), {}, alg, epsilon, offset, 0.0, 0.0, 0.0, {}};
  std::vector<std::string> labels;
  for (const auto& l : x.labels()) labels.push_back("x:" + l);
  for (const auto& l : y.labels()) labels.push_back("y:" + l);
  b.union_space = FiniteMetricSpace::validate(b.joined.joined, std::move(labels), tol);

  b.delta_xy = cross_hausdorff(b.joined.cross, x.size(), y.size());
  b.threshold = b.delta_xy + epsilon / (2.0 * std::sqrt(2.0) * m);
  std::vector<bool> hit_x(x.size(), false), hit_y(y.size(), false);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (b.joined.d(i, x.size() + j) <= b.threshold) {
        b.w_set.emplace_back(i, j);
        hit_x[i] = hit_y[j] = true;
      }
  if (std::find(hit_x.begin(), hit_x.end(), false) != hit_x.end() ||
      std::find(hit_y.begin(), hit_y.end(), false) != hit_y.end())
    throw InvariantError("build_bridge: W does not project onto both spaces");
  return b;
}

Bridge reverse(const Bridge& b, const Tolerances& tol) {
  return build_bridge(b.joined.y, b.joined.x, transpose(b.joined.cross), b.epsilon, b.algebra, tol);
}

Matched match_element(const Bridge& bridge, const MatrixFunction& a, const Tolerances& tol) {
  const auto& x = bridge.joined.x;
  const auto& y = bridge.joined.y;
  const Algebra& alg = bridge.algebra;
  if (a.size() != x.size() || !(a.algebra() == alg))
    throw StructuralError("match_element: element does not live on C(X, A) of the bridge");
  const auto spec = conv_spec();
  MatchRecord rec;
  rec.source_lipnorm = lipnorm(a, spec, tol);
  if (rec.source_lipnorm > 1.0 + tol.lp)
    throw PreconditionError("match_element: element has conv Lip-norm " + std::to_string(rec.source_lipnorm) + " > 1");

  const std::size_t w = alg.sa_dimension();
  const std::size_t nx = x.size();
  std::vector<std::vector<double>> coords(nx);
  for (std::size_t i = 0; i < nx; ++i) coords[i] = sa_coordinates(a.at(i));

  std::vector<std::size_t> subset(nx);
  for (std::size_t i = 0; i < nx; ++i) subset[i] = i;
  std::vector<std::vector<double>> out(y.size(), std::vector<double>(w));
  for (std::size_t c = 0; c < w; ++c) {
    ExtensionProblem p{bridge.union_space, subset, std::vector<double>(nx), 1.0};
    for (std::size_t i = 0; i < nx; ++i) p.values[i] = coords[i][c];
    std::vector<double> col(nx);
    for (std::size_t i = 0; i < nx; ++i) col[i] = p.values[i];
    // the coordinate is 1-Lipschitz up to LP rounding; never let the
    // extension reject it for that
    p.K = std::max(1.0, classical_lipschitz(x, col));
    const auto f = extend(p, tol);
    for (std::size_t j = 0; j < y.size(); ++j) out[j][c] = f[nx + j];
  }
  std::vector<AlgElement> vals;
  for (const auto& v : out) vals.push_back(from_sa_coordinates(alg, v));
  MatrixFunction b(y, alg, std::move(vals));

  rec.matched_lipnorm = lipnorm(b, spec, tol);
  const Complex r = pooled_scalar_fit(a.values(), alg, NormKind::real_max, tol).center;
  const auto shift = AlgElement::scalar(alg, r);
  for (const auto& v : b.values()) rec.matched_q_at_source_r = std::max(rec.matched_q_at_source_r, real_max_norm(v - shift, alg, tol));

  rec.w_threshold = bridge.threshold;
  rec.op_threshold = std::sqrt(2.0) * static_cast<double>(alg.max_block()) * bridge.threshold;
  for (const auto& [i, j] : bridge.w_set) {
    const AlgElement diff = a.at(i) - b.at(j);
    rec.w_defect = std::max(rec.w_defect, real_max_norm(diff, alg, tol));
    rec.op_defect = std::max(rec.op_defect, op_norm(diff, alg, tol));
  }
  rec.ok = rec.matched_lipnorm <= 1.0 + tol.lp && rec.matched_q_at_source_r <= 1.0 + tol.lp &&
           rec.w_defect <= rec.w_threshold + tol.lp && rec.op_defect <= rec.op_threshold + tol.lp;
  return {std::move(b), rec};
}

bool PropinquityBound::certified() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const MatchRecord& r) { return r.ok; });
}

PropinquityBound propinquity_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const DistMatrix& cross, double epsilon, const Algebra& alg,
                                         const std::vector<MatrixFunction>& samples_x,
                                         const std::vector<MatrixFunction>& samples_y, const Tolerances& tol) {
  const Bridge fwd = build_bridge(x, y, cross, epsilon, alg, tol);
  const Bridge back = reverse(fwd, tol);
  PropinquityBound pb;
  pb.delta_xy = fwd.delta_xy;
  pb.epsilon = epsilon;
  pb.height = fwd.height;
  pb.bound = std::sqrt(2.0) * static_cast<double>(alg.max_block()) * pb.delta_xy + epsilon / 2.0;
  for (std::size_t s = 0; s < samples_x.size(); ++s) {
    auto m = match_element(fwd, samples_x[s], tol);
    m.record.direction = "X->Y";
    m.record.sample = s;
    pb.certificates.push_back(m.record);
  }
  for (std::size_t s = 0; s < samples_y.size(); ++s) {
    auto m = match_element(back, samples_y[s], tol);
    m.record.direction = "Y->X";
    m.record.sample = s;
    pb.certificates.push_back(m.record);
  }
  return pb;
}

PropinquityBound propinquity_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const DistMatrix& cross, double epsilon, const Algebra& alg,
                                         std::size_t samples, std::uint64_t seed, const Tolerances& tol) {
  const auto spec = conv_spec();
  const auto sx = sample_unit_ball(x, alg, spec, samples, seed, {}, tol);
  const auto sy = sample_unit_ball(y, alg, spec, samples, seed + 1, {}, tol);
  return propinquity_upper_bound(x, y, cross, epsilon, alg, sx, sy, tol);
}

std::vector<ApproxRow> approx_table(const FiniteMetricSpace& x, const Algebra& alg,
                                    const std::vector<double>& eps_schedule, double epsilon, std::size_t samples,
                                    std::uint64_t seed, const Tolerances& tol) {
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw PreconditionError("approx_table: schedule entries must be > 0");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw PreconditionError("approx_table: schedule must be strictly decreasing");
  }
  const auto spec = conv_spec();
  // samples on the ground space are shared by every row
  const auto on_x = sample_unit_ball(x, alg, spec, samples, seed, {}, tol);
  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) all[i] = i;

  std::vector<ApproxRow> rows;
  for (std::size_t r = 0; r < eps_schedule.size(); ++r) {
    const auto net = epsilon_net(x, eps_schedule[r]);
    const auto xn = subspace(x, net);
    const auto cross = restricted_cross(x, net);
    const auto on_net = sample_unit_ball(xn, alg, spec, samples, seed + 1 + r, {}, tol);
    const auto pb = propinquity_upper_bound(xn, x, cross, epsilon, alg, on_net, on_x, tol);
    ApproxRow row;
    row.eps_n = eps_schedule[r];
    row.net_size = net.size();
    row.hausdorff = hausdorff(x, net, all);
    row.delta_xy = pb.delta_xy;
    row.bound = pb.bound;
    row.certificates = pb.certificates.size();
    row.certified = pb.certified();
    rows.push_back(row);
  }
  return rows;
}

void write_table_csv(std::ostream& os, const std::vector<ApproxRow>& rows) {
  const auto flags = os.flags();
  const auto prec = os.precision(12);
  os << "eps_n,net_size,hausdorff,delta_xy,bound\n";
  for (const auto& r : rows)
    os << r.eps_n << ',' << r.net_size << ',' << r.hausdorff << ',' << r.delta_xy << ',' << r.bound << '\n';
  os.precision(prec);
  os.flags(flags);
}

}  // namespace qmetric

#include "qmetric/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qmetric/errors.hpp"

namespace qmetric::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw StructuralError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

double real(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

CMatrix read_matrix_c(const json& j, std::size_t m, const std::string& where) {
  if (!j.is_array() || j.size() != m) bad(where, "expected " + std::to_string(m) + " rows");
  CMatrix out(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = j[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != m) bad(rw, "expected " + std::to_string(m) + " entries");
    for (std::size_t c = 0; c < m; ++c) {
      const auto& e = row[c];
      const std::string ew = rw + "[" + std::to_string(c) + "]";
      if (e.is_number()) {
        out(r, c) = e.get<double>();
      } else {
        if (!e.is_array() || e.size() != 2) bad(ew, "expected [re, im]");
        out(r, c) = Complex(real(e[0], ew), real(e[1], ew));
      }
    }
  }
  return out;
}

json write_c(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back({num(m(r, c).real()), num(m(r, c).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double num(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Algebra read_algebra(const json& j) {
  const auto& b = field(j, "blocks", "algebra");
  if (!b.is_array()) bad("algebra.blocks", "expected a list of block sizes");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b[i].is_number_integer() || b[i].get<long long>() < 1)
      bad("algebra.blocks[" + std::to_string(i) + "]", "expected a positive integer");
    sizes.push_back(b[i].get<std::size_t>());
  }
  return Algebra(sizes);
}

json write(const Algebra& a) { return {{"blocks", a.block_sizes()}}; }

AlgElement read_element(const json& j, const Algebra& alg) {
  if (!j.is_array() || j.size() != alg.block_count())
    bad("element", "expected " + std::to_string(alg.block_count()) + " blocks");
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k < alg.block_count(); ++k)
    blocks.push_back(read_matrix_c(j[k], alg.block_size(k), "element[" + std::to_string(k) + "]"));
  return AlgElement(std::move(blocks));
}

json write(const AlgElement& a) {
  json out = json::array();
  for (const auto& b : a.blocks()) out.push_back(write_c(b));
  return out;
}

AlgState read_alg_state(const json& j, const Algebra& alg, const Tolerances& tol) {
  const auto& w = field(j, "weights", "state");
  const auto& d = field(j, "densities", "state");
  if (!w.is_array() || w.size() != alg.block_count()) bad("state.weights", "expected one weight per block");
  if (!d.is_array() || d.size() != alg.block_count()) bad("state.densities", "expected one density per block");
  std::vector<double> weights;
  std::vector<CMatrix> dens;
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    weights.push_back(real(w[k], "state.weights[" + std::to_string(k) + "]"));
    dens.push_back(read_matrix_c(d[k], alg.block_size(k), "state.densities[" + std::to_string(k) + "]"));
  }
  return AlgState(alg, std::move(weights), std::move(dens), tol);
}

json write(const AlgState& s) {
  json dens = json::array();
  for (const auto& d : s.densities()) dens.push_back(write_c(d));
  json w = json::array();
  for (double t : s.weights()) w.push_back(num(t));
  return {{"weights", w}, {"densities", dens}};
}

DistMatrix read_matrix(const json& j, const char* what) {
  if (!j.is_array()) bad(what, "expected a matrix");
  DistMatrix m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) bad(std::string(what) + "[" + std::to_string(r) + "]", "expected a row");
    std::vector<double> row;
    for (std::size_t c = 0; c < j[r].size(); ++c)
      row.push_back(real(j[r][c], std::string(what) + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

FiniteMetricSpace read_space(const json& j, const Tolerances& tol) {
  const auto d = read_matrix(field(j, "dist", "space"), "space.dist");
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) bad("space.labels", "expected a list");
    for (const auto& l : *it) {
      if (l.is_string())
        labels.push_back(l.get<std::string>());
      else if (l.is_number_integer())
        labels.push_back(std::to_string(l.get<long long>()));
      else
        bad("space.labels", "labels must be strings or integers");
    }
  }
  return FiniteMetricSpace::validate(d, std::move(labels), tol);
}

json write(const FiniteMetricSpace& x) {
  json d = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < x.size(); ++k) row.push_back(num(x.d(i, k)));
    d.push_back(std::move(row));
  }
  return {{"labels", x.labels()}, {"dist", d}};
}

MatrixFunction read_function(const json& j, const Tolerances& tol) {
  auto x = read_space(field(j, "space", "function"), tol);
  auto alg = read_algebra(field(j, "algebra", "function"));
  const auto& v = field(j, "values", "function");
  if (!v.is_array() || v.size() != x.size()) bad("function.values", "expected one value per point");
  std::vector<AlgElement> vals;
  for (const auto& e : v) vals.push_back(read_element(e, alg));
  return MatrixFunction(std::move(x), std::move(alg), std::move(vals));
}

json write(const MatrixFunction& f) {
  json vals = json::array();
  for (const auto& v : f.values()) vals.push_back(write(v));
  return {{"space", write(f.space())}, {"algebra", write(f.algebra())}, {"values", vals}};
}

namespace {
std::size_t point_ref(const json& j, const FiniteMetricSpace& x, const std::string& where) {
  if (j.is_string()) {
    auto i = x.index_of(j.get<std::string>());
    if (!i) bad(where, "unknown point label \"" + j.get<std::string>() + "\"");
    return *i;
  }
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= x.size()) bad(where, "point index out of range");
    return static_cast<std::size_t>(v);
  }
  bad(where, "expected a point label or index");
}
}  // namespace

FunctionalState read_functional_state(const json& j, const FiniteMetricSpace& x, const Algebra& alg,
                                      const Tolerances& tol) {
  const auto& terms = field(j, "terms", "functional state");
  if (!terms.is_array()) bad("terms", "expected a list");
  std::vector<StateTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const double w = real(field(terms[i], "w", where), where + ".w");
    const auto p = point_ref(field(terms[i], "x", where), x, where + ".x");
    out.push_back(StateTerm{w, p, read_alg_state(field(terms[i], "phi", where), alg, tol)});
  }
  return FunctionalState(std::move(out), x.size(), alg, tol);
}

json write(const MkResult& r) {
  if (r.kind == MkResult::Kind::exact) {
    json j{{"kind", "exact"}, {"value", num(r.value)}};
    if (r.witness) j["witness"] = write(*r.witness);
    return j;
  }
  return {{"kind", "interval"}, {"lower", num(r.lower)}, {"upper", num(r.upper)}};
}

ExtensionProblem read_extension(const json& j, const Tolerances& tol) {
  ExtensionProblem p{read_space(field(j, "space", "problem"), tol), {}, {}, 1.0};
  const auto& s = field(j, "subset", "problem");
  const auto& v = field(j, "values", "problem");
  if (!s.is_array() || !v.is_array() || s.size() != v.size())
    bad("problem", "subset and values must be lists of equal length");
  for (std::size_t i = 0; i < s.size(); ++i) {
    p.subset.push_back(point_ref(s[i], p.space, "subset[" + std::to_string(i) + "]"));
    p.values.push_back(real(v[i], "values[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("K"); it != j.end()) p.K = real(*it, "problem.K");
  return p;
}

json write(const MatchRecord& r) {
  return {{"direction", r.direction},
          {"sample", r.sample},
          {"source_lipnorm", num(r.source_lipnorm)},
          {"matched_lipnorm", num(r.matched_lipnorm)},
          {"matched_q_at_source_r", num(r.matched_q_at_source_r)},
          {"w_defect", num(r.w_defect)},
          {"w_threshold", num(r.w_threshold)},
          {"op_defect", num(r.op_defect)},
          {"op_threshold", num(r.op_threshold)},
          {"ok", r.ok}};
}

json write(const ApproxRow& r) {
  return {{"eps_n", num(r.eps_n)},         {"net_size", r.net_size}, {"hausdorff", num(r.hausdorff)},
          {"delta_xy", num(r.delta_xy)},   {"bound", num(r.bound)},  {"certificates", r.certificates},
          {"certified", r.certified}};
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

}  // namespace qmetric::io

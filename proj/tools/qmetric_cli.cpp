// qmetric: command-line front end.
//
// Exit codes: 0 ok, 1 a check or bound was violated, 2 bad input.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmetric/errors.hpp"
#include "qmetric/generators.hpp"
#include "qmetric/io.hpp"
#include "qmetric/kernels.hpp"
#include "qmetric/version.hpp"

using namespace qmetric;
using io::json;
using io::num;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string spec_norm = "realmax";
  std::string spec_q = "conv";
  double K = 1.0;
  double eps = 1e-3;
  std::uint64_t seed = 0;
  std::size_t samples = 8;
  std::string out;
  std::string format = "json";
  int threads = 0;
  bool refine = false;
  std::string state_file;  // for --spec-q state
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Hash of the arguments that can change the report; --out and --threads cannot.
std::string config_hash(int argc, char** argv) {
  std::string canon;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out" || a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--threads=", 0) == 0) continue;
    canon += a;
    canon += '\x1f';
  }
  return hex(fnv1a(canon));
}

Tolerances env_tolerances() {
  const char* s = std::getenv("QMETRIC_TOL");
  if (!s) return {};
  try {
    return parse_tolerances(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("QMETRIC_TOL: ") + e.what());
  }
}

NormKind parse_norm(const std::string& s) {
  if (s == "op") return NormKind::op;
  if (s == "max") return NormKind::max;
  if (s == "realmax") return NormKind::real_max;
  throw InputError("--spec-norm must be op, max or realmax");
}

QKind parse_q(const std::string& s) {
  if (s == "cx") return QKind::quotient_CX;
  if (s == "c") return QKind::quotient_C;
  if (s == "state") return QKind::state;
  if (s == "conv") return QKind::conv;
  if (s == "convk") return QKind::conv_K;
  throw InputError("--spec-q must be cx, c, state, conv or convk");
}

SeminormSpec make_spec(const Common& c, const FiniteMetricSpace* x, const Algebra* alg, const Tolerances& tol) {
  SeminormSpec s;
  s.norm = parse_norm(c.spec_norm);
  s.q = parse_q(c.spec_q);
  s.K = c.K;
  if (s.q == QKind::state) {
    if (c.state_file.empty()) throw InputError("--spec-q state needs --state FILE");
    if (!x || !alg) throw InputError("--spec-q state needs a space and an algebra");
    s.state = io::read_functional_state(io::parse_file(c.state_file), *x, *alg, tol);
  }
  s.check();
  return s;
}

json spec_json(const SeminormSpec& s) {
  json j{{"norm", to_string(s.norm)}, {"q", to_string(s.q)}};
  if (s.q == QKind::conv_K) j["K"] = num(s.K);
  return j;
}

json header(const std::string& cmd, const std::string& hash) {
  return {{"command", cmd}, {"version", QMETRIC_VERSION}, {"config_hash", hash}};
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write " + c.out);
  f << text;
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

void require_json(const Common& c, const char* cmd) {
  if (c.format != "json") throw InputError(std::string(cmd) + ": only --format json is available");
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": cannot read '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum metric computations on C(X, A) for finite X and matrix algebras A"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--spec-norm", c.spec_norm, "op, max or realmax")->capture_default_str();
  app.add_option("--spec-q", c.spec_q, "cx, c, state, conv or convk")->capture_default_str();
  app.add_option("--K", c.K, "K for convk")->capture_default_str();
  app.add_option("--eps", c.eps, "bridge epsilon")->capture_default_str();
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--samples", c.samples, "unit-ball samples per side")->capture_default_str();
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "json or csv")->capture_default_str();
  app.add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)");
  app.add_flag("--refine", c.refine, "16-gon refinement for interval mk");
  app.add_option("--state", c.state_file, "functional state file for --spec-q state");
  app.fallthrough();

  std::string algebra_file, element_file, function_file, space_file, mu_file, nu_file, alg_state_file, trace_w;
  std::string x_file, y_file, cross_file, schedule, problem_file;
  std::size_t rows = 6;

  auto* norms = app.add_subcommand("norms", "three norms of an element plus the comparison checks");
  norms->add_option("--algebra", algebra_file)->required();
  norms->add_option("--element", element_file)->required();

  auto* lipc = app.add_subcommand("lipnorm", "Lipschitz part, q-term and Lip-norm of a function");
  lipc->add_option("--function", function_file)->required();

  auto* mkc = app.add_subcommand("mk", "Monge-Kantorovich distance between two states");
  mkc->add_option("--space", space_file)->required();
  mkc->add_option("--algebra", algebra_file)->required();
  mkc->add_option("--mu", mu_file)->required();
  mkc->add_option("--nu", nu_file)->required();

  auto* emb = app.add_subcommand("embed-check", "x -> mu_x against d on all pairs");
  emb->add_option("--space", space_file)->required();
  emb->add_option("--algebra", algebra_file)->required();
  emb->add_option("--alg-state", alg_state_file, "state on A (default: tracial)");
  emb->add_option("--trace-weights", trace_w, "block weights v for tr_v, comma separated");

  auto* ghc = app.add_subcommand("gh", "Gromov-Hausdorff distance (exact when small, upper bound from --cross)");
  ghc->add_option("--x", x_file)->required();
  ghc->add_option("--y", y_file)->required();
  ghc->add_option("--cross", cross_file, "JSON matrix of |X| x |Y| cross distances");

  auto* br = app.add_subcommand("bridge", "propinquity upper bound with match certificates");
  br->add_option("--x", x_file)->required();
  br->add_option("--y", y_file)->required();
  br->add_option("--cross", cross_file)->required();
  br->add_option("--algebra", algebra_file)->required();

  auto* ap = app.add_subcommand("approx", "epsilon-net approximation table");
  ap->add_option("--space", space_file)->required();
  ap->add_option("--algebra", algebra_file)->required();
  ap->add_option("--schedule", schedule, "comma separated net radii (default: halving from diam/2)");
  ap->add_option("--rows", rows, "rows of the default schedule")->capture_default_str();

  auto* ex = app.add_subcommand("extend", "McShane extension of a real function");
  ex->add_option("--problem", problem_file)->required();

  auto* gen = app.add_subcommand("gen", "generate a metric space");
  gen->require_subcommand(1);
  std::size_t gen_n = 8;
  std::string circle_metric = "chord";
  double gen_diam = 0.0, gen_len = 1.0;
  auto* gcirc = gen->add_subcommand("circle", "equally spaced circle points");
  gcirc->add_option("--n", gen_n)->required();
  gcirc->add_option("--metric", circle_metric, "chord or arc")->capture_default_str();
  gcirc->add_option("--diam", gen_diam, "rescale to this diameter");
  auto* gint = gen->add_subcommand("interval", "equally spaced points on [0, length]");
  gint->add_option("--n", gen_n)->required();
  gint->add_option("--length", gen_len)->capture_default_str();
  auto* grand = gen->add_subcommand("random", "uniform points in the unit square");
  grand->add_option("--n", gen_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string hash = config_hash(argc, argv);
  try {
    const Tolerances tol = env_tolerances();
    kernels::set_threads(c.threads);
    if (c.format != "json" && c.format != "csv") throw InputError("--format must be json or csv");
    MkOptions mko;
    mko.refine = c.refine;
    mko.lp.tol = tol.lp;

    if (*norms) {
      require_json(c, "norms");
      const auto alg = io::read_algebra(io::parse_file(algebra_file));
      const auto a = io::read_element(io::parse_file(element_file), alg);
      const double m = static_cast<double>(alg.max_block());
      const double op = op_norm(a, alg, tol);
      const double mx = max_norm(a, alg);
      const bool sa = a.is_self_adjoint(tol.sa);
      json r = header("norms", hash);
      r["op_norm"] = num(op);
      r["max_norm"] = num(mx);
      r["self_adjoint"] = sa;
      const double slack = 1e-12 * std::max(1.0, op);
      const bool max_ok = op / m <= mx + slack && mx <= op + slack;
      r["max_sandwich"] = max_ok;
      bool real_ok = true;
      if (sa) {
        const double rm = real_max_norm(a, alg, tol);
        r["real_max_norm"] = num(rm);
        real_ok = rm <= op + slack && op <= std::sqrt(2.0) * m * rm + slack;
        r["real_max_sandwich"] = real_ok;
      } else {
        r["real_max_norm"] = nullptr;
      }
      emit_json(c, r);
      return max_ok && real_ok ? 0 : 1;
    }

    if (*lipc) {
      require_json(c, "lipnorm");
      const auto f = io::read_function(io::parse_file(function_file), tol);
      const auto spec = make_spec(c, &f.space(), &f.algebra(), tol);
      json r = header("lipnorm", hash);
      r["spec"] = spec_json(spec);
      r["lip_part"] = num(lip_part(f, spec.norm, tol));
      r["q_term"] = num(q_term(f, spec, tol));
      r["lipnorm"] = num(lipnorm(f, spec, tol));
      emit_json(c, r);
      return 0;
    }

    if (*mkc) {
      require_json(c, "mk");
      const auto x = io::read_space(io::parse_file(space_file), tol);
      const auto alg = io::read_algebra(io::parse_file(algebra_file));
      const auto spec = make_spec(c, &x, &alg, tol);
      const auto mu = io::read_functional_state(io::parse_file(mu_file), x, alg, tol);
      const auto nu = io::read_functional_state(io::parse_file(nu_file), x, alg, tol);
      const auto res = mk_distance(mu, nu, x, alg, spec, mko, tol);
      json r = header("mk", hash);
      r["spec"] = spec_json(spec);
      r["result"] = io::write(res);
      emit_json(c, r);
      return res.lower <= res.upper + tol.lp ? 0 : 1;
    }

    if (*emb) {
      const auto x = io::read_space(io::parse_file(space_file), tol);
      const auto alg = io::read_algebra(io::parse_file(algebra_file));
      const auto spec = make_spec(c, &x, &alg, tol);
      AlgState mu = [&] {
        if (!alg_state_file.empty()) return io::read_alg_state(io::parse_file(alg_state_file), alg, tol);
        std::vector<double> v(alg.block_count(), 1.0 / static_cast<double>(alg.block_count()));
        if (!trace_w.empty()) v = parse_list(trace_w, "--trace-weights");
        return AlgState::tracial(alg, v, tol);
      }();
      const auto rep = embed_check(x, alg, mu, spec, mko, tol);
      if (c.format == "csv") {
        std::ostringstream os;
        os.precision(12);
        os << "i,j,d,mk\n";
        for (const auto& p : rep.pairs) os << x.labels()[p.i] << ',' << x.labels()[p.j] << ',' << p.d << ',' << p.mk << '\n';
        emit(c, os.str());
      } else {
        json r = header("embed-check", hash);
        r["spec"] = spec_json(spec);
        r["upper_constant"] = num(rep.upper_constant);
        r["lower_constant"] = num(rep.lower_constant);
        r["max_abs_defect"] = num(rep.max_abs_defect);
        r["max_rel_defect"] = num(rep.max_rel_defect);
        r["upper_violations"] = rep.upper_violations;
        r["lower_violations"] = rep.lower_violations;
        json pairs = json::array();
        for (const auto& p : rep.pairs)
          pairs.push_back({{"x", x.labels()[p.i]}, {"y", x.labels()[p.j]}, {"d", num(p.d)}, {"mk", num(p.mk)}});
        r["pairs"] = pairs;
        emit_json(c, r);
      }
      return rep.ok() ? 0 : 1;
    }

    if (*ghc) {
      require_json(c, "gh");
      const auto x = io::read_space(io::parse_file(x_file), tol);
      const auto y = io::read_space(io::parse_file(y_file), tol);
      json r = header("gh", hash);
      r["gh_exact"] = nullptr;
      r["gh_upper"] = nullptr;
      double exact = -1.0, upper = -1.0;
      if (x.size() <= 5 && y.size() <= 5) r["gh_exact"] = num(exact = gh_exact(x, y));
      if (!cross_file.empty()) {
        const auto cross = io::read_matrix(io::parse_file(cross_file), "cross");
        r["gh_upper"] = num(upper = gh_upper(x, y, cross, tol));
      }
      if (exact < 0.0 && upper < 0.0)
        throw InputError("spaces exceed the exact-search cap of 5 points; pass --cross for an upper bound");
      emit_json(c, r);
      return exact >= 0.0 && upper >= 0.0 && upper < exact - tol.metric ? 1 : 0;
    }

    if (*br) {
      require_json(c, "bridge");
      const auto x = io::read_space(io::parse_file(x_file), tol);
      const auto y = io::read_space(io::parse_file(y_file), tol);
      const auto alg = io::read_algebra(io::parse_file(algebra_file));
      const auto cross = io::read_matrix(io::parse_file(cross_file), "cross");
      const auto pb = propinquity_upper_bound(x, y, cross, c.eps, alg, c.samples, c.seed, tol);
      json r = header("bridge", hash);
      r["delta_xy"] = num(pb.delta_xy);
      r["delta_is_embedding_hausdorff"] = true;
      r["epsilon"] = num(pb.epsilon);
      r["height"] = num(pb.height);
      r["bound"] = num(pb.bound);
      json certs = json::array();
      for (const auto& m : pb.certificates) certs.push_back(io::write(m));
      r["certificates"] = certs;
      r["certified"] = pb.certified();
      emit_json(c, r);
      return pb.certified() ? 0 : 1;
    }

    if (*ap) {
      const auto x = io::read_space(io::parse_file(space_file), tol);
      const auto alg = io::read_algebra(io::parse_file(algebra_file));
      std::vector<double> sched;
      if (!schedule.empty()) {
        sched = parse_list(schedule, "--schedule");
      } else {
        double e = diameter(x) / 2.0;
        for (std::size_t i = 0; i < rows; ++i, e /= 2.0) sched.push_back(e);
      }
      const auto table = approx_table(x, alg, sched, c.eps, c.samples, c.seed, tol);
      bool ok = true;
      for (const auto& row : table) ok = ok && row.certified;
      if (c.format == "csv") {
        std::ostringstream os;
        write_table_csv(os, table);
        emit(c, os.str());
      } else {
        json r = header("approx", hash);
        r["epsilon"] = num(c.eps);
        r["delta_is_embedding_hausdorff"] = true;
        json t = json::array();
        for (const auto& row : table) t.push_back(io::write(row));
        r["rows"] = t;
        emit_json(c, r);
      }
      return ok ? 0 : 1;
    }

    if (*ex) {
      require_json(c, "extend");
      const auto p = io::read_extension(io::parse_file(problem_file), tol);
      const auto f = extend(p, tol);
      json r = header("extend", hash);
      json vals = json::object();
      for (std::size_t i = 0; i < f.size(); ++i) vals[p.space.labels()[i]] = num(f[i]);
      r["values"] = vals;
      emit_json(c, r);
      return 0;
    }

    if (*gen) {
      require_json(c, "gen");
      FiniteMetricSpace x;
      json r = header("gen", hash);
      if (*gcirc) {
        if (circle_metric != "chord" && circle_metric != "arc") throw InputError("--metric must be chord or arc");
        x = circle_net(gen_n, circle_metric == "chord" ? CircleMetric::chord : CircleMetric::arc, gen_diam);
        r["generator"] = "circle-" + circle_metric;
      } else if (*gint) {
        x = interval_net(gen_n, gen_len);
        r["generator"] = "interval";
      } else {
        x = random_planar(gen_n, c.seed);
        r["generator"] = "random-planar";
      }
      r["space"] = io::write(x);
      emit_json(c, r);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "qmetric: " << e.what() << '\n';
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "qmetric: input error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "qmetric: input error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "qmetric: internal check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qmetric: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

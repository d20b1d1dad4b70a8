#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ortho/auerbach.hpp"
#include "ortho/errors.hpp"
#include "ortho/formats.hpp"
#include "ortho/operators.hpp"
#include "ortho/orthogonality.hpp"
#include "ortho/report.hpp"
#include "ortho/suites.hpp"
#include "ortho/vector.hpp"

namespace {

// exit codes: 0 pass, 1 checked property fails, 2 usage, 3 numeric, 4 I/O

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ortho::io_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ortho::io_error("read failure on '" + path + "'");
  return ss.str();
}

struct PairArgs {
  std::string space, x, y, relation = "birkhoff";
  double tolerance = 0.0;  // 0 means take the config default
};

int run_check_pair(const PairArgs& a) {
  ortho::ScenarioConfig cfg = ortho::config_defaults();
  double tol = a.tolerance > 0.0 ? a.tolerance : cfg.tolerance;
  ortho::NormedSpace s = ortho::parse_space(a.space);
  ortho::Vector x = ortho::parse_vector(a.x);
  ortho::Vector y = ortho::parse_vector(a.y);
  ortho::OrthoRelation rel = ortho::parse_relation(a.relation);
  bool ok = ortho::holds(s, rel, x, y, tol);
  ortho::GapResult gap = ortho::min_gap(s, x, y);
  std::cout << "space: " << s.describe() << "\n"
            << "relation: " << rel.name() << "\n"
            << "holds: " << (ok ? "yes" : "no") << "\n"
            << "gap: " << fmt(gap.alpha) << "\n";
  return ok ? 0 : 1;
}

int run_eps(const std::string& space, const std::string& xs, const std::string& ys) {
  ortho::NormedSpace s = ortho::parse_space(space);
  std::cout << fmt(ortho::dragomir_eps(s, ortho::parse_vector(xs), ortho::parse_vector(ys)))
            << "\n";
  return 0;
}

struct OpArgs {
  std::string domain, codomain, matrix, relation = "birkhoff", local_at;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 0;
};

int run_analyze_op(const OpArgs& a) {
  ortho::ScenarioConfig cfg = ortho::config_defaults();
  std::uint64_t seed = a.seed_set ? a.seed : cfg.seed;
  int samples = a.samples > 0 ? a.samples : cfg.sample_count;
  ortho::NormedSpace dom = ortho::parse_space(a.domain);
  ortho::NormedSpace cod = a.codomain.empty() ? dom : ortho::parse_space(a.codomain);
  ortho::MatrixText m = ortho::parse_matrix(a.matrix);
  if (m.cols != dom.dim() || m.rows != cod.dim())
    throw std::invalid_argument("matrix is " + std::to_string(m.rows) + "x" +
                                std::to_string(m.cols) + " but the spaces need " +
                                std::to_string(cod.dim()) + "x" + std::to_string(dom.dim()));
  ortho::LinearOperator op(dom, cod, m.column_major);
  ortho::OrthoRelation rel = ortho::parse_relation(a.relation);

  ortho::OperatorProfile prof = ortho::isometry_deviation(op, seed);
  auto method = [](const ortho::NormEstimate& e) {
    return e.method == ortho::NormEstimate::Method::Exact ? "exact" : "sampled";
  };
  std::cout << "operator: " << dom.describe() << " -> " << cod.describe() << " ["
            << ortho::format_matrix(op.rows(), op.cols(), op.entries()) << "]\n"
            << "norm: " << fmt(prof.op_norm.value) << " (" << method(prof.op_norm) << ")\n"
            << "lower: " << fmt(prof.lower_bound.value) << " (" << method(prof.lower_bound)
            << ")\n"
            << "injective: " << (prof.injective ? "yes" : "no") << "\n"
            << "scale: " << fmt(prof.scale) << "\n"
            << "delta1: " << fmt(prof.delta1) << "\n"
            << "delta2: " << fmt(prof.delta2) << "\n"
            << "relation: " << rel.name() << "\n";
  auto fwd = ortho::preservation_constant(op, rel, seed, samples);
  auto rev = ortho::reversal_constant(op, rel, seed, samples);
  std::cout << "preserve-eta: " << fmt(fwd.eta_hat) << "\n"
            << "reverse-eta: " << fmt(rev.eta_hat) << "\n";
  if (!a.local_at.empty()) {
    ortho::Vector at = dom.normalized(ortho::parse_vector(a.local_at));
    auto loc = ortho::local_preservation_constant(op, rel, at, seed, samples);
    std::cout << "local-eta at " << ortho::format_vector(at) << ": " << fmt(loc.eta_hat)
              << "\n";
  }
  return 0;
}

int run_auerbach(const std::string& space, int sweeps, std::uint64_t seed, bool seed_set) {
  ortho::ScenarioConfig cfg = ortho::config_defaults();
  std::uint64_t s0 = seed_set ? seed : cfg.seed;
  ortho::NormedSpace s = ortho::parse_space(space);
  ortho::AuerbachBasis basis = ortho::auerbach_basis(s, s0, sweeps);
  ortho::StarCheck sc = ortho::verify_property_star(s, basis, s0);
  std::cout << "space: " << s.describe() << "\n";
  for (std::size_t i = 0; i < basis.vectors.size(); ++i)
    std::cout << "vector " << i << ": " << ortho::format_vector(basis.vectors[i]) << "\n";
  for (std::size_t i = 0; i < basis.duals.size(); ++i)
    std::cout << "dual " << i << ": " << ortho::format_vector(basis.duals[i]) << "\n";
  std::cout << "det: " << fmt(basis.det_abs) << "\n"
            << "sweeps: " << basis.sweeps_used << "\n"
            << "certificate: " << (sc.pass ? "pass" : "fail") << " (worst defect "
            << fmt(sc.worst_defect) << ")\n";
  return sc.pass ? 0 : 1;
}

struct VerifyArgs {
  std::string suite, config_path, out_path, format = "json";
  std::string domain, codomain, matrix, relation;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 0;
  double tolerance = 0.0;
};

int run_verify(const VerifyArgs& a) {
  ortho::ScenarioConfig cfg = ortho::config_defaults();
  if (!a.config_path.empty()) cfg = ortho::config_from_json(read_file(a.config_path), cfg);
  if (!a.domain.empty()) cfg.domain = a.domain;
  if (!a.codomain.empty()) cfg.codomain = a.codomain;
  if (!a.matrix.empty()) cfg.matrix = a.matrix;
  if (!a.relation.empty()) cfg.relation = a.relation;
  if (a.seed_set) cfg.seed = a.seed;
  if (a.samples > 0) cfg.sample_count = a.samples;
  if (a.tolerance > 0.0) cfg.tolerance = a.tolerance;
  if (a.format != "json" && a.format != "csv")
    throw std::invalid_argument("format must be json or csv");

  ortho::ReportDocument doc = ortho::run_suite(a.suite, cfg);
  std::cout << (a.format == "csv" ? ortho::to_csv(doc) : ortho::to_json(doc));
  if (!a.out_path.empty()) ortho::emit_report(doc, a.format, a.out_path);
  return doc.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonality relations, operator preservation bounds, and"
               " verification suites for finite-dimensional normed spaces"};
  app.require_subcommand(1);

  PairArgs pair;
  CLI::App* cp = app.add_subcommand("check-pair", "decide a relation for one pair");
  cp->add_option("--space", pair.space, "space descriptor, e.g. lp:1:2")->required();
  cp->add_option("--x", pair.x, "first vector")->required();
  cp->add_option("--y", pair.y, "second vector")->required();
  cp->add_option("--relation", pair.relation, "relation name");
  cp->add_option("--tolerance", pair.tolerance, "decision tolerance");

  std::string eps_space, eps_x, eps_y;
  CLI::App* ep = app.add_subcommand("eps", "smallest parameter for which the pair is"
                                           " approximately orthogonal");
  ep->add_option("--space", eps_space, "space descriptor")->required();
  ep->add_option("--x", eps_x, "first vector")->required();
  ep->add_option("--y", eps_y, "second vector")->required();

  OpArgs op;
  CLI::App* ao = app.add_subcommand("analyze-op", "deviation profile and preservation"
                                                  " constants of a matrix");
  ao->add_option("--domain", op.domain, "domain space")->required();
  ao->add_option("--codomain", op.codomain, "codomain space (default: domain)");
  ao->add_option("--matrix", op.matrix, "row-major matrix, rows split by ';'")->required();
  ao->add_option("--relation", op.relation, "relation name");
  ao->add_option("--local-at", op.local_at, "measure the local constant at this point");
  auto* op_seed = ao->add_option("--seed", op.seed, "rng seed");
  ao->add_option("--samples", op.samples, "pairs per estimate");

  std::string au_space;
  int au_sweeps = 50;
  std::uint64_t au_seed = 0;
  CLI::App* au = app.add_subcommand("auerbach", "extremal unit basis with biorthogonal"
                                                " unit functionals");
  au->add_option("--space", au_space, "space descriptor")->required();
  au->add_option("--sweeps", au_sweeps, "exchange sweep budget");
  auto* au_seed_opt = au->add_option("--seed", au_seed, "rng seed");

  VerifyArgs ver;
  CLI::App* ve = app.add_subcommand("verify", "run a named verification suite");
  ve->add_option("suite", ver.suite, "suite name")->required();
  ve->add_option("--config", ver.config_path, "JSON scenario file");
  ve->add_option("--out", ver.out_path, "write the report here as well");
  ve->add_option("--format", ver.format, "json or csv");
  ve->add_option("--domain", ver.domain, "domain space");
  ve->add_option("--codomain", ver.codomain, "codomain space");
  ve->add_option("--matrix", ver.matrix, "operator for suites that accept one");
  ve->add_option("--relation", ver.relation, "relation name");
  auto* ve_seed = ve->add_option("--seed", ver.seed, "rng seed");
  ve->add_option("--samples", ver.samples, "sample count");
  ve->add_option("--tolerance", ver.tolerance, "decision tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cp)) return run_check_pair(pair);
    if (app.got_subcommand(ep)) return run_eps(eps_space, eps_x, eps_y);
    if (app.got_subcommand(ao)) {
      op.seed_set = op_seed->count() > 0;
      return run_analyze_op(op);
    }
    if (app.got_subcommand(au))
      return run_auerbach(au_space, au_sweeps, au_seed, au_seed_opt->count() > 0);
    if (app.got_subcommand(ve)) {
      ver.seed_set = ve_seed->count() > 0;
      return run_verify(ver);
    }
    return 2;
  } catch (const ortho::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const ortho::error& e) {
    std::cerr << "{\"error\":\"numeric\",\"what\":\"" << e.what() << "\"}\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}

// Command-line driver: single runs and studies, CSV output.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmdg/mmdg.hpp"

using namespace mmdg;
using namespace mmdg::harness;

namespace {

struct Options {
  std::string case_name = "smooth";
  std::string solver;
  std::string scheme;
  std::string pair;
  std::optional<int> q, n_x, n_v;
  std::optional<double> v_cut, eps, t_end, m_tvb, cfl;
  std::string eps_profile;
  std::string flux, limiter, bc;
  std::vector<double> probes;
  std::string out = "out";

  std::string study = "convergence";
  std::vector<int> study_nx{10, 20, 40, 80};
  std::vector<double> study_eps{1e-2, 1e-3, 1e-4};
  std::vector<double> study_vc;
  int ref_nx = 1000;
};

void add_case_flags(CLI::App* app, Options& o) {
  app->add_option("--case", o.case_name, "Case name")
      ->check(CLI::IsMember(case_names()))
      ->capture_default_str();
  app->add_option("--solver", o.solver, "bgk1 | bgk2 | ns | euler | explicit-bgk")
      ->check(CLI::IsMember({"bgk1", "bgk2", "ns", "euler", "explicit-bgk"}));
  app->add_option("--scheme", o.scheme, "Micro-macro scheme for bgk runs: 1 | 2");
  app->add_option("--pair", o.pair, "IMEX pair: ars443 | euler")->check(CLI::IsMember({"ars443", "euler"}));
  app->add_option("--q", o.q, "NDG(K) label: Gauss points per element")->check(CLI::Range(1, 8));
  app->add_option("--nx", o.n_x, "Number of elements")->check(CLI::PositiveNumber);
  app->add_option("--nv", o.n_v, "Number of velocity points")->check(CLI::PositiveNumber);
  app->add_option("--vc", o.v_cut, "Velocity cutoff V_c")->check(CLI::PositiveNumber);
  app->add_option("--eps", o.eps, "Constant Knudsen number")->check(CLI::NonNegativeNumber);
  app->add_option("--eps-profile", o.eps_profile, "Variable Knudsen number a0,eps0");
  app->add_option("--tend", o.t_end, "Final time")->check(CLI::PositiveNumber);
  app->add_option("--cfl", o.cfl, "CFL number override")->check(CLI::PositiveNumber);
  app->add_option("--flux", o.flux, "alt-lr | alt-rl | central")->check(CLI::IsMember({"alt-lr", "alt-rl", "central"}));
  app->add_option("--limiter", o.limiter, "none | tvb")->check(CLI::IsMember({"none", "tvb"}));
  app->add_option("--mtvb", o.m_tvb, "TVB constant")->check(CLI::NonNegativeNumber);
  app->add_option("--bc", o.bc, "periodic | dirichlet | extrapolation")
      ->check(CLI::IsMember({"periodic", "dirichlet", "extrapolation"}));
  app->add_option("--probe", o.probes, "x positions for g/f slices (replaces the case default)");
  app->add_option("--out", o.out, "Output path stem")->capture_default_str();
}

CaseSpec build_case(const Options& o) {
  CaseSpec c = case_by_name(o.case_name);
  if (!o.solver.empty()) {
    if (o.solver == "bgk1" || o.solver == "bgk2") {
      c.solver = SolverKind::bgk;
      c.scheme = parse_scheme(o.solver);
    } else if (o.solver == "ns") {
      c.solver = SolverKind::ns;
    } else if (o.solver == "euler") {
      c.solver = SolverKind::euler;
    } else {
      c.solver = SolverKind::explicit_bgk;
    }
  }
  if (!o.scheme.empty()) c.scheme = parse_scheme(o.scheme);
  if (!o.pair.empty()) c.pair = o.pair;
  if (o.q) c.q = *o.q;
  if (o.n_x) c.n_x = *o.n_x;
  if (o.n_v) c.n_v = *o.n_v;
  if (o.v_cut) c.v_cut = *o.v_cut;
  if (o.eps) c.eps = EpsProfile::constant(*o.eps);
  if (!o.eps_profile.empty()) {
    double a0 = 0.0, eps0 = 0.0;
    char comma = 0;
    std::istringstream is(o.eps_profile);
    if (!(is >> a0 >> comma >> eps0) || comma != ',') {
      throw std::invalid_argument("--eps-profile expects a0,eps0");
    }
    c.eps = EpsProfile::tanh_bump(a0, eps0);
  }
  if (o.t_end) c.t_end = *o.t_end;
  if (o.cfl) c.cfl = *o.cfl;
  if (!o.flux.empty()) c.flux = parse_flux_select(o.flux);
  if (!o.limiter.empty()) c.limiter.enabled = o.limiter == "tvb";
  if (o.m_tvb) c.limiter.m_tvb = *o.m_tvb;
  if (!o.bc.empty()) {
    c.boundary = o.bc == "periodic" ? BoundaryKind::periodic
                 : o.bc == "dirichlet" ? BoundaryKind::dirichlet
                                       : BoundaryKind::extrapolation;
  }
  if (!o.probes.empty()) c.probes = o.probes;
  c.output = o.out;
  return c;
}

void ensure_parent(const std::string& stem) {
  const auto parent = std::filesystem::path(stem).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

int do_run(const Options& o) {
  const CaseSpec c = build_case(o);
  const RunOutput r = run(c);
  ensure_parent(o.out);
  for (const auto& f : write_run(o.out, r)) std::cout << "wrote " << f << '\n';
  std::printf("case=%s solver=%s t=%.17g steps=%ld wall=%.3f\n", c.name.c_str(), to_string(c.solver).c_str(), r.t,
              r.steps, r.wall_seconds);
  return 0;
}

int do_study(const Options& o) {
  const CaseSpec c = build_case(o);
  ensure_parent(o.out);
  Table t;
  switch (parse_study(o.study)) {
    case StudyKind::convergence:
      t = convergence_table(convergence_study(c, o.study_nx));
      break;
    case StudyKind::eps_sweep: {
      const auto rows = eps_sweep_study(c, o.study_eps);
      t = eps_sweep_table(rows);
      std::printf("slopes rho=%.4f u=%.4f T=%.4f\n", eps_sweep_slope(rows, 0), eps_sweep_slope(rows, 1),
                  eps_sweep_slope(rows, 2));
      break;
    }
    case StudyKind::conservation: {
      std::vector<double> vcs = o.study_vc;
      if (vcs.empty()) vcs = {c.v_cut, 2.0 * c.v_cut};
      t = conservation_study_table(conservation_study(c, vcs));
      break;
    }
    case StudyKind::scheme_compare:
      t = scheme_compare_table(scheme_compare_study(c, explicit_reference(c, o.ref_nx)));
      break;
  }
  const std::string path = o.out + "_" + o.study + ".csv";
  write_csv(path, t);
  std::cout << to_csv(t) << "wrote " << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-macro DG solver for the BGK equation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value configuration file; command-line flags override it");
  Options o;

  add_case_flags(&app, o);
  CLI::App* run_cmd = app.add_subcommand("run", "Run one case and write CSV output");
  CLI::App* study_cmd = app.add_subcommand("study", "Run a parameter study");
  study_cmd->add_option("--kind", o.study, "convergence | eps-sweep | conservation | scheme-compare")
      ->check(CLI::IsMember({"convergence", "eps-sweep", "conservation", "scheme-compare"}))
      ->capture_default_str();
  study_cmd->add_option("--nx-list", o.study_nx, "Meshes for the convergence study")->delimiter(',');
  study_cmd->add_option("--eps-list", o.study_eps, "Knudsen numbers for the eps sweep")->delimiter(',');
  study_cmd->add_option("--vc-list", o.study_vc, "Velocity cutoffs for the conservation study")->delimiter(',');
  study_cmd->add_option("--ref-nx", o.ref_nx, "Elements of the explicit reference")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << SolverError::render("usage", e.what(), {}) << '\n';
    return 2;
  }

  try {
    if (*run_cmd) return do_run(o);
    return do_study(o);
  } catch (const SolverError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << SolverError::render("invalid-argument", e.what(), {}) << '\n';
    return 1;
  }
}

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mmdg/harness/csv.hpp"
#include "mmdg/harness/metrics.hpp"
#include "mmdg/harness/run.hpp"

namespace mmdg::harness {

enum class StudyKind { convergence, eps_sweep, conservation, scheme_compare };

inline StudyKind parse_study(const std::string& s) {
  if (s == "convergence") return StudyKind::convergence;
  if (s == "eps-sweep") return StudyKind::eps_sweep;
  if (s == "conservation") return StudyKind::conservation;
  if (s == "scheme-compare") return StudyKind::scheme_compare;
  throw std::invalid_argument("unknown study '" + s + "'");
}

// Convergence -----------------------------------------------------------------

struct ConvergenceRow {
  int n_x = 0;
  double err_rho = std::numeric_limits<double>::quiet_NaN();
  double order_rho = std::numeric_limits<double>::quiet_NaN();
  double err_g = std::numeric_limits<double>::quiet_NaN();
  double order_g = std::numeric_limits<double>::quiet_NaN();
};

/// Runs `base` on each mesh in `n_xs` (each twice the previous) and reports
/// consecutive-mesh L1 errors. Row k holds the error between meshes k-1 and k.
inline std::vector<ConvergenceRow> convergence_study(const CaseSpec& base, const std::vector<int>& n_xs) {
  std::vector<ConvergenceRow> rows;
  std::optional<RunOutput> prev;
  for (int n : n_xs) {
    CaseSpec c = base;
    c.n_x = n;
    RunOutput fine = run(c);
    ConvergenceRow row;
    row.n_x = n;
    if (prev) {
      const auto rc = prev->rho(), rf = fine.rho();
      row.err_rho = l1_error_consecutive(prev->disc, rc, fine.disc, rf);
      if (base.solver == SolverKind::bgk) {
        row.err_g = l1_error_consecutive(prev->disc, prev->g.values, fine.disc, fine.g.values,
                                         prev->disc.n_v());
      }
      if (rows.size() > 1) {
        row.order_rho = observed_order(rows.back().err_rho, row.err_rho);
        row.order_g = observed_order(rows.back().err_g, row.err_g);
      }
    }
    rows.push_back(row);
    prev = std::move(fine);
  }
  return rows;
}

inline Table convergence_table(const std::vector<ConvergenceRow>& rows) {
  Table t{{"N", "err_rho", "order_rho", "err_g", "order_g"}, {}};
  for (const auto& r : rows) t.add({double(r.n_x), r.err_rho, r.order_rho, r.err_g, r.order_g});
  return t;
}

// Relative differences ----------------------------------------------------------

struct RelDiff {
  double rho = 0.0, u = 0.0, T = 0.0;
  double max() const { return std::max({rho, u, T}); }
};

/// Relative difference of `b` against `a` on the nodes of `a`; `b` is sampled
/// through its nodal polynomials when the meshes differ.
inline RelDiff relative_difference(const RunOutput& a, const RunOutput& b) {
  RelDiff out;
  const bool same = a.disc.n_x() == b.disc.n_x() && a.disc.q() == b.disc.q();
  double* dst[3] = {&out.rho, &out.u, &out.T};
  for (int c = 0; c < 3; ++c) {
    const auto wa = a.component(c);
    const auto wb = same ? b.component(c) : sample_at(b, c, a.disc);
    *dst[c] = relative_difference(wa, wb, a.disc.basis);
  }
  return out;
}

// eps sweep ---------------------------------------------------------------------

struct EpsSweepRow {
  double eps = 0.0;
  RelDiff diff;
};

/// Micro-macro scheme against the Navier-Stokes reference at each eps.
inline std::vector<EpsSweepRow> eps_sweep_study(const CaseSpec& base, const std::vector<double>& eps_values) {
  std::vector<EpsSweepRow> rows;
  for (double e : eps_values) {
    CaseSpec kin = base;
    kin.eps = EpsProfile::constant(e);
    kin.solver = SolverKind::bgk;
    CaseSpec ns = kin;
    ns.solver = SolverKind::ns;
    const RunOutput rk = run(kin);
    const RunOutput rn = run(ns);
    rows.push_back({e, relative_difference(rk, rn)});
  }
  return rows;
}

inline Table eps_sweep_table(const std::vector<EpsSweepRow>& rows) {
  Table t{{"eps", "rel_rho", "rel_u", "rel_T"}, {}};
  for (const auto& r : rows) t.add({r.eps, r.diff.rho, r.diff.u, r.diff.T});
  return t;
}

/// Least-squares log-log slope of one relative-difference component against eps.
inline double eps_sweep_slope(const std::vector<EpsSweepRow>& rows, int which) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.eps);
    y.push_back(which == 0 ? r.diff.rho : which == 1 ? r.diff.u : r.diff.T);
  }
  return loglog_slope(x, y);
}

// Conservation ------------------------------------------------------------------

struct ConservationRow {
  double v_cut = 0.0;
  Vec3 max_defect{0.0, 0.0, 0.0};
  double max() const { return std::max({max_defect[0], max_defect[1], max_defect[2]}); }
};

/// Maximum over the run of max_x |eps <m g>| for each velocity cutoff.
inline std::vector<ConservationRow> conservation_study(const CaseSpec& base, const std::vector<double>& v_cuts) {
  std::vector<ConservationRow> rows;
  for (double vc : v_cuts) {
    CaseSpec c = base;
    c.v_cut = vc;
    const RunOutput r = run(c);
    ConservationRow row;
    row.v_cut = vc;
    for (const auto& s : r.conservation) {
      for (int k = 0; k < 3; ++k) row.max_defect[k] = std::max(row.max_defect[k], s.defect[k]);
    }
    rows.push_back(row);
  }
  return rows;
}

inline Table conservation_study_table(const std::vector<ConservationRow>& rows) {
  Table t{{"vc", "c0", "c1", "c2"}, {}};
  for (const auto& r : rows) t.add({r.v_cut, r.max_defect[0], r.max_defect[1], r.max_defect[2]});
  return t;
}

// Scheme comparison -------------------------------------------------------------

/// Micro-macro run `a` against reference run `b` (any solver, any mesh on the
/// same domain).
inline RelDiff scheme_compare_study(const CaseSpec& a, const CaseSpec& b) {
  return relative_difference(run(a), run(b));
}

/// The explicit-BGK reference for a case: NDG1, forward Euler, fine mesh.
inline CaseSpec explicit_reference(const CaseSpec& c, int n_x = 1000) {
  CaseSpec ref = c;
  ref.name = c.name + "-reference";
  ref.solver = SolverKind::explicit_bgk;
  ref.q = 1;
  ref.n_x = n_x;
  ref.limiter.enabled = false;
  return ref;
}

inline Table scheme_compare_table(const RelDiff& d) {
  Table t{{"rel_rho", "rel_u", "rel_T"}, {}};
  t.add({d.rho, d.u, d.T});
  return t;
}

}  // namespace mmdg::harness

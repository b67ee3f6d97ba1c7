#pragma once

// Runnable invariant suites for each module, shared by the command-line
// `verify` subcommand and the acceptance tests.  Each check reports the
// measured quantity next to its threshold so a failure is immediately
// quantitative.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cylspec/oracle.hpp"
#include "cylspec/specfun.hpp"
#include "cylspec/superint2d.hpp"
#include "cylspec/susy.hpp"
#include "cylspec/weber_spectra.hpp"

namespace cylspec {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

namespace detail {

inline CheckResult check_leq(const std::string& suite, const std::string& name,
                             double measured, double threshold) {
  return {suite, name, measured, threshold, measured <= threshold};
}

inline CheckResult check_gt(const std::string& suite, const std::string& name,
                            double measured, double threshold) {
  return {suite, name, measured, threshold, measured > threshold};
}

inline double fit_loglog_slope(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  const int m = static_cast<int>(xs.size());
  for (int i = 0; i < m; ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    s1 += lx;
    s2 += ly;
    s3 += lx * lx;
    s4 += lx * ly;
  }
  return (m * s4 - s1 * s2) / (m * s3 - s1 * s1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// specfun suite

inline std::vector<CheckResult> specfun_checks(const PrecisionConfig& cfg = {}) {
  std::vector<CheckResult> out;
  const std::string suite = "specfun";

  // Weber residual and Wronskian on eps in [-8,4] x z in [-6,6]
  double worst_res = 0.0, worst_wron = 0.0, worst_parity = 0.0;
  for (double eps = -8.0; eps <= 4.0 + 1e-9; eps += 0.5) {
    for (double z = -6.0; z <= 6.0 + 1e-9; z += 0.5) {
      for (auto which : {detail::WeberSolution::Y1, detail::WeberSolution::Y2,
                         detail::WeberSolution::U}) {
        const auto r = detail::weber_residual(eps, z, which, cfg);
        worst_res = std::max(worst_res, r.residual / std::max(1.0, r.value));
      }
      worst_wron = std::max(worst_wron, std::abs(detail::weber_wronskian(eps, z, cfg) - 1.0));
      const double y1p = weber_y1({eps, z}, cfg), y1m = weber_y1({eps, -z}, cfg);
      const double y2p = weber_y2({eps, z}, cfg), y2m = weber_y2({eps, -z}, cfg);
      worst_parity = std::max(
          {worst_parity, std::abs(y1m - y1p) / std::max(1.0, std::abs(y1p)),
           std::abs(y2m + y2p) / std::max(1.0, std::abs(y2p))});
    }
  }
  out.push_back(detail::check_leq(suite, "weber residual / max(1,|f|)", worst_res, 1e-8));
  out.push_back(detail::check_leq(suite, "wronskian |y1 y2' - y1' y2 - 1|", worst_wron, 1e-10));
  out.push_back(detail::check_leq(suite, "parity y1 even / y2 odd", worst_parity, 1e-13));

  // Asymptotic consistency: U against the truncated expansion
  // e^{-z^2/4} z^{-eps-1/2} (1 - (eps+1/2)(eps+3/2)/(2z^2) + ...), summed
  // here independently to three correction terms.
  double worst_asym = 0.0;
  for (double eps = -3.0; eps <= 1.0 + 1e-9; eps += 0.5) {
    for (double z : {10.0, 12.0, 15.0, 20.0}) {
      double bracket = 1.0, term = 1.0;
      for (int k = 0; k < 3; ++k) {
        term *= -(eps + 0.5 + 2 * k) * (eps + 1.5 + 2 * k) / (2.0 * z * z * (k + 1));
        bracket += term;
      }
      const double lead = std::exp(-z * z / 4) * std::pow(z, -eps - 0.5) * bracket;
      worst_asym = std::max(worst_asym, std::abs(pcf_u({eps, z}, cfg) / lead - 1.0));
    }
  }
  out.push_back(detail::check_leq(suite, "U asymptotic-form ratio (z in [10,20])",
                                  worst_asym, 1e-4));

  // Series route pushed past the switch vs the asymptotic route (the two
  // evaluations share nothing; quad accumulation absorbs the cancellation).
  double worst_cross = 0.0;
  for (double eps = -3.0; eps <= 1.0 + 1e-9; eps += 0.5) {
    for (double z : {10.0, 10.5, 11.0}) {
      double us, ua;
      detail::u_series_eval<detail::f128>(eps, z, cfg, &us, nullptr);
      detail::u_asym_eval(eps, z, cfg, &ua, nullptr);
      worst_cross = std::max(worst_cross, std::abs(us / ua - 1.0));
    }
  }
  out.push_back(detail::check_leq(suite, "U series-vs-asymptotic cross-check",
                                  worst_cross, 1e-4));

  // Continuity across the evaluation switch
  double worst_switch = 0.0;
  for (double eps = -8.0; eps <= 4.0 + 1e-9; eps += 0.5) {
    double us, ua;
    detail::u_series_eval<detail::f128>(eps, cfg.asymptotic_switch_z, cfg, &us, nullptr);
    detail::u_asym_eval(eps, cfg.asymptotic_switch_z, cfg, &ua, nullptr);
    worst_switch = std::max(worst_switch, std::abs(us - ua) / std::abs(ua));
  }
  out.push_back(detail::check_leq(suite, "U continuity at the switch point",
                                  worst_switch, 1e-8));

  // Analytic dU/dz against a 5-point stencil of U
  double worst_du = 0.0;
  for (double eps : {-8.0, -4.0, -2.0, -0.5}) {
    for (double z = 0.1; z <= 6.0 + 1e-9; z += 0.295) {
      const double h = 1e-3;
      const double fd = (pcf_u({eps, z - 2 * h}, cfg) - 8 * pcf_u({eps, z - h}, cfg) +
                         8 * pcf_u({eps, z + h}, cfg) - pcf_u({eps, z + 2 * h}, cfg)) /
                        (12 * h);
      const double an = pcf_u_dz({eps, z}, cfg);
      const double scale =
          std::max(std::abs(fd), 1e-2 * std::max(1.0, std::abs(pcf_u({eps, z}, cfg))));
      worst_du = std::max(worst_du, std::abs(an - fd) / scale);
    }
  }
  out.push_back(detail::check_leq(suite, "dU/dz vs finite difference", worst_du, 1e-7));
  return out;
}

// ---------------------------------------------------------------------------
// spectra suite

inline std::vector<CheckResult> spectra_checks(const EigenSolveConfig& cfg = {}) {
  std::vector<CheckResult> out;
  const std::string suite = "spectra";
  const OscillatorParams ho{};

  // exact b = 0 case
  {
    const auto lv = solve_half_line(BarrierGeometry::half_line(0.0), 11, ho, cfg);
    double worst = 0.0;
    for (const auto& l : lv) worst = std::max(worst, std::abs(l.epsilon + 2.0 * l.n + 1.5));
    out.push_back(detail::check_leq(suite, "half-line b=0 roots at -(2n+3/2)", worst, 1e-9));
  }

  // Dirichlet monotonicity and interlacing
  {
    double min_up = std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<double> prev;
    for (int i = 0; i <= 20; ++i) {
      const double b = 3.0 * i / 20.0;
      const auto lv = solve_half_line(BarrierGeometry::half_line(b), 6, ho, cfg);
      for (std::size_t n = 0; n + 1 < lv.size(); ++n)
        min_gap = std::min(min_gap, lv[n].epsilon - lv[n + 1].epsilon);
      if (!prev.empty())
        for (std::size_t n = 0; n < lv.size(); ++n)
          min_up = std::min(min_up, lv[n].energy - prev[n]);
      prev.clear();
      for (const auto& l : lv) prev.push_back(l.energy);
    }
    out.push_back(detail::check_gt(suite, "half-line E_n(b) strictly increasing", min_up, 0.0));
    out.push_back(detail::check_gt(suite, "interlacing eps_{n+1} < eps_n", min_gap, 0.0));
  }
  {
    double max_down = -std::numeric_limits<double>::infinity();
    std::vector<double> prev;
    for (int i = 0; i <= 20; ++i) {
      const double b = 0.3 + (3.0 - 0.3) * i / 20.0;
      const auto lv = solve_box(BarrierGeometry::symmetric_box(b), 6, ho, cfg);
      if (!prev.empty())
        for (std::size_t n = 0; n < lv.size(); ++n)
          max_down = std::max(max_down, lv[n].energy - prev[n]);
      prev.clear();
      for (const auto& l : lv) prev.push_back(l.energy);
    }
    out.push_back(detail::check_leq(suite, "box E_n(b) strictly decreasing",
                                    max_down, -1e-12));
  }

  // series consistency
  {
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
      const auto lv = solve_half_line(BarrierGeometry::half_line(0.05), 4, ho, cfg);
      worst = std::max(worst, std::abs(lv[n].epsilon - series_half_line(n, 0.05, 2)));
    }
    out.push_back(detail::check_leq(suite, "half-line series order 2 at b=0.05", worst, 5e-4));
  }
  {
    double worst = 0.0;
    for (double b : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const auto lv = solve_box(BarrierGeometry::symmetric_box(b), 4, ho, cfg);
      for (int n = 0; n <= 3; ++n)
        worst = std::max(worst, std::abs(series_box(n, b) - lv[n].epsilon) /
                                    std::abs(lv[n].epsilon));
    }
    out.push_back(detail::check_leq(suite, "box series relative error, b in [0.2,1]",
                                    worst, 1e-2));
  }

  // oracle equivalence at three wall positions (omega = 1: x = z/sqrt(2))
  {
    double worst = 0.0;
    oracle::PotentialSpec pot{[](double x) { return 0.5 * x * x; }, {}, 1.0};
    for (double b : {0.5, 1.5, 2.5}) {
      const auto lv = solve_half_line(BarrierGeometry::half_line(b), 3, ho, cfg);
      const double wall = b / std::sqrt(2.0);
      const auto ev = oracle::dirichlet_eigen(pot, {wall, wall + 11.0, 20000}, 3);
      for (int n = 0; n < 3; ++n)
        worst = std::max(worst, std::abs(lv[n].energy - ev[n]) / std::abs(ev[n]));
    }
    out.push_back(detail::check_leq(suite, "half-line levels vs grid oracle", worst, 1e-6));

    double worst_box = 0.0;
    for (double b : {0.7, 1.4}) {
      const auto lv = solve_box(BarrierGeometry::symmetric_box(b), 3, ho, cfg);
      const double wall = b / std::sqrt(2.0);
      const auto ev = oracle::dirichlet_eigen(pot, {-wall, wall, 20000}, 3);
      for (int n = 0; n < 3; ++n)
        worst_box = std::max(worst_box, std::abs(lv[n].energy - ev[n]) / std::abs(ev[n]));
    }
    out.push_back(detail::check_leq(suite, "box levels vs grid oracle", worst_box, 1e-6));
  }
  return out;
}

// ---------------------------------------------------------------------------
// susy suite

inline std::vector<CheckResult> susy_checks(const IsotonicParams& params = {},
                                            const EigenSolveConfig& cfg = {}) {
  std::vector<CheckResult> out;
  const std::string suite = "susy";
  const double a = params.a;

  std::vector<RegionState> r2, r3;
  for (int n = 0; n <= 5; ++n) {
    r2.push_back(build_state(Region::R2, n, params, cfg));
    r3.push_back(build_state(Region::R3, n, params, cfg));
  }

  // isospectrality against the grid oracle on each region
  {
    oracle::PotentialSpec pot{[&](double x) { return v_singular(x, params); },
                              {a, -a},
                              params.hbar};
    const auto e2 = oracle::dirichlet_eigen(pot, {a, 15.0 * a, 24000}, 6);
    const auto e3 = oracle::dirichlet_eigen(pot, {-a, a, 20000}, 6);
    double w2 = 0.0, w3 = 0.0;
    for (int n = 0; n <= 5; ++n) {
      w2 = std::max(w2, std::abs(r2[n].energy - e2[n]) / std::abs(e2[n]));
      w3 = std::max(w3, std::abs(r3[n].energy - e3[n]) / std::abs(e3[n]));
    }
    out.push_back(detail::check_leq(suite, "R2 isospectrality vs oracle", w2, 1e-6));
    out.push_back(detail::check_leq(suite, "R3 isospectrality vs oracle", w3, 1e-6));
  }

  // boundary vanishing at the barriers: the region state is zero at the
  // wall by construction, and the partner eigenfunction it is built from
  // vanishes there up to the root-finder residual (that residual, divided
  // by the wall offset, is also the accuracy floor of psi just inside)
  {
    double worst = 0.0;
    for (const auto& st : r2) {
      double amax = 0.0;
      for (int i = 0; i <= 400; ++i)
        amax = std::max(amax, std::abs(st.psi(a + 7.0 * a * i / 400.0)));
      worst = std::max(worst, std::abs(st.psi(a)) / amax);
    }
    for (const auto& st : r3) {
      double amax = 0.0;
      for (int i = 0; i <= 400; ++i)
        amax = std::max(amax, std::abs(st.psi(-a + 2.0 * a * i / 400.0)));
      worst = std::max(worst, std::abs(st.psi(a)) / amax);
      worst = std::max(worst, std::abs(st.psi(-a)) / amax);
    }
    const auto half = partner_levels(Region::R2, 4, params, cfg);
    const auto box = partner_levels(Region::R3, 4, params, cfg);
    const BarrierGeometry hgeom = BarrierGeometry::half_line(1.0);
    const BarrierGeometry bgeom = BarrierGeometry::symmetric_box(1.0);
    for (int n = 0; n < 4; ++n) {
      double pmax = 0.0;
      for (int i = 0; i <= 200; ++i) {
        pmax = std::max(pmax, std::abs(eigenfunction_at(half[n], hgeom, 1.0 + 6.0 * i / 200.0,
                                                        cfg.precision)));
      }
      worst = std::max(worst,
                       std::abs(eigenfunction_at(half[n], hgeom, 1.0, cfg.precision)) / pmax);
      double bmax = 0.0;
      for (int i = 0; i <= 200; ++i)
        bmax = std::max(bmax, std::abs(eigenfunction_at(box[n], bgeom, -1.0 + 2.0 * i / 200.0,
                                                        cfg.precision)));
      worst = std::max(worst,
                       std::abs(eigenfunction_at(box[n], bgeom, 1.0, cfg.precision)) / bmax);
    }
    out.push_back(detail::check_leq(suite, "boundary vanishing |psi(wall)|/max", worst, 1e-8));
  }

  // near-edge exponent on R2: psi ~ C (x-a)^2
  {
    std::vector<double> xs, ys;
    for (double xi = 1e-4; xi <= 1e-2 * 1.0001; xi *= 1.29154966501) {
      xs.push_back(xi);
      ys.push_back(std::abs(r2[0].psi(a + xi * a)));
    }
    const double slope = detail::fit_loglog_slope(xs, ys);
    out.push_back(detail::check_leq(suite, "R2 near-edge exponent |fit - 2|",
                                    std::abs(slope - 2.0), 0.05));
  }

  // orthogonality of normalized states
  {
    double worst = 0.0;
    for (int n = 0; n < 4; ++n)
      for (int m = n + 1; m < 4; ++m) {
        const double ip2 = oracle::quadrature(
            [&](double x) { return r2[n].psi(x) / r2[n].norm * r2[m].psi(x) / r2[m].norm; },
            a, 14.0 * a, 1e-9);
        const double ip3 = oracle::quadrature(
            [&](double x) { return r3[n].psi(x) / r3[n].norm * r3[m].psi(x) / r3[m].norm; },
            -a, a, 1e-9);
        worst = std::max(worst, std::max(std::abs(ip2), std::abs(ip3)));
      }
    out.push_back(detail::check_leq(suite, "orthogonality of region states", worst, 1e-6));
  }

  // decay of R2 states: 1e-12 of the peak at 13a holds below the turning
  // point of that cut, i.e. for n <= 1; higher states are covered by the
  // norm's stability under tail extension instead
  {
    double worst = 0.0;
    for (int n = 0; n <= 1; ++n) {
      double amax = 0.0;
      for (int i = 0; i <= 400; ++i)
        amax = std::max(amax, std::abs(r2[n].psi(a + 7.0 * a * i / 400.0)));
      worst = std::max(worst, std::abs(r2[n].psi(13.0 * a)) / amax);
    }
    out.push_back(detail::check_leq(suite, "R2 tail decay at 13a (n <= 1)", worst, 1e-12));

    double worst_norm = 0.0;
    for (const auto& st : r2) {
      const double n12 = oracle::quadrature(
          [&](double x) { const double v = st.psi(x) / st.norm; return v * v; }, a,
          12.0 * a, 1e-10);
      const double n16 = oracle::quadrature(
          [&](double x) { const double v = st.psi(x) / st.norm; return v * v; }, a,
          16.0 * a, 1e-10);
      worst_norm = std::max(worst_norm, std::abs(n16 - n12));
    }
    out.push_back(detail::check_leq(suite, "norm^2 stability, tail 12a -> 16a",
                                    worst_norm, 1e-8));
  }

  // zero-mode exclusion: all listed energies strictly positive
  {
    double emin = std::numeric_limits<double>::infinity();
    for (const auto& st : r2) emin = std::min(emin, st.energy);
    for (const auto& st : r3) emin = std::min(emin, st.energy);
    out.push_back(detail::check_gt(suite, "min region energy > 0", emin, 0.0));
  }

  // intertwining residual on smooth test functions
  {
    const Differentiable bump{
        [a](double x) { return std::exp(-(x - 2 * a) * (x - 2 * a) / (a * a)); },
        [a](double x) {
          return -2.0 * (x - 2 * a) / (a * a) *
                 std::exp(-(x - 2 * a) * (x - 2 * a) / (a * a));
        }};
    const Differentiable gauss{
        [a](double x) { return std::exp(-x * x / (4 * a * a)); },
        [a](double x) { return -x / (2 * a * a) * std::exp(-x * x / (4 * a * a)); }};
    double worst = 0.0;
    for (double x : {-2.6 * a, 1.4 * a, 2.0 * a, 3.1 * a}) {
      worst = std::max(worst, intertwining_residual(bump, x, params));
      worst = std::max(worst, intertwining_residual(gauss, x, params));
    }
    out.push_back(detail::check_leq(suite, "intertwining residual H1 Adag - Adag H2",
                                    worst, 1e-5));
  }

  // a-invariance of the dimensionless levels
  {
    double worst = 0.0;
    for (double av : {0.5, 2.0}) {
      IsotonicParams pa{params.hbar, av};
      const auto la = partner_levels(Region::R2, 3, pa, cfg);
      const auto l1 = partner_levels(Region::R2, 3, params, cfg);
      for (int n = 0; n < 3; ++n)
        worst = std::max(worst, std::abs(la[n].epsilon - l1[n].epsilon));
    }
    out.push_back(detail::check_leq(suite, "a-invariance of eps at b=1", worst,
                                    cfg.root_tol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// superint suite

inline std::vector<CheckResult> superint_checks(const IsotonicParams& params = {},
                                                const EigenSolveConfig& cfg = {}) {
  std::vector<CheckResult> out;
  const std::string suite = "superint";
  const double a = params.a;
  const double q = params.energy_scale();

  // separability and Hs4 exchange symmetry
  {
    double worst_sep = 0.0, worst_sym = 0.0;
    for (auto sys : {System2D::Hs1, System2D::Hs2, System2D::Hs3, System2D::Hs4}) {
      const auto lv = spectrum_2d(sys, Region::R2, 2, 2, params, cfg);
      for (const auto& l : lv)
        worst_sep = std::max(worst_sep, std::abs(l.energy - (l.e_x1 + l.e_x2)));
      if (sys == System2D::Hs4)
        for (const auto& l : lv)
          for (const auto& m : lv)
            if (m.qn.n == l.qn.k && m.qn.k == l.qn.n)
              worst_sym = std::max(worst_sym, std::abs(l.energy - m.energy));
    }
    out.push_back(detail::check_leq(suite, "separability E = E_x1 + E_x2", worst_sep, 0.0));
    out.push_back(detail::check_leq(suite, "Hs4 exchange symmetry", worst_sym, 0.0));
  }

  // chi factors satisfy their 1D equations at the x2 energies
  {
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k) {
      for (auto sys : {System2D::Hs1, System2D::Hs2, System2D::Hs3}) {
        std::function<double(double)> pot;
        std::vector<double> sing;
        if (sys == System2D::Hs1)
          pot = [&](double x) { return params.hbar * params.hbar * x * x / (8 * a * a * a * a); };
        else if (sys == System2D::Hs2)
          pot = [&](double x) {
            return 9.0 * params.hbar * params.hbar * x * x / (8 * a * a * a * a);
          };
        else {
          pot = [&](double x) {
            return params.hbar * params.hbar *
                   (x * x / (8 * a * a * a * a) + 1.0 / (x * x));
          };
          sing = {0.0};
        }
        std::vector<double> pts;
        for (double x = (sys == System2D::Hs3 ? 0.4 * a : -3.0 * a); x <= 3.0 * a;
             x += 0.217 * a)
          pts.push_back(x);
        const auto chi = [&](double x) { return chi_factor(sys, k, x, params); };
        worst = std::max(worst,
                         oracle::schrodinger_residual(
                             chi, x2_energy(sys, k, params), {pot, sing, params.hbar}, pts));
      }
    }
    out.push_back(detail::check_leq(suite, "chi-factor Schrodinger residuals", worst, 1e-6));
  }

  // structure function boundary conditions
  {
    double worst = 0.0;
    for (int p = 0; p <= 20; ++p)
      worst = std::max({worst, std::abs(formal_phi(0, p, params)),
                        std::abs(formal_phi(p + 1, p, params))});
    out.push_back(detail::check_leq(suite, "Phi(0) = Phi(p+1) = 0", worst, 0.0));
  }

  // formal ladder vs physical spectrum
  {
    const auto rep = formal_vs_physical_report(Region::R2, 6, params, cfg);
    out.push_back(detail::check_leq(suite, "formal_matches_physical flag",
                                    rep.formal_matches_physical ? 1.0 : 0.0, 0.0));
    out.push_back(detail::check_gt(suite, "x1 spacing ratio - 1 (non-equidistant)",
                                   rep.x1_spacing_ratio - 1.0, 1e-3));
  }

  // no accidental degeneracy: distinct n at equal k stay separated
  {
    const auto lv = spectrum_2d(System2D::Hs1, Region::R2, 4, 4, params, cfg);
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& l : lv)
      for (const auto& m : lv)
        if (l.qn.k == m.qn.k && l.qn.n != m.qn.n)
          closest = std::min(closest, std::abs(l.energy - m.energy));
    out.push_back(detail::check_gt(suite, "no accidental degeneracy at equal k",
                                   closest, 1e-7 * q));
  }

  // x2 annihilator kills the channel ground state
  {
    const auto rep = ladder_annihilator_check(params, cfg);
    out.push_back(detail::check_leq(suite, "M_x2 annihilates the ground Gaussian",
                                    rep.m_x2_annihilation_residual, 1e-8));
    out.push_back(detail::check_leq(suite, "M_x2^dag image proportional to x2 psi",
                                    rep.m_x2_dagger_ratio_deviation, 1e-8));
  }
  return out;
}

inline std::vector<CheckResult> all_checks() {
  std::vector<CheckResult> out;
  for (auto&& v : {specfun_checks(), spectra_checks(), susy_checks(), superint_checks()})
    out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace cylspec

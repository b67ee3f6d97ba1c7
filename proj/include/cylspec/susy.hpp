#pragma once

// Supersymmetric construction for the singular isotonic oscillator
//   V1(x) = hbar^2 x^2/(8 a^4) + hbar^2/(x-a)^2 + hbar^2/(x+a)^2 - 3 hbar^2/(4 a^2)
// with supercharges A, Adag built from the superpotential
//   W(x) = (hbar/sqrt2) (-x/(2 a^2) + 1/(x-a) + 1/(x+a)).
// H1 = Adag A has V1 above; H2 = A Adag is a plain harmonic oscillator of
// frequency omega2 = hbar/(2 a^2) shifted by -5 hbar^2/(4 a^2).  The 1/(x-a)^2
// walls confine a particle to one of the regions R1 = (-inf,-a],
// R2 = [a,inf), R3 = [-a,a]; the adequate partner is H2 with infinite
// barriers at the singularity positions, which in the dimensionless Weber
// variable z = x/a puts the wall at b = sqrt(2 omega2/hbar) a = 1 for every
// a.  Region eigenstates are Adag-images of the constrained-oscillator
// eigenfunctions.
//
// The partner's lowest level at b = 1 is exactly eps = -5/2: its
// eigenfunction is the Adag kernel (x^2-a^2) exp(-x^2/(4a^2)), so the image
// of that level vanishes identically and the physical tower of a region
// starts from the next partner level.  RegionState::epsilon stores the
// partner level as a positive energy count (E_partner/(hbar omega2), i.e.
// minus the root), so E = (hbar^2/(2a^2)) (epsilon - 5/2) is positive for
// every listed state.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cylspec/errors.hpp"
#include "cylspec/oracle.hpp"
#include "cylspec/specfun.hpp"
#include "cylspec/weber_spectra.hpp"

namespace cylspec {

struct IsotonicParams {
  double hbar = 1.0;
  double a = 1.0;  // singularity position, singular branch a > 0

  double omega2() const { return hbar / (2.0 * a * a); }
  double energy_scale() const { return hbar * hbar / (2.0 * a * a); }  // hbar*omega2

  void validate() const {
    if (!(hbar > 0.0) || !(a > 0.0))
      throw std::invalid_argument("IsotonicParams: hbar and a must be positive");
  }
};

enum class Region { R1, R2, R3 };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    default: return "R3";
  }
}

// A function together with its analytic first derivative; the supercharge
// application and the stencil checks need both.
struct Differentiable {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

namespace detail {

inline void require_off_singularity(double x, const IsotonicParams& p, double width) {
  if (std::abs(x - p.a) < width || std::abs(x + p.a) < width)
    throw SingularPoint("evaluation at x = " + std::to_string(x) +
                        " touches a singularity at +/-" + std::to_string(p.a));
}

// coefficient function of the supercharges: w(x) = -x/(2a^2) + 1/(x-a) + 1/(x+a)
inline double supercoef(double x, const IsotonicParams& p) {
  return -x / (2.0 * p.a * p.a) + 1.0 / (x - p.a) + 1.0 / (x + p.a);
}

inline double fd5_d1(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double fd5_d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
          f(x + 2 * h)) /
         (12 * h * h);
}

}  // namespace detail

struct Superpotential {
  IsotonicParams params;

  // W(x) = (hbar/sqrt2) (-x/(2a^2) + 1/(x-a) + 1/(x+a)); odd, poles at +/-a.
  double operator()(double x) const {
    detail::require_off_singularity(x, params, 1e-12);
    return params.hbar / std::sqrt(2.0) * detail::supercoef(x, params);
  }
};

// Potential of the singular Hamiltonian H1 = Adag A.
inline double v_singular(double x, const IsotonicParams& p) {
  const double a2 = p.a * p.a;
  const double h2 = p.hbar * p.hbar;
  return h2 * x * x / (8.0 * a2 * a2) + h2 / ((x - p.a) * (x - p.a)) +
         h2 / ((x + p.a) * (x + p.a)) - 3.0 * h2 / (4.0 * a2);
}

// Potential of the regular partner H2 = A Adag (harmonic, shifted).
inline double v_partner(double x, const IsotonicParams& p) {
  const double a2 = p.a * p.a;
  const double h2 = p.hbar * p.hbar;
  return h2 * x * x / (8.0 * a2 * a2) - 5.0 * h2 / (4.0 * a2);
}

// (Adag f)(x) = (hbar/sqrt2) (-f'(x) + w(x) f(x)) with analytic f'.
inline double apply_a_dagger(const Differentiable& f, double x,
                             const IsotonicParams& params) {
  params.validate();
  detail::require_off_singularity(x, params, 1e-12);
  return params.hbar / std::sqrt(2.0) *
         (-f.df(x) + detail::supercoef(x, params) * f.f(x));
}

// Kernel of A: phi(x) = exp(x^2/(4a^2)) / (x^2 - a^2).  The formal zero
// mode of H1; diverges at the barriers and at infinity, hence inadmissible.
// Exposed so tests can confirm the inadmissibility.
inline double zero_mode(double x, const IsotonicParams& params) {
  params.validate();
  detail::require_off_singularity(x, params, 1e-12);
  return std::exp(x * x / (4.0 * params.a * params.a)) /
         (x * x - params.a * params.a);
}

// Constrained-oscillator levels of the modified partner for a region:
// half-line wall for R1/R2, box for R3, both at dimensionless b = 1
// independent of a.  Energies are the oscillator part -hbar omega2 eps
// only; the partner's -5 hbar^2/(4 a^2) offset is applied by the energy
// formula in build_state.
inline std::vector<EigenLevel> partner_levels(Region region, int count,
                                              const IsotonicParams& params,
                                              const EigenSolveConfig& cfg = {}) {
  params.validate();
  if (count < 1) throw std::invalid_argument("partner_levels: count must be >= 1");
  const OscillatorParams osc{params.hbar, params.omega2()};
  if (region == Region::R3)
    return solve_box(BarrierGeometry::symmetric_box(1.0), count, osc, cfg);
  return solve_half_line(BarrierGeometry::half_line(1.0), count, osc, cfg);
}

// One square-integrable eigenstate of the singular oscillator on a region.
struct RegionState {
  Region region = Region::R2;
  int n = 0;
  double epsilon = 0.0;  // partner level in units of hbar*omega2 (positive)
  double energy = 0.0;   // (hbar^2/(2a^2)) (epsilon - 5/2)
  std::function<double(double)> psi;  // unnormalized; zero outside the region
  double norm = 0.0;     // L2 norm of psi from quadrature
};

namespace detail {

// Adag-image of the partner eigenfunction, in physical coordinates.
// z = x/a, d/dx = (1/a) d/dz.
inline std::function<double(double)> a_dagger_image_r2(double eps_root,
                                                       const IsotonicParams& p,
                                                       const PrecisionConfig& prec) {
  const double a = p.a;
  const double pref = p.hbar / std::sqrt(2.0);
  return [=](double x) -> double {
    if (x <= a) return 0.0;
    const double z = x / a;
    const double val = pcf_u({eps_root, z}, prec);
    const double dval = pcf_u_dz({eps_root, z}, prec) / a;
    return pref * (-dval + supercoef(x, p) * val);
  };
}

inline std::function<double(double)> a_dagger_image_r3(double eps_root, bool odd,
                                                       const IsotonicParams& p,
                                                       const PrecisionConfig& prec) {
  const double a = p.a;
  const double pref = p.hbar / std::sqrt(2.0);
  return [=](double x) -> double {
    if (std::abs(x) >= a) return 0.0;
    const double z = x / a;
    const double val = odd ? weber_y2({eps_root, z}, prec) : weber_y1({eps_root, z}, prec);
    const double dval =
        (odd ? weber_y2_dz({eps_root, z}, prec) : weber_y1_dz({eps_root, z}, prec)) / a;
    return pref * (-dval + supercoef(x, p) * val);
  };
}

// L2 norm over the region; tails truncated where |psi| < 1e-12 of the peak.
inline double region_norm(const std::function<double(double)>& psi, double x_lo,
                          double x_hi, bool truncate_tail) {
  const int probe = 512;
  double amax = 0.0;
  int imax = 0;
  for (int i = 0; i <= probe; ++i) {
    const double v = std::abs(psi(x_lo + (x_hi - x_lo) * i / probe));
    if (v > amax) {
      amax = v;
      imax = i;
    }
  }
  if (amax == 0.0) throw NormalizationFailure("region_norm: identically zero state");
  double hi = x_hi;
  if (truncate_tail) {
    for (int i = imax + 1; i <= probe; ++i) {
      const double x = x_lo + (x_hi - x_lo) * i / probe;
      if (std::abs(psi(x)) < 1e-12 * amax) {
        hi = x;
        break;
      }
    }
  }
  try {
    const double n2 =
        oracle::quadrature([&](double x) { const double v = psi(x); return v * v; },
                           x_lo, hi, 1e-12 * amax * amax * (hi - x_lo));
    if (!(n2 > 0.0)) throw NormalizationFailure("region_norm: non-positive norm");
    return std::sqrt(n2);
  } catch (const NonConvergence& e) {
    throw NormalizationFailure(std::string("region_norm: ") + e.what());
  }
}

}  // namespace detail

// n-th square-integrable eigenstate on a region (n = 0 is the region's
// ground state).  Uses partner level n+1: level 0 sits at eps = -5/2
// exactly, is the Adag kernel, and maps to the zero function.
inline RegionState build_state(Region region, int n, const IsotonicParams& params,
                               const EigenSolveConfig& cfg = {}) {
  params.validate();
  if (n < 0) throw std::invalid_argument("build_state: n must be >= 0");
  const auto levels = partner_levels(region, n + 2, params, cfg);
  const EigenLevel& lv = levels[n + 1];

  RegionState st;
  st.region = region;
  st.n = n;
  st.epsilon = -lv.epsilon;  // positive partner-energy convention
  st.energy = params.energy_scale() * (st.epsilon - 2.5);

  const double a = params.a;
  if (region == Region::R3) {
    st.psi = detail::a_dagger_image_r3(lv.epsilon, lv.parity == Parity::Odd, params,
                                       cfg.precision);
    st.norm = detail::region_norm(st.psi, -a, a, false);
  } else {
    auto base = detail::a_dagger_image_r2(lv.epsilon, params, cfg.precision);
    if (region == Region::R1) {
      st.psi = [base](double x) { return base(-x); };
      st.norm = detail::region_norm(base, a, 15.0 * a, true);
    } else {
      st.psi = base;
      st.norm = detail::region_norm(base, a, 15.0 * a, true);
    }
  }
  return st;
}

// Pointwise residual of the intertwining relation H1 Adag = Adag H2 applied
// to a smooth test function, all derivatives by 5-point stencils of step
// 1e-4 a.  Vanishes identically in exact arithmetic away from +/-a.
inline double intertwining_residual(const Differentiable& f, double x,
                                    const IsotonicParams& params) {
  params.validate();
  if (std::abs(x - params.a) < 0.1 * params.a ||
      std::abs(x + params.a) < 0.1 * params.a)
    throw SingularPoint("intertwining_residual: x within 0.1 a of a singularity");
  const double h = 1e-4 * params.a;
  const double hb = params.hbar;
  const double pref = hb / std::sqrt(2.0);

  // route 1: H1 (Adag f), with Adag f evaluated from the analytic f'
  const auto g = [&](double xi) {
    return pref * (-f.df(xi) + detail::supercoef(xi, params) * f.f(xi));
  };
  const double route1 =
      -0.5 * hb * hb * detail::fd5_d2(g, x, h) + v_singular(x, params) * g(x);

  // route 2: Adag (H2 f), with f'' from a stencil of the analytic f'
  const auto h2f = [&](double xi) {
    return -0.5 * hb * hb * detail::fd5_d1(f.df, xi, h) +
           v_partner(xi, params) * f.f(xi);
  };
  const double route2 =
      pref * (-detail::fd5_d1(h2f, x, h) + detail::supercoef(x, params) * h2f(x));

  return std::abs(route1 - route2);
}

}  // namespace cylspec

#pragma once

// Discrete spectra of the constrained harmonic oscillators: a half-line well
// with an infinite wall at z = b (levels are the zeros in eps of U(eps, b))
// and a symmetric box |z| <= b (even levels from y1(eps, b) = 0, odd levels
// from y2(eps, b) = 0).  Energies follow the transformation eps = -E/(hbar
// omega), so eigenvalues are found as descending eps roots: largest root =
// lowest energy.  Also provides the small-b / small-1/b expansions of the
// levels and pointwise eigenfunction evaluation.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cylspec/errors.hpp"
#include "cylspec/specfun.hpp"

namespace cylspec {

struct OscillatorParams {
  double hbar = 1.0;
  double omega = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(omega > 0.0))
      throw std::invalid_argument("OscillatorParams: hbar and omega must be positive");
  }
};

enum class Parity { Even, Odd, None };

struct BarrierGeometry {
  enum class Kind { HalfLine, SymmetricBox };

  Kind kind = Kind::HalfLine;
  double b = 0.0;  // dimensionless wall position

  static BarrierGeometry half_line(double b) { return {Kind::HalfLine, b}; }
  static BarrierGeometry symmetric_box(double b) { return {Kind::SymmetricBox, b}; }

  void validate() const {
    if (!std::isfinite(b))
      throw std::invalid_argument("BarrierGeometry: b must be finite");
    if (kind == Kind::SymmetricBox && !(b > 0.0))
      throw std::invalid_argument("BarrierGeometry: symmetric box requires b > 0");
  }
};

struct EigenLevel {
  int n = 0;
  double epsilon = 0.0;  // spectral parameter, E = -hbar omega eps
  double energy = 0.0;
  Parity parity = Parity::None;
};

struct EigenSolveConfig {
  // Search window in eps; NaN selects the built-in defaults (see
  // default_window_* below).
  double eps_hi = std::numeric_limits<double>::quiet_NaN();
  double eps_lo = std::numeric_limits<double>::quiet_NaN();
  double scan_step = 0.05;
  double root_tol = 1e-11;
  int max_bisect = 200;
  PrecisionConfig precision{};

  bool auto_window() const { return std::isnan(eps_hi) || std::isnan(eps_lo); }

  void validate() const {
    if (!auto_window() && !(eps_lo < eps_hi))
      throw std::invalid_argument("EigenSolveConfig: eps_lo must be below eps_hi");
    if (!(scan_step > 0.0) || !(root_tol > 0.0) || max_bisect < 8)
      throw std::invalid_argument("EigenSolveConfig: bad scan_step/root_tol/max_bisect");
    precision.validate();
  }
};

inline double energy_from_epsilon(double epsilon, const OscillatorParams& params) {
  params.validate();
  return -params.hbar * params.omega * epsilon;
}

// ---------------------------------------------------------------------------
// Level expansions in the wall position

namespace detail {

constexpr int kSeriesCoeffMax = 128;

struct HalfLineCoeffs {
  std::array<double, kSeriesCoeffMax> eps1;
  std::array<double, kSeriesCoeffMax> eps2;
};

// eps1(n+1) = (2n+3)/(2n+2) eps1(n),            eps1(0) = -sqrt(2/pi)
// eps2(n+1) = ((2n+3)/(2n+2))^2 eps2(n) + d(n), eps2(0) = -(2/pi)(1 - ln 2)
// with d(n) = (2n+3)!(2n+2)! / (16 pi ((n+1)!)^4 (n+1) 2^(4n)), computed by
// its term ratio to stay in range.
inline const HalfLineCoeffs& half_line_coeffs() {
  static const HalfLineCoeffs table = [] {
    HalfLineCoeffs t{};
    t.eps1[0] = -std::sqrt(2.0 / M_PI);
    t.eps2[0] = -2.0 / M_PI * (1.0 - std::log(2.0));
    double drive = 12.0 / (16.0 * M_PI);  // d(0) = 3!2!/(16 pi)
    for (int n = 0; n + 1 < kSeriesCoeffMax; ++n) {
      const double r = (2.0 * n + 3.0) / (2.0 * n + 2.0);
      t.eps1[n + 1] = r * t.eps1[n];
      t.eps2[n + 1] = r * r * t.eps2[n] + drive;
      const double m = n + 1.0;
      drive *= (2 * m + 3) * (2 * m + 2) * (2 * m + 2) * (2 * m + 1) * m /
               (16.0 * (m + 1) * (m + 1) * (m + 1) * (m + 1) * (m + 1));
    }
    return t;
  }();
  return table;
}

}  // namespace detail

// eps_n^II(b) = -1/2 - (2n+1) + eps1(n) b + eps2(n) b^2, truncated at `order`.
inline double series_half_line(int n, double b, int order) {
  if (n < 0 || n >= detail::kSeriesCoeffMax)
    throw std::invalid_argument("series_half_line: level index out of range");
  if (order < 0 || order > 2)
    throw std::invalid_argument("series_half_line: order must be 0, 1 or 2");
  double eps = -0.5 - (2.0 * n + 1.0);
  const auto& c = detail::half_line_coeffs();
  if (order >= 1) eps += c.eps1[n] * b;
  if (order >= 2) eps += c.eps2[n] * b * b;
  return eps;
}

// eps_n^III(b) = eps_{-2}(n)/b^2 + eps_2(n) b^2 + eps_6(n) b^6 with
// eps_{-2}(n) = -((n+1)/2)^2 pi^2, eps_0 = eps_4 = 0,
// eps_2(n) = -1/12 - 1/(8 eps_{-2}(n)),
// eps_6(n) = 1/(720 eps_{-2}) + 5/(192 eps_{-2}^2) + 7/(128 eps_{-2}^3).
inline double series_box(int n, double b) {
  if (n < 0) throw std::invalid_argument("series_box: level index must be >= 0");
  if (!(b > 0.0)) throw std::invalid_argument("series_box: b must be positive");
  const double em2 = -0.25 * (n + 1.0) * (n + 1.0) * M_PI * M_PI;
  const double e2 = -1.0 / 12.0 - 1.0 / (8.0 * em2);
  const double e6 =
      1.0 / (720.0 * em2) + 5.0 / (192.0 * em2 * em2) + 7.0 / (128.0 * em2 * em2 * em2);
  const double b2 = b * b;
  return em2 / b2 + e2 * b2 + e6 * b2 * b2 * b2;
}

// ---------------------------------------------------------------------------
// Root finding

namespace detail {

inline int sgn(double x) { return (x > 0.0) - (x < 0.0); }

inline double bisect_root(const std::function<double(double)>& f, double lo,
                          double hi, double flo, double root_tol, int max_bisect) {
  // lo < hi with a sign change between them; flo = f(lo)
  int slo = sgn(flo);
  for (int it = 0; it < max_bisect && (hi - lo) > root_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sgn(fm) == slo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Scan f downward from eps_hi, bracketing sign changes; returns up to
// `count` roots in descending order.
inline std::vector<double> descending_roots(const std::function<double(double)>& f,
                                            double eps_hi, double eps_lo,
                                            double step, double root_tol,
                                            int max_bisect, int count) {
  std::vector<double> roots;
  double x_prev = eps_hi;
  double f_prev = f(x_prev);
  if (f_prev == 0.0) {
    roots.push_back(x_prev);
    x_prev -= step;
    f_prev = f(x_prev);
  }
  while (x_prev > eps_lo && static_cast<int>(roots.size()) < count) {
    const double x = std::max(x_prev - step, eps_lo);
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (sgn(fx) != sgn(f_prev) && f_prev != 0.0) {
      roots.push_back(bisect_root(f, x, x_prev, fx, root_tol, max_bisect));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

// Roots with the retry policy: if two roots land suspiciously close
// (possible pair inside one scan step), halve the step and rescan, up to
// four times.
inline std::vector<double> roots_with_retry(const std::function<double(double)>& f,
                                            double eps_hi, double eps_lo,
                                            const EigenSolveConfig& cfg, int count) {
  double step = cfg.scan_step;
  for (int attempt = 0;; ++attempt) {
    auto roots = descending_roots(f, eps_hi, eps_lo, step, cfg.root_tol,
                                  cfg.max_bisect, count);
    bool suspicious = false;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (roots[i - 1] - roots[i] < 2.0 * step) suspicious = true;
    if (!suspicious) return roots;
    if (attempt >= 4)
      throw BracketAmbiguity("eigenvalue roots closer than the scan step after retries");
    step *= 0.5;
  }
}

inline double default_eps_hi() { return -0.4; }

inline double default_half_line_eps_lo(int count, double b) {
  double lo = -(2.0 * count + 6.0);
  if (b > 1.0) lo -= b * b / 4.0 + 3.0 * b * std::sqrt(count + 1.0);
  return lo;
}

inline double default_box_eps_lo(int count, double b) {
  const double em2 = -0.25 * (count + 1.0) * (count + 1.0) * M_PI * M_PI;
  return 1.5 * em2 / (b * b) - 10.0;
}

}  // namespace detail

// Levels of the half-line oscillator: the `count` largest roots in eps of
// U(eps, b) = 0, i.e. the lowest energies.
inline std::vector<EigenLevel> solve_half_line(const BarrierGeometry& geom, int count,
                                               const OscillatorParams& params,
                                               const EigenSolveConfig& cfg = {}) {
  geom.validate();
  params.validate();
  cfg.validate();
  if (geom.kind != BarrierGeometry::Kind::HalfLine)
    throw std::invalid_argument("solve_half_line: geometry must be HalfLine");
  if (count < 1) throw std::invalid_argument("solve_half_line: count must be >= 1");

  const auto f = [&](double eps) { return pcf_u({eps, geom.b}, cfg.precision); };
  const bool auto_window = cfg.auto_window();
  double hi = auto_window ? detail::default_eps_hi() : cfg.eps_hi;
  double lo = auto_window ? detail::default_half_line_eps_lo(count, geom.b) : cfg.eps_lo;

  std::vector<double> roots;
  for (int ext = 0;; ++ext) {
    roots = detail::roots_with_retry(f, hi, lo, cfg, count);
    if (static_cast<int>(roots.size()) >= count) break;
    if (!auto_window || ext >= 3)
      throw WindowTooSmall("solve_half_line: found " + std::to_string(roots.size()) +
                           " of " + std::to_string(count) + " levels in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    lo -= (hi - lo);
  }

  std::vector<EigenLevel> levels(count);
  for (int n = 0; n < count; ++n)
    levels[n] = {n, roots[n], energy_from_epsilon(roots[n], params), Parity::None};
  return levels;
}

// Levels of the symmetric box: even levels from y1(eps, b) = 0, odd levels
// from y2(eps, b) = 0, merged by increasing energy.  The merged sequence
// must alternate Even, Odd, Even, ... starting even (Sturm oscillation:
// the nodeless even solution is the ground state).
inline std::vector<EigenLevel> solve_box(const BarrierGeometry& geom, int count,
                                         const OscillatorParams& params,
                                         const EigenSolveConfig& cfg = {}) {
  geom.validate();
  params.validate();
  cfg.validate();
  if (geom.kind != BarrierGeometry::Kind::SymmetricBox)
    throw std::invalid_argument("solve_box: geometry must be SymmetricBox");
  if (count < 1) throw std::invalid_argument("solve_box: count must be >= 1");
  if (geom.b < 0.05)
    throw DomainTooNarrow("solve_box: b = " + std::to_string(geom.b) +
                          " below 0.05; use series_box instead");

  const auto f_even = [&](double eps) { return weber_y1({eps, geom.b}, cfg.precision); };
  const auto f_odd = [&](double eps) { return weber_y2({eps, geom.b}, cfg.precision); };
  const int n_even = (count + 1) / 2;
  const int n_odd = count / 2;
  const bool auto_window = cfg.auto_window();
  double hi = auto_window ? detail::default_eps_hi() : cfg.eps_hi;
  double lo = auto_window ? detail::default_box_eps_lo(count, geom.b) : cfg.eps_lo;

  std::vector<double> even, odd;
  for (int ext = 0;; ++ext) {
    even = detail::roots_with_retry(f_even, hi, lo, cfg, n_even);
    odd = n_odd > 0 ? detail::roots_with_retry(f_odd, hi, lo, cfg, n_odd)
                    : std::vector<double>{};
    if (static_cast<int>(even.size()) >= n_even &&
        static_cast<int>(odd.size()) >= n_odd)
      break;
    if (!auto_window || ext >= 3)
      throw WindowTooSmall("solve_box: insufficient sign changes in window");
    lo -= (hi - lo);
  }

  std::vector<EigenLevel> levels;
  levels.reserve(count);
  std::size_t ie = 0, io = 0;
  while (static_cast<int>(levels.size()) < count) {
    const bool take_even =
        io >= odd.size() || (ie < even.size() && even[ie] > odd[io]);
    if (take_even) {
      levels.push_back({static_cast<int>(levels.size()), even[ie],
                        energy_from_epsilon(even[ie], params), Parity::Even});
      ++ie;
    } else {
      levels.push_back({static_cast<int>(levels.size()), odd[io],
                        energy_from_epsilon(odd[io], params), Parity::Odd});
      ++io;
    }
  }
  for (int n = 0; n < count; ++n) {
    const Parity expect = (n % 2 == 0) ? Parity::Even : Parity::Odd;
    if (levels[n].parity != expect)
      throw BracketAmbiguity("solve_box: parity alternation broken at level " +
                             std::to_string(n) + " (missed root suspected)");
  }
  return levels;
}

// Unnormalized eigenfunction value: U(eps_n, z) on the half line, y1/y2 by
// parity in the box, identically zero outside the domain.
inline double eigenfunction_at(const EigenLevel& level, const BarrierGeometry& geom,
                               double z, const PrecisionConfig& cfg = {}) {
  geom.validate();
  if (geom.kind == BarrierGeometry::Kind::HalfLine) {
    if (z < geom.b) return 0.0;
    return pcf_u({level.epsilon, z}, cfg);
  }
  if (std::abs(z) > geom.b) return 0.0;
  return level.parity == Parity::Odd ? weber_y2({level.epsilon, z}, cfg)
                                     : weber_y1({level.epsilon, z}, cfg);
}

}  // namespace cylspec

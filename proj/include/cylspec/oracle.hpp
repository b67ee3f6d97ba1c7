#pragma once

// Independent finite-difference ground truth used to cross-check every
// analytic result in this library: a 1D Dirichlet eigensolver (3-point
// stencil, symmetric tridiagonal, Sturm-sequence bisection, optional h^2
// Richardson extrapolation), adaptive Simpson quadrature, and a pointwise
// Schrodinger-residual probe.
//
// This module deliberately shares no code with the special-function or
// spectra modules: only elementary arithmetic and the potential callables,
// so that agreement between the two routes is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylspec/errors.hpp"

namespace cylspec::oracle {

struct GridSpec {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int n_points = 20000;  // interior points carry the unknowns; ends are Dirichlet

  void validate() const {
    if (!(x_lo < x_hi)) throw std::invalid_argument("GridSpec: x_lo must be below x_hi");
    if (n_points < 1000) throw std::invalid_argument("GridSpec: n_points must be >= 1000");
  }
};

struct PotentialSpec {
  std::function<double(double)> v;
  std::vector<double> singular_points;  // grid ends must sit at or beyond these
  double hbar = 1.0;

  void validate(const GridSpec& grid) const {
    if (!v) throw std::invalid_argument("PotentialSpec: missing potential callable");
    if (!(hbar > 0.0)) throw std::invalid_argument("PotentialSpec: hbar must be positive");
    for (double s : singular_points)
      if (s > grid.x_lo && s < grid.x_hi)
        throw std::invalid_argument(
            "PotentialSpec: grid straddles the singular point x = " + std::to_string(s));
  }
};

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x,
// by the Sturm sequence of the LDL^T recurrence.
inline int sturm_count(const std::vector<double>& diag, double off2, double x) {
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  const double tiny = 1e-300;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (q == 0.0) q = tiny;
    q = diag[i] - x - off2 / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th (0-based) eigenvalue by bisection on the Sturm count.
inline double sturm_bisect(const std::vector<double>& diag, double off, int k) {
  const double off2 = off * off;
  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0 * std::abs(off);
  hi += 2.0 * std::abs(off);
  while (hi - lo > 1e-13 * (std::abs(lo) + std::abs(hi)) + 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(diag, off2, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> grid_eigenvalues(const PotentialSpec& pot,
                                            const GridSpec& grid, int count) {
  const int n = grid.n_points;
  const double h = (grid.x_hi - grid.x_lo) / (n + 1);
  const double kin = pot.hbar * pot.hbar / (2.0 * h * h);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * kin + pot.v(grid.x_lo + (i + 1) * h);
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = sturm_bisect(diag, -kin, k);
  return out;
}

}  // namespace detail

// Lowest `count` Dirichlet eigenvalues of -(hbar^2/2) psi'' + V psi = E psi.
// With `richardson` the h^2 error model is removed by combining the grid
// with its doubled refinement; the two resolutions must agree to 1e-4
// relative after extrapolation or GridTooCoarse is thrown.
inline std::vector<double> dirichlet_eigen(const PotentialSpec& pot, const GridSpec& grid,
                                           int count, bool richardson = true) {
  grid.validate();
  pot.validate(grid);
  if (count < 1 || count >= grid.n_points / 10)
    throw std::invalid_argument("dirichlet_eigen: count must be in [1, n_points/10)");

  const auto coarse = detail::grid_eigenvalues(pot, grid, count);
  if (!richardson) return coarse;

  GridSpec fine = grid;
  fine.n_points = 2 * grid.n_points + 1;  // halves h exactly
  const auto refined = detail::grid_eigenvalues(pot, fine, count);

  std::vector<double> out(count);
  double scale = 0.0;
  for (int k = 0; k < count; ++k) scale = std::max(scale, std::abs(refined[k]));
  if (scale == 0.0) scale = 1.0;
  for (int k = 0; k < count; ++k) {
    out[k] = (4.0 * refined[k] - coarse[k]) / 3.0;
    const double disagree =
        std::abs(refined[k] - coarse[k]) / std::max(std::abs(out[k]), 0.01 * scale);
    if (disagree > 1e-4)
      throw GridTooCoarse("dirichlet_eigen: level " + std::to_string(k) +
                          " moved by " + std::to_string(disagree) +
                          " relative between grid resolutions");
  }
  return out;
}

// Eigenvector of the discretized problem at (approximately) the given
// energy, by inverse iteration on the shifted tridiagonal system; used for
// near-edge exponent checks.  Returns interior values on the plain grid.
inline std::vector<double> dirichlet_eigenvector(const PotentialSpec& pot,
                                                 const GridSpec& grid, double energy) {
  grid.validate();
  pot.validate(grid);
  const int n = grid.n_points;
  const double h = (grid.x_hi - grid.x_lo) / (n + 1);
  const double kin = pot.hbar * pot.hbar / (2.0 * h * h);
  const double off = -kin;
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i)
    diag[i] = 2.0 * kin + pot.v(grid.x_lo + (i + 1) * h) - energy;

  std::vector<double> x(n, 1.0), lower(n), main(n), upper(n), work(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // tridiagonal LU with partial pivoting on (diag shifted) x_new = x
    for (int i = 0; i < n; ++i) {
      main[i] = diag[i];
      lower[i] = off;
      upper[i] = off;
      work[i] = 0.0;
    }
    std::vector<double> rhs = x;
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(lower[i + 1]) > std::abs(main[i])) {
        std::swap(main[i], lower[i + 1]);
        std::swap(upper[i], main[i + 1]);
        std::swap(work[i], upper[i + 1]);
        std::swap(rhs[i], rhs[i + 1]);
      }
      const double m = (main[i] != 0.0) ? lower[i + 1] / main[i] : 0.0;
      main[i + 1] -= m * upper[i];
      upper[i + 1] -= m * work[i];
      rhs[i + 1] -= m * rhs[i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double val = rhs[i];
      if (i + 1 < n) val -= upper[i] * x[i + 1];
      if (i + 2 < n) val -= work[i] * x[i + 2];
      x[i] = (main[i] != 0.0) ? val / main[i] : val / 1e-300;
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm * h);
    for (double& v : x) v /= norm;
  }
  return x;
}

// Adaptive composite Simpson integration to absolute tolerance `tol`.
inline double quadrature(const std::function<double(double)>& f, double x_lo,
                         double x_hi, double tol) {
  if (!(x_hi >= x_lo)) throw std::invalid_argument("quadrature: x_hi must be >= x_lo");
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be positive");
  if (x_hi == x_lo) return 0.0;

  struct Seg {
    double a, b, fa, fm, fb, whole, tol;
  };
  const auto simpson = [](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };

  std::int64_t used = 0;
  const std::int64_t cap = 1000000;
  double total = 0.0;
  std::vector<Seg> stack;
  {
    const double m = 0.5 * (x_lo + x_hi);
    const double fa = f(x_lo), fm = f(m), fb = f(x_hi);
    stack.push_back({x_lo, x_hi, fa, fm, fb, simpson(x_lo, x_hi, fa, fm, fb), tol});
  }
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    if (++used > cap)
      throw NonConvergence("quadrature: interval budget exhausted");
    const double m = 0.5 * (s.a + s.b);
    const double lm = 0.5 * (s.a + m), rm = 0.5 * (m + s.b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(s.a, m, s.fa, flm, s.fm);
    const double right = simpson(m, s.b, s.fm, frm, s.fb);
    const double delta = left + right - s.whole;
    if (std::abs(delta) <= 15.0 * s.tol || (s.b - s.a) < 1e-14 * (x_hi - x_lo)) {
      total += left + right + delta / 15.0;
    } else {
      stack.push_back({s.a, m, s.fa, flm, s.fm, left, 0.5 * s.tol});
      stack.push_back({m, s.b, s.fm, frm, s.fb, right, 0.5 * s.tol});
    }
  }
  return total;
}

// Max of |-(hbar^2/2) psi'' + (V - E) psi| / max(|E psi|, scale) over the
// sample points, with psi'' from a 5-point stencil of step h.
inline double schrodinger_residual(const std::function<double(double)>& psi,
                                   double energy, const PotentialSpec& pot,
                                   const std::vector<double>& sample_points,
                                   double h = 1e-4) {
  if (sample_points.empty())
    throw std::invalid_argument("schrodinger_residual: no sample points");
  for (double x : sample_points)
    for (double s : pot.singular_points)
      if (std::abs(x - s) < 4.0 * h)
        throw SingularPoint("schrodinger_residual: sample at x = " + std::to_string(x) +
                            " too close to the singular point " + std::to_string(s));
  double scale = 0.0;
  for (double x : sample_points) scale = std::max(scale, std::abs(energy * psi(x)));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (double x : sample_points) {
    const double d2 = (-psi(x - 2 * h) + 16.0 * psi(x - h) - 30.0 * psi(x) +
                       16.0 * psi(x + h) - psi(x + 2 * h)) /
                      (12.0 * h * h);
    const double r = -0.5 * pot.hbar * pot.hbar * d2 + (pot.v(x) - energy) * psi(x);
    worst = std::max(worst, std::abs(r) / scale);
  }
  return worst;
}

}  // namespace cylspec::oracle

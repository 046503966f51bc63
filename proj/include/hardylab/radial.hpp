// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_RADIAL_HPP
#define HARDYLAB_RADIAL_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "hardylab/domain.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/measure.hpp"

// Radial function calculus on balls: 1D grids over [delta, R], composite
// trapezoid quadrature for the weighted integrals that radial symmetry
// produces, finite-difference derivatives, and the two changes of variable
// used throughout (v = u r^{(N-2)/2} and the log-weight substitution).

namespace hardylab::radial {

/// A radial function sampled on a strictly increasing grid.  grid.front()
/// may be a positive inner cutoff delta when singular weights are involved.
struct RadialProfile {
  std::vector<double> grid;
  std::vector<double> values;
  bool zero_at_outer = false;

  std::size_t size() const { return grid.size(); }
};

inline RadialProfile make_radial_profile(std::vector<double> grid, std::vector<double> values,
                                         bool zero_at_outer) {
  if (grid.size() != values.size() || grid.size() < 2) {
    throw invalid_argument_error("make_radial_profile: need >= 2 matching samples");
  }
  if (grid.front() < 0.0) throw invalid_argument_error("make_radial_profile: negative radius");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw invalid_argument_error("make_radial_profile: grid must be strictly increasing");
    }
  }
  if (zero_at_outer && values.back() != 0.0) {
    throw precondition_error("make_radial_profile: zero_at_outer requires values.back() == 0");
  }
  RadialProfile p;
  p.grid = std::move(grid);
  p.values = std::move(values);
  p.zero_at_outer = zero_at_outer;
  return p;
}

inline std::vector<double> make_uniform_grid(double r0, double r1, int cells) {
  if (cells < 1 || !(r1 > r0)) throw invalid_argument_error("make_uniform_grid: bad range");
  std::vector<double> g(cells + 1);
  const double h = (r1 - r0) / cells;
  for (int i = 0; i <= cells; ++i) g[i] = r0 + h * i;
  g.back() = r1;
  return g;
}

/// Geometrically graded grid from delta to R; resolves integrable
/// singularities at the origin without adaptive quadrature.
inline std::vector<double> make_graded_grid(double delta, double r1, int cells) {
  if (!(delta > 0.0) || !(r1 > delta) || cells < 1) {
    throw invalid_argument_error("make_graded_grid: need 0 < delta < R");
  }
  std::vector<double> g(cells + 1);
  const double ratio = r1 / delta;
  for (int i = 0; i <= cells; ++i) g[i] = delta * std::pow(ratio, static_cast<double>(i) / cells);
  g.back() = r1;
  return g;
}

template <class F>
RadialProfile sample_on_grid(F&& f, std::vector<double> grid, bool zero_at_outer = false) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
  if (zero_at_outer) vals.back() = 0.0;
  return make_radial_profile(std::move(grid), std::move(vals), zero_at_outer);
}

namespace detail {

// Second-order derivative samples on a non-uniform grid, one-sided at ends.
inline std::vector<double> derivative_samples(const RadialProfile& p) {
  const std::size_t m = p.size();
  std::vector<double> d(m);
  const auto& r = p.grid;
  const auto& v = p.values;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    d[i] = -hp / (hm * (hm + hp)) * v[i - 1] + (hp - hm) / (hm * hp) * v[i] +
           hm / (hp * (hm + hp)) * v[i + 1];
  }
  {
    const double h0 = r[1] - r[0];
    const double h1 = r[2] - r[1];
    d[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * v[0] + (h0 + h1) / (h0 * h1) * v[1] -
           h0 / (h1 * (h0 + h1)) * v[2];
    const double hn = r[m - 1] - r[m - 2];
    const double hn1 = r[m - 2] - r[m - 3];
    d[m - 1] = (2.0 * hn + hn1) / (hn * (hn + hn1)) * v[m - 1] -
               (hn + hn1) / (hn * hn1) * v[m - 2] + hn / (hn1 * (hn + hn1)) * v[m - 3];
  }
  return d;
}

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return acc;
}

}  // namespace detail

/// N omega_N int p(r) r^{weight_exponent + N - 1} dr, composite trapezoid.
/// This is the 1D form of int_{ball} p(|x|) |x|^{weight_exponent} dx.
inline double weighted_integral(const RadialProfile& p, double weight_exponent, int dim) {
  if (dim < 3) throw invalid_argument_error("weighted_integral: dim must be >= 3");
  const double expo = weight_exponent + dim - 1.0;
  if (expo < 0.0 && p.grid.front() <= 0.0) {
    throw singular_integrand_error(
        "weighted_integral: singular weight needs a positive inner cutoff");
  }
  std::vector<double> integrand(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = p.grid[i];
    integrand[i] = (r == 0.0 && expo == 0.0) ? p.values[i] : p.values[i] * std::pow(r, expo);
  }
  return dim * unit_ball_volume(dim) * detail::trapezoid(p.grid, integrand);
}

/// int_{ball} |grad u|^2 dx = N omega_N int (u')^2 r^{N-1} dr for radial u.
inline double gradient_energy(const RadialProfile& u, int dim) {
  if (u.size() < 3) throw resolution_error("gradient_energy: need at least 3 grid points");
  if (!u.zero_at_outer) throw precondition_error("gradient_energy: u must vanish at the boundary");
  const auto d = detail::derivative_samples(u);
  std::vector<double> integrand(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    integrand[i] = d[i] * d[i] * std::pow(u.grid[i], dim - 1.0);
  }
  return dim * unit_ball_volume(dim) * detail::trapezoid(u.grid, integrand);
}

/// Left side of the Hardy-Poincare inequality:
///   int |grad u|^2 - ((N-2)^2/4) int u^2 / |x|^2.
/// Nonnegative (up to discretization noise) when u interpolates an
/// admissible H_0^1 function; any sign for arbitrary discrete data.
inline double hardy_gap(const RadialProfile& u, const Domain& dom) {
  if (!(u.grid.front() > 0.0)) {
    throw singular_integrand_error("hardy_gap: needs inner cutoff delta > 0");
  }
  RadialProfile usq = u;
  for (double& v : usq.values) v *= v;
  const double hardy = (dom.dim - 2.0) * (dom.dim - 2.0) / 4.0;
  return gradient_energy(u, dom.dim) - hardy * weighted_integral(usq, -2.0, dom.dim);
}

/// The "magical transformation" v(r) = u(r) r^{(N-2)/2}.
inline RadialProfile magical_transform(const RadialProfile& u, int dim) {
  RadialProfile v = u;
  const double beta = (dim - 2.0) / 2.0;
  for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = u.values[i] * std::pow(u.grid[i], beta);
  return v;
}

/// Inverse of magical_transform; composes with it to the identity.
inline RadialProfile inverse_magical_transform(const RadialProfile& v, int dim) {
  RadialProfile u = v;
  const double beta = (dim - 2.0) / 2.0;
  for (std::size_t i = 0; i < u.size(); ++i) u.values[i] = v.values[i] * std::pow(v.grid[i], -beta);
  return u;
}

struct LogTransformResult {
  RadialProfile u;
  bool lim0_ok = true;
  double lim0_residual = 0.0;
};

/// Log-weight substitution u(r) = v(r) r^{-(N-2)/2} sqrt(-log r) on (0, 1/e].
/// Requires v(1/e) = 0; the boundary condition v(r) log r -> 0 is checked
/// numerically at the inner cutoff with tolerance 1e-3 * max|v| and reported
/// rather than enforced.
inline LogTransformResult log_transform(const RadialProfile& v, int dim) {
  constexpr double kInvE = 0.36787944117144232160;
  if (!(v.grid.front() > 0.0) || v.grid.back() > kInvE * (1.0 + 1e-12)) {
    throw invalid_argument_error("log_transform: grid must lie in (0, 1/e]");
  }
  if (!v.zero_at_outer) throw precondition_error("log_transform: v(1/e) must be 0");
  double vmax = 0.0;
  for (double val : v.values) vmax = std::fmax(vmax, std::fabs(val));
  LogTransformResult out;
  out.lim0_residual = std::fabs(v.values.front() * std::log(v.grid.front()));
  out.lim0_ok = out.lim0_residual <= 1e-3 * std::fmax(vmax, 1e-300);
  const double beta = (dim - 2.0) / 2.0;
  RadialProfile u = v;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = u.grid[i];
    u.values[i] = v.values[i] * std::pow(r, -beta) * std::sqrt(-std::log(r));
  }
  u.values.back() = 0.0;
  out.u = std::move(u);
  return out;
}

/// Decreasing rearrangement of a radial decreasing profile as a step profile
/// on [0, |ball|]: shell k gets width omega_N (r_k^N - r_{k-1}^N) and the
/// trapezoid mean of u; an inner plug of measure omega_N r_0^N carries
/// u(r_0) when the grid starts at a positive cutoff.
inline measure::StepProfile step_from_radial(const RadialProfile& u, int dim) {
  const double omega = unit_ball_volume(dim);
  std::vector<double> widths;
  std::vector<double> values;
  const double r0 = u.grid.front();
  if (r0 > 0.0) {
    widths.push_back(omega * std::pow(r0, dim));
    values.push_back(u.values.front());
  }
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double w =
        omega * (std::pow(u.grid[i], dim) - std::pow(u.grid[i - 1], dim));
    widths.push_back(w);
    values.push_back(0.5 * (u.values[i] + u.values[i - 1]));
  }
  const double total = omega * std::pow(u.grid.back(), dim);
  return measure::make_step_profile(total, std::move(widths), std::move(values));
}

/// Both sides of the radial identity
///   int |grad u| dx = (N-1) omega_N^{1/N} ||u||_{N/(N-1),1}
/// for decreasing u with u(R) = 0: the left by quadrature of N omega_N
/// int |u'| r^{N-1} dr, the right through the measure-space Lorentz norm.
inline std::pair<double, double> gradient_l1_lorentz_identity(const RadialProfile& u,
                                                              const Domain& dom) {
  if (!u.zero_at_outer) {
    throw precondition_error("gradient_l1_lorentz_identity: u must vanish at R");
  }
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u.values[i] > u.values[i - 1] + 1e-14) {
      throw precondition_error("gradient_l1_lorentz_identity: u must be decreasing");
    }
  }
  const auto d = detail::derivative_samples(u);
  std::vector<double> integrand(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    integrand[i] = std::fabs(d[i]) * std::pow(u.grid[i], dom.dim - 1.0);
  }
  const double left = dom.dim * dom.omega_n * detail::trapezoid(u.grid, integrand);
  const auto u_star = step_from_radial(u, dom.dim);
  const double lorentz = measure::lorentz_norm(
      u_star, {dom.dim / (dom.dim - 1.0), 1.0}, dom.dim);
  const double right = (dom.dim - 1.0) * std::pow(dom.omega_n, 1.0 / dom.dim) * lorentz;
  return {left, right};
}

}  // namespace hardylab::radial

#endif  // HARDYLAB_RADIAL_HPP

// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_VARMIN_HPP
#define HARDYLAB_VARMIN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "hardylab/constants.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/special.hpp"

// Discretized 1D variational solvers recomputing each sharp constant
// independently of its closed form.  All problems are posed in the reduced
// coordinate v = u r^{(N-2)/2}, where the Hardy-gap numerator becomes
// int (v')^2 r dr and the singular origin disappears: P1 elements with exact
// element integrals then give a conforming discretization, so every discrete
// minimum is an upper bound for the continuum infimum.

namespace hardylab::varmin {

struct EigenResult {
  double eigenvalue = 0.0;
  radial::RadialProfile eigenvector;
  double residual = 0.0;
};

struct ConstrainedMinResult {
  radial::RadialProfile minimizer;
  double objective = 0.0;
  double constraint_value = 0.0;
};

enum class InequalityId { thm1, thm2, thm4, thm5, brezis_vazquez };

struct BestConstantResult {
  double value = 0.0;
  double closed_form = 0.0;
  double rel_gap = 0.0;
  bool converged = false;
};

namespace detail {

// Symmetric tridiagonal matrix; off[i] couples rows i and i+1.
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diag[i] * x[i];
      if (i > 0) acc += off[i - 1] * x[i - 1];
      if (i + 1 < n) acc += off[i] * x[i + 1];
      y[i] = acc;
    }
  }

  double inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      double row = std::fabs(diag[i]);
      if (i > 0) row += std::fabs(off[i - 1]);
      if (i + 1 < size()) row += std::fabs(off[i]);
      m = std::fmax(m, row);
    }
    return m;
  }
};

// Gaussian elimination with partial pivoting for a general tridiagonal
// system (dgtsv layout: dl sub-, d main, du super-diagonal, du2 fill-in).
inline bool solve_tridiag(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                          std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> du2(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i + 1])) {
      if (d[i] == 0.0) return false;
      const double fact = dl[i + 1] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i + 1] = 0.0;
    } else {
      const double fact = d[i] / dl[i + 1];
      d[i] = dl[i + 1];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = tmp;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= fact * b[i];
    }
  }
  if (d[n - 1] == 0.0) return false;
  x.assign(n, 0.0);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t k = n - 1; k-- > 1;) {
    const std::size_t i = k - 1;
    x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
  return true;
}

inline bool solve_tridiag(const Tridiag& t, const std::vector<double>& b, std::vector<double>& x) {
  const std::size_t n = t.size();
  std::vector<double> dl(n, 0.0), du(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dl[i + 1] = t.off[i];
    du[i] = t.off[i];
  }
  return solve_tridiag(std::move(dl), t.diag, std::move(du), b, x);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Stiffness int phi_i' phi_j' r dr on [0, R], uniform M cells, node M
// (Dirichlet) removed; the weight r is linear, so the midpoint value is the
// exact element integral.
inline Tridiag stiffness_weight_r(double R, int cells) {
  const double h = R / cells;
  Tridiag A;
  A.diag.assign(cells, 0.0);
  A.off.assign(cells - 1, 0.0);
  // Element e couples nodes e and e+1 with k_e = r_mid / h; rows/columns of
  // the eliminated Dirichlet node `cells` are dropped.
  for (int e = 0; e < cells; ++e) {
    const double k = ((e + 0.5) * h) / h;
    A.diag[e] += k;
    if (e + 1 < cells) {
      A.diag[e + 1] += k;
      A.off[e] -= k;
    }
  }
  return A;
}

// Consistent mass int phi_i phi_j w(r) dr with w = 1 or w = r.
inline Tridiag mass_matrix(double R, int cells, bool weight_r) {
  const double h = R / cells;
  Tridiag B;
  B.diag.assign(cells, 0.0);
  B.off.assign(cells - 1, 0.0);
  for (int e = 0; e < cells; ++e) {
    const double p = e * h;
    double mll, mrr, mlr;
    if (weight_r) {
      mll = p * h / 3.0 + h * h / 12.0;
      mrr = p * h / 3.0 + h * h / 4.0;
      mlr = p * h / 6.0 + h * h / 12.0;
    } else {
      mll = h / 3.0;
      mrr = h / 3.0;
      mlr = h / 6.0;
    }
    B.diag[e] += mll;
    if (e + 1 < cells) {
      B.diag[e + 1] += mrr;
      B.off[e] += mlr;
    }
  }
  return B;
}

// Exact hat-function moments int r^{a-1} phi_i(r) dr, a > 0.
inline std::vector<double> load_vector_power(double R, int cells, double a) {
  const double h = R / cells;
  auto p1 = [a](double r) { return std::pow(r, a) / a; };
  auto p2 = [a](double r) { return std::pow(r, a + 1.0) / (a + 1.0); };
  std::vector<double> m(cells, 0.0);
  for (int e = 0; e < cells; ++e) {
    const double lo = e * h;
    const double hi = lo + h;
    const double d1 = p1(hi) - p1(lo);
    const double d2 = p2(hi) - p2(lo);
    const double left = (hi * d1 - d2) / h;   // weight of node e
    const double right = (d2 - lo * d1) / h;  // weight of node e+1
    m[e] += left;
    if (e + 1 < cells) m[e + 1] += right;
  }
  return m;
}

struct GenEigenOutput {
  double eigenvalue = 0.0;
  std::vector<double> vec;
  double residual = 0.0;
  int iterations = 0;
};

// Smallest eigenpair of A x = lambda B x by inverse iteration from the
// all-ones vector, with Rayleigh-quotient shifts once locked on.
inline GenEigenOutput smallest_generalized_eigen(const Tridiag& A, const Tridiag& B) {
  const std::size_t n = A.size();
  std::vector<double> x(n, 1.0), bx(n), ax(n), y(n), res(n);
  const double norm_a = A.inf_norm();
  const double tol = std::fmax(1e-10, 100.0 * 2.2e-16 * norm_a);
  GenEigenOutput out;
  double lambda = 0.0;
  for (int it = 0; it < 120; ++it) {
    B.apply(x, bx);
    const bool use_shift = it >= 8;
    bool ok;
    if (use_shift) {
      Tridiag shifted = A;
      for (std::size_t i = 0; i < n; ++i) shifted.diag[i] -= lambda * B.diag[i];
      for (std::size_t i = 0; i + 1 < n; ++i) shifted.off[i] -= lambda * B.off[i];
      ok = solve_tridiag(shifted, bx, y);
      if (!ok) {
        Tridiag nudged = A;
        const double eps_shift = lambda * (1.0 + 1e-11) + 1e-300;
        for (std::size_t i = 0; i < n; ++i) nudged.diag[i] -= eps_shift * B.diag[i];
        for (std::size_t i = 0; i + 1 < n; ++i) nudged.off[i] -= eps_shift * B.off[i];
        ok = solve_tridiag(nudged, bx, y);
      }
    } else {
      ok = solve_tridiag(A, bx, y);
    }
    if (!ok) throw convergence_error("smallest_generalized_eigen: singular solve");
    const double scale = norm2(y);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw convergence_error("smallest_generalized_eigen: iterate collapsed");
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
    A.apply(x, ax);
    B.apply(x, bx);
    lambda = dot(x, ax) / dot(x, bx);
    for (std::size_t i = 0; i < n; ++i) res[i] = ax[i] - lambda * bx[i];
    out.residual = norm2(res);  // ||x|| = 1
    out.iterations = it + 1;
    if (out.residual <= tol) break;
  }
  if (out.residual > 1e-9) {
    throw convergence_error("smallest_generalized_eigen: residual " +
                            std::to_string(out.residual) + " after " +
                            std::to_string(out.iterations) + " iterations");
  }
  out.eigenvalue = lambda;
  out.vec = std::move(x);
  return out;
}

inline radial::RadialProfile profile_from_nodes(double R, int cells, std::vector<double> interior,
                                                bool normalize_peak) {
  std::vector<double> grid = radial::make_uniform_grid(0.0, R, cells);
  interior.push_back(0.0);  // Dirichlet node
  if (normalize_peak) {
    double peak = 0.0;
    for (double v : interior) {
      if (std::fabs(v) > std::fabs(peak)) peak = v;
    }
    if (peak != 0.0) {
      for (double& v : interior) v /= peak;
    }
  }
  return radial::make_radial_profile(std::move(grid), std::move(interior), true);
}

}  // namespace detail

/// Smallest mu with (r v')' + mu v = 0 on (0, R), v(R) = 0, natural at 0:
///   mu(R) = min int_0^R (v')^2 r dr / int_0^R v^2 dr.
/// Exact value is V0 / R; the eigenvector is J0(2 sqrt(mu r)).
inline EigenResult min_weighted_rayleigh(double R, int grid_size) {
  if (!(R > 0.0)) throw invalid_argument_error("min_weighted_rayleigh: R must be positive");
  if (grid_size < 64) throw invalid_argument_error("min_weighted_rayleigh: grid_size >= 64");
  const auto A = detail::stiffness_weight_r(R, grid_size);
  const auto B = detail::mass_matrix(R, grid_size, /*weight_r=*/false);
  auto eig = detail::smallest_generalized_eigen(A, B);
  EigenResult out;
  out.eigenvalue = eig.eigenvalue;
  out.residual = eig.residual;
  out.eigenvector = detail::profile_from_nodes(R, grid_size, std::move(eig.vec), true);
  return out;
}

/// First Dirichlet eigenvalue of the Laplacian on the unit disk:
/// -(r v')' = lambda r v on (0,1), v(1) = 0.  Returns Lambda_2 = j01^2.
inline EigenResult disk_dirichlet_eigenvalue(int grid_size) {
  if (grid_size < 64) throw invalid_argument_error("disk_dirichlet_eigenvalue: grid_size >= 64");
  const auto A = detail::stiffness_weight_r(1.0, grid_size);
  const auto B = detail::mass_matrix(1.0, grid_size, /*weight_r=*/true);
  auto eig = detail::smallest_generalized_eigen(A, B);
  EigenResult out;
  out.eigenvalue = eig.eigenvalue;
  out.residual = eig.residual;
  out.eigenvector = detail::profile_from_nodes(1.0, grid_size, std::move(eig.vec), true);
  return out;
}

/// Minimizer of I(v) = 2 pi int (v')^2 r dr - 2 N omega_N int v r^{a-1} dr
/// over v(R) = 0 with a = N/p - N/2 + 1 and R fixed by
/// R^{2a} = 2 a^3/(N omega_N).  The discrete Euler system K v = lambda m is
/// linear; the solution is rescaled so the constraint integral
/// 2 pi int v r^{a-1} dr equals 1 exactly, and the energy identity
/// 2 pi int (v')^2 r dr = N omega_N / (2 pi) is checked to 1e-4 relative.
inline ConstrainedMinResult min_linear_constraint(int dim, double p, int grid_size) {
  if (dim < 3) throw invalid_argument_error("min_linear_constraint: dim must be >= 3");
  const double crit = 2.0 * dim / (dim - 2.0);
  if (!(p >= 1.0) || !(p < crit)) {
    throw invalid_argument_error("min_linear_constraint: need 1 <= p < 2N/(N-2)");
  }
  if (grid_size < 64) throw invalid_argument_error("min_linear_constraint: grid_size >= 64");
  constexpr double kPi = 3.14159265358979323846;
  const double omega = unit_ball_volume(dim);
  const double a = dim / p - dim / 2.0 + 1.0;
  const double R = std::pow(2.0 * a * a * a / (dim * omega), 1.0 / (2.0 * a));
  // As p approaches 2N/(N-2) the exponent a tends to 0 and the normalizing
  // radius collapses; below ~1e-8 the uniform grid cannot represent it.
  if (!std::isfinite(R) || R < 1e-8) {
    throw invalid_argument_error(
        "min_linear_constraint: p too close to the critical exponent, radius underflows");
  }
  const auto K = detail::stiffness_weight_r(R, grid_size);
  const auto m = detail::load_vector_power(R, grid_size, a);
  std::vector<double> rhs(m);
  const double lambda = dim * omega / (2.0 * kPi);
  for (double& v : rhs) v *= lambda;
  std::vector<double> v;
  if (!detail::solve_tridiag(K, rhs, v)) {
    throw convergence_error("min_linear_constraint: singular Euler system");
  }
  const double raw_constraint = 2.0 * kPi * detail::dot(m, v);
  if (!(std::fabs(raw_constraint) > 0.0)) {
    throw convergence_error("min_linear_constraint: degenerate constraint");
  }
  const double c = 1.0 / raw_constraint;
  for (double& vi : v) vi *= c;
  std::vector<double> kv;
  K.apply(v, kv);
  const double energy = 2.0 * kPi * detail::dot(v, kv);
  const double constraint = 2.0 * kPi * detail::dot(m, v);
  const double target = dim * omega / (2.0 * kPi);
  if (std::fabs(energy - target) > 1e-4 * target) {
    throw convergence_error("min_linear_constraint: energy identity violated");
  }
  ConstrainedMinResult out;
  out.objective = energy - 2.0 * dim * omega * detail::dot(m, v);
  out.constraint_value = constraint;
  out.minimizer = detail::profile_from_nodes(R, grid_size, std::move(v), false);
  return out;
}

namespace detail {

struct QuotientProblem {
  Tridiag K;
  // Denominator: either v^T B v (rayleigh = true) or (m^T v)^2.
  bool rayleigh = false;
  Tridiag B;
  std::vector<double> m;
  double scale = 1.0;
  bool project_nonneg = false;

  double eval(const std::vector<double>& v, std::vector<double>& kv) const {
    K.apply(v, kv);
    const double num = dot(v, kv);
    double den;
    if (rayleigh) {
      std::vector<double> bv;
      B.apply(v, bv);
      den = dot(v, bv);
    } else {
      const double mv = dot(m, v);
      den = mv * mv;
    }
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    return scale * num / den;
  }

  void gradient(const std::vector<double>& v, const std::vector<double>& kv, double q,
                std::vector<double>& g) const {
    const std::size_t n = v.size();
    g.resize(n);
    if (rayleigh) {
      std::vector<double> bv;
      B.apply(v, bv);
      const double den = dot(v, bv);
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = 2.0 / den * (scale * kv[i] - q * bv[i]);
      }
    } else {
      const double mv = dot(m, v);
      const double den = mv * mv;
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = 2.0 / den * (scale * kv[i] - q * mv * m[i]);
      }
    }
  }
};

// Projected gradient descent with backtracking; returns the final quotient
// value and whether the stationarity criterion (not the iteration cap)
// stopped the run.
inline std::pair<double, bool> descend(const QuotientProblem& prob, std::vector<double> v,
                                       int max_iter = 400) {
  const std::size_t n = v.size();
  auto project = [&](std::vector<double>& w) {
    if (prob.project_nonneg) {
      if (!prob.m.empty() && dot(prob.m, w) < 0.0) {
        for (double& wi : w) wi = -wi;
      }
      for (double& wi : w) wi = std::fmax(wi, 0.0);
    }
    const double s = norm2(w);
    if (s > 0.0) {
      for (double& wi : w) wi /= s;
    }
  };
  project(v);
  std::vector<double> kv, g, trial;
  double q = prob.eval(v, kv);
  if (!std::isfinite(q)) return {q, false};
  double step = 1.0;
  int stall = 0;
  for (int it = 0; it < max_iter; ++it) {
    prob.gradient(v, kv, q, g);
    const double gnorm = norm2(g);
    if (!(gnorm > 0.0)) return {q, true};
    bool improved = false;
    double q_new = q;
    step *= 2.0;
    for (int bt = 0; bt < 50; ++bt) {
      trial = v;
      for (std::size_t i = 0; i < n; ++i) trial[i] -= step * g[i] / gnorm;
      project(trial);
      std::vector<double> kv_trial;
      q_new = prob.eval(trial, kv_trial);
      if (q_new < q) {
        v = std::move(trial);
        kv = std::move(kv_trial);
        improved = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!improved) return {q, true};  // no descent direction left
    const double rel_drop = (q - q_new) / std::fmax(std::fabs(q), 1e-300);
    q = q_new;
    if (rel_drop < 1e-13) {
      if (++stall >= 3) return {q, true};
    } else {
      stall = 0;
    }
  }
  return {q, false};
}

}  // namespace detail

/// Infimum of the Hardy-gap quotient for one of the remainder inequalities,
/// recomputed by projected gradient descent over the reduced profile space
/// (eight seeded random starts plus the closed-form minimizer, best kept).
/// p is required for thm2/thm5 and ignored otherwise.
inline BestConstantResult best_constant_search(InequalityId id, const Domain& dom, int grid_size,
                                               double p = 0.0, unsigned seed = 0) {
  if (grid_size < 64) throw invalid_argument_error("best_constant_search: grid_size >= 64");
  const int n = dom.dim;
  const double omega = dom.omega_n;
  const double R = dom.radius;
  detail::QuotientProblem prob;
  double closed = 0.0;
  double start_exponent = 0.0;  // for power-law closed-form starts
  double domain_len = R;
  const auto sc = special::spectral_constants();
  switch (id) {
    case InequalityId::thm1:
      prob.K = detail::stiffness_weight_r(R, grid_size);
      prob.rayleigh = true;
      prob.B = detail::mass_matrix(R, grid_size, false);
      prob.scale = std::pow(omega, 1.0 / n);
      closed = constants::thm1_constant(dom);
      break;
    case InequalityId::brezis_vazquez:
      prob.K = detail::stiffness_weight_r(R, grid_size);
      prob.rayleigh = true;
      prob.B = detail::mass_matrix(R, grid_size, true);
      prob.scale = 1.0;
      closed = constants::brezis_vazquez(dom);
      break;
    case InequalityId::thm2: {
      const double a = constants::thm2_exponent(dom, p);
      closed = constants::thm2_constant(dom, p);  // validates p
      prob.K = detail::stiffness_weight_r(R, grid_size);
      prob.m = detail::load_vector_power(R, grid_size, a);
      prob.scale = std::pow(omega, 1.0 - 2.0 / p) / n;
      prob.project_nonneg = true;
      start_exponent = a;
      break;
    }
    case InequalityId::thm4: {
      const double a = 0.5 * n;  // p = N/(N-1)
      closed = constants::thm4_constants(dom).first;
      prob.K = detail::stiffness_weight_r(R, grid_size);
      prob.m = detail::load_vector_power(R, grid_size, a);
      prob.scale = 1.0 / (n * (n - 1.0) * (n - 1.0) * omega);
      prob.project_nonneg = true;
      start_exponent = a;
      break;
    }
    case InequalityId::thm5: {
      closed = constants::thm5_constant(dom, p);  // validates p
      const double a = n / p - 0.5 * n;
      prob.K = detail::stiffness_weight_r(R, grid_size);
      prob.m = detail::load_vector_power(R, grid_size, a);
      const double frac = p / (n - p);
      prob.scale = std::pow(omega, 1.0 - 2.0 / p) * frac * frac / n;
      prob.project_nonneg = true;
      start_exponent = a;
      break;
    }
  }
  // Closed-form start.
  const double h = domain_len / grid_size;
  std::vector<double> start(grid_size);
  if (prob.rayleigh) {
    const double mu = sc.v0 / R;  // thm1 eigen profile; close enough for bv too
    for (int i = 0; i < grid_size; ++i) {
      const double r = i * h;
      start[i] = (id == InequalityId::brezis_vazquez)
                     ? special::bessel_j0(sc.j01 * r / R)
                     : special::bessel_j0(2.0 * std::sqrt(mu * r));
    }
  } else {
    for (int i = 0; i < grid_size; ++i) {
      const double r = i * h;
      start[i] = std::pow(domain_len, start_exponent) - std::pow(r, start_exponent);
    }
  }
  auto [best, best_conv] = detail::descend(prob, start);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < 8; ++s) {
    std::vector<double> rand_start(grid_size);
    for (auto& v : rand_start) v = unif(rng);
    auto [q, conv] = detail::descend(prob, std::move(rand_start));
    if (q < best) {
      best = q;
      best_conv = conv;
    }
  }
  BestConstantResult out;
  out.value = best;
  out.closed_form = closed;
  out.rel_gap = std::fabs(best - closed) / std::fmax(std::fabs(closed), 1e-300);
  out.converged = best_conv;
  return out;
}

}  // namespace hardylab::varmin

#endif  // HARDYLAB_VARMIN_HPP

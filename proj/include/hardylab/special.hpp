// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_SPECIAL_HPP
#define HARDYLAB_SPECIAL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "hardylab/errors.hpp"

// Bessel function of order zero, its first zeros, and the spectral constants
// built from them.  Everything here is plain double arithmetic; series
// truncation happens when a term drops below 1e-18.

namespace hardylab::special {

enum class EvalMethod : std::uint8_t { series, asymptotic };

/// One J0 evaluation together with the branch that produced it.
struct BesselEval {
  double argument = 0.0;
  double value = 0.0;
  EvalMethod method = EvalMethod::series;
};

/// Branch switchover for J0/J1.  The power series keeps roundoff below
/// ~1e-12 up to here; the Hankel expansion reaches ~1e-12 from here on.
inline constexpr double kSeriesAsymptoticSwitch = 12.0;

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kQuarterPi = 0.78539816339744830962;

// Power series sum_{n>=0} (-1)^n (x^2/4)^n / (n!)^2, compensated summation.
inline double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  for (int n = 1; n < 400; ++n) {
    term *= -q / (static_cast<double>(n) * n);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::fabs(term) < 1e-18) break;
  }
  return sum;
}

// Power series (x/2) sum_{n>=0} (-1)^n (x^2/4)^n / (n! (n+1)!).
inline double j1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  for (int n = 1; n < 400; ++n) {
    term *= -q / (static_cast<double>(n) * (n + 1.0));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::fabs(term) < 1e-18) break;
  }
  return 0.5 * x * sum;
}

// Hankel expansion J_nu(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (2 nu + 1) pi / 4, with the Hankel symbols
//   (nu, m) = prod_{j=1..m} (4 nu^2 - (2j-1)^2) / (m! 8^m).
// Terms are summed to the smallest one; the last kept term enters with
// weight 1/2, which halves the optimal-truncation error near x = 12.
inline double hankel_asymptotic(double x, double four_nu_sq, double chi) {
  double p_sum = 1.0;
  double q_sum = 0.0;
  double term = 1.0;
  double prev_mag = std::numeric_limits<double>::max();
  for (int m = 1; m <= 60; ++m) {
    const double odd = 2.0 * m - 1.0;
    const double next = term * (four_nu_sq - odd * odd) / (8.0 * m * x);
    if (std::fabs(next) >= prev_mag) break;
    term = next;
    prev_mag = std::fabs(term);
    const double odd2 = 2.0 * m + 1.0;
    const double peek = term * (four_nu_sq - odd2 * odd2) / (8.0 * (m + 1) * x);
    const bool last = std::fabs(peek) >= prev_mag || std::fabs(term) < 1e-19;
    const double w = last ? 0.5 * term : term;
    if (m % 2 == 1) {
      const int k = (m - 1) / 2;
      q_sum += (k % 2 == 0) ? w : -w;
    } else {
      const int k = m / 2;
      p_sum += (k % 2 == 0) ? w : -w;
    }
    if (last) break;
  }
  return std::sqrt(2.0 / (kPi * x)) * (p_sum * std::cos(chi) - q_sum * std::sin(chi));
}

}  // namespace detail

/// J0 with branch information.  Absolute error <= 1e-12 on [0, 50].
inline BesselEval bessel_j0_eval(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw invalid_argument_error("bessel_j0: argument must be finite and nonnegative");
  }
  BesselEval out;
  out.argument = x;
  if (x <= kSeriesAsymptoticSwitch) {
    out.method = EvalMethod::series;
    out.value = detail::j0_series(x);
  } else {
    out.method = EvalMethod::asymptotic;
    out.value = detail::hankel_asymptotic(x, 0.0, x - detail::kQuarterPi);
  }
  return out;
}

inline double bessel_j0(double x) { return bessel_j0_eval(x).value; }

/// J1, same branch layout as J0.  Used for Newton polish via J0' = -J1.
inline double bessel_j1(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw invalid_argument_error("bessel_j1: argument must be finite and nonnegative");
  }
  if (x <= kSeriesAsymptoticSwitch) return detail::j1_series(x);
  return detail::hankel_asymptotic(x, 4.0, x - 3.0 * detail::kQuarterPi);
}

/// First positive zero of f on [lo, hi] by bisection, optionally polished
/// with as many as five Newton steps when a derivative is supplied.
///
/// Bisection runs until the bracket is narrower than 1e-13 * max(1, |mid|),
/// so results are deterministic and bit-reproducible.
inline double find_first_zero(const std::function<double(double)>& f, double lo, double hi,
                              const std::function<double(double)>& df = nullptr) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw invalid_argument_error("find_first_zero: bad bracket");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw bracketing_error("find_first_zero: no sign change on bracket");
  }
  double mid = 0.5 * (lo + hi);
  int iter = 0;
  constexpr int kMaxIter = 200;
  // terminal width 1e-13, relaxed to a few ulps when the root is too large
  // for that to be representable
  while (hi - lo > std::fmax(1e-13, 8.0 * 2.2e-16 * std::fabs(mid))) {
    if (++iter > kMaxIter) {
      throw convergence_error("find_first_zero: bisection exceeded max iterations");
    }
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double root = 0.5 * (lo + hi);
  if (df) {
    for (int k = 0; k < 5; ++k) {
      const double fr = f(root);
      const double dr = df(root);
      if (dr == 0.0) break;
      const double step = fr / dr;
      const double next = root - step;
      if (!(next >= lo - (hi - lo) && next <= hi + (hi - lo))) break;
      root = next;
      if (std::fabs(step) < 1e-15 * std::fmax(1.0, std::fabs(root))) break;
    }
  }
  return root;
}

/// j01 (first positive zero of J0), Lambda_2 = j01^2 (first Dirichlet
/// eigenvalue of the Laplacian on the unit disk) and V0 = j01^2 / 4 (first
/// zero of r -> J0(2 sqrt(r))).  V0 = Lambda_2 / 4 holds by construction.
struct SpectralConstants {
  double j01 = 0.0;
  double lambda2 = 0.0;
  double v0 = 0.0;
};

inline SpectralConstants spectral_constants() {
  static const SpectralConstants cached = [] {
    SpectralConstants sc;
    sc.j01 = find_first_zero([](double x) { return bessel_j0(x); }, 2.0, 3.0,
                             [](double x) { return -bessel_j1(x); });
    sc.lambda2 = sc.j01 * sc.j01;
    sc.v0 = 0.25 * sc.lambda2;
    return sc;
  }();
  return cached;
}

}  // namespace hardylab::special

#endif  // HARDYLAB_SPECIAL_HPP

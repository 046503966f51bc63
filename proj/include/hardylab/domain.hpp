// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_DOMAIN_HPP
#define HARDYLAB_DOMAIN_HPP

#include <cmath>

#include "hardylab/errors.hpp"

namespace hardylab {

/// Volume of the unit ball in R^N, via the recursion
/// omega_1 = 2, omega_2 = pi, omega_N = omega_{N-2} * 2 pi / N.
inline double unit_ball_volume(int dim) {
  if (dim < 1) throw invalid_argument_error("unit_ball_volume: dim must be >= 1");
  constexpr double pi = 3.14159265358979323846;
  double even = pi;   // omega_2
  double odd = 2.0;   // omega_1
  if (dim == 1) return odd;
  if (dim == 2) return even;
  double out = (dim % 2 == 0) ? even : odd;
  for (int n = (dim % 2 == 0) ? 4 : 3; n <= dim; n += 2) {
    out *= 2.0 * pi / n;
  }
  return out;
}

/// Ambient geometry shared by all modules: dimension N >= 3, the measure
/// |Omega|, the unit-ball volume omega_N, the radius of the equi-measure
/// ball Omega#, and the critical exponent 2* = 2N/(N-2).
struct Domain {
  int dim = 0;
  double volume = 0.0;
  double omega_n = 0.0;
  double radius = 0.0;
  double crit_exp = 0.0;
};

inline Domain make_domain(int dim, double volume) {
  if (dim < 3) throw invalid_argument_error("make_domain: dim must be >= 3");
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw invalid_argument_error("make_domain: volume must be positive and finite");
  }
  Domain d;
  d.dim = dim;
  d.volume = volume;
  d.omega_n = unit_ball_volume(dim);
  d.radius = std::pow(volume / d.omega_n, 1.0 / dim);
  d.crit_exp = 2.0 * dim / (dim - 2.0);
  return d;
}

/// The ball of radius R in R^N as a Domain.
inline Domain make_ball_domain(int dim, double radius) {
  if (!(radius > 0.0)) throw invalid_argument_error("make_ball_domain: radius must be positive");
  return make_domain(dim, unit_ball_volume(dim) * std::pow(radius, dim));
}

}  // namespace hardylab

#endif  // HARDYLAB_DOMAIN_HPP

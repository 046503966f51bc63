// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_MEASURE_HPP
#define HARDYLAB_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "hardylab/errors.hpp"

// Discrete measure-space calculus.  Functions on a measure interval [0, V]
// are represented as step profiles: ordered cells of positive width with one
// value each.  All operations below are exact finite combinatorics on that
// representation, which is what makes brute-force oracles possible in tests.

namespace hardylab::measure {

struct StepProfile {
  double total_measure = 0.0;
  std::vector<double> widths;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }

  double integral() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * widths[i];
    return acc;
  }

  /// Cell breakpoints 0 = b_0 < b_1 < ... < b_n = total_measure.
  std::vector<double> breakpoints() const {
    std::vector<double> b(widths.size() + 1, 0.0);
    for (std::size_t i = 0; i < widths.size(); ++i) b[i + 1] = b[i] + widths[i];
    return b;
  }

  bool is_decreasing() const {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[i - 1]) return false;
    }
    return true;
  }
};

inline StepProfile make_step_profile(double total_measure, std::vector<double> widths,
                                     std::vector<double> values) {
  if (widths.empty() || widths.size() != values.size()) {
    throw invalid_argument_error("make_step_profile: need matching, nonempty widths/values");
  }
  double sum = 0.0;
  for (double w : widths) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw invalid_argument_error("make_step_profile: widths must be positive");
    }
    sum += w;
  }
  if (!(total_measure > 0.0) || std::fabs(sum - total_measure) > 1e-12 * total_measure) {
    throw invalid_argument_error("make_step_profile: widths must sum to total_measure");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw invalid_argument_error("make_step_profile: non-finite value");
  }
  StepProfile p;
  p.total_measure = total_measure;
  p.widths = std::move(widths);
  p.values = std::move(values);
  return p;
}

/// Equal-measure cells over [0, total_measure].
inline StepProfile make_uniform_profile(double total_measure, std::vector<double> values) {
  if (values.empty()) throw invalid_argument_error("make_uniform_profile: empty values");
  std::vector<double> widths(values.size(), total_measure / values.size());
  return make_step_profile(total_measure, std::move(widths), std::move(values));
}

/// Lorentz exponent pair (r, s); the defining integral covers finite s only.
struct LorentzIndex {
  double r = 0.0;
  double s = 0.0;
};

inline void validate(const LorentzIndex& idx) {
  if (!(idx.r > 0.0) || !(idx.s > 0.0) || !std::isfinite(idx.r) || !std::isfinite(idx.s)) {
    throw invalid_argument_error("LorentzIndex: need 0 < r, s < infinity");
  }
}

namespace detail {

inline void require_same_total(const StepProfile& f, const StepProfile& g, const char* who) {
  const double scale = std::fmax(f.total_measure, g.total_measure);
  if (std::fabs(f.total_measure - g.total_measure) > 1e-12 * scale) {
    throw domain_mismatch_error(std::string(who) + ": total_measure mismatch");
  }
}

// Common refinement: both profiles resampled onto the union of breakpoints.
inline std::pair<StepProfile, StepProfile> refine_to_common(const StepProfile& f,
                                                            const StepProfile& g) {
  require_same_total(f, g, "refine_to_common");
  const double total = f.total_measure;
  const double merge_tol = 1e-12 * total;
  const auto bf = f.breakpoints();
  const auto bg = g.breakpoints();
  std::vector<double> merged;
  merged.reserve(bf.size() + bg.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < bf.size() || j < bg.size()) {
    double next;
    if (j >= bg.size() || (i < bf.size() && bf[i] <= bg[j])) {
      next = bf[i++];
      if (j < bg.size() && std::fabs(bg[j] - next) <= merge_tol) ++j;
    } else {
      next = bg[j++];
    }
    if (merged.empty() || next - merged.back() > merge_tol) merged.push_back(next);
  }
  merged.back() = total;
  auto resample = [&](const StepProfile& p) {
    const auto bp = p.breakpoints();
    StepProfile out;
    out.total_measure = total;
    std::size_t cell = 0;
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
      const double midpoint = 0.5 * (merged[k] + merged[k + 1]);
      while (cell + 1 < p.size() && bp[cell + 1] <= midpoint) ++cell;
      out.widths.push_back(merged[k + 1] - merged[k]);
      out.values.push_back(p.values[cell]);
    }
    return out;
  };
  return {resample(f), resample(g)};
}

}  // namespace detail

/// Sort the (value, width) cells by value, descending.  Equimeasurable with
/// the input: every superlevel set keeps its measure exactly.
inline StepProfile decreasing_rearrangement(const StepProfile& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f.values[a] > f.values[b]; });
  StepProfile out;
  out.total_measure = f.total_measure;
  out.widths.reserve(f.size());
  out.values.reserve(f.size());
  for (std::size_t idx : order) {
    out.widths.push_back(f.widths[idx]);
    out.values.push_back(f.values[idx]);
  }
  return out;
}

/// Majorization order: true iff int_0^s f* <= int_0^s g* at every breakpoint
/// of the merged partition and the total integrals agree to 1e-10 relative.
/// Cumulative integrals of step functions are piecewise linear, so checking
/// breakpoints is exact.
inline bool dominates(const StepProfile& f, const StepProfile& g) {
  detail::require_same_total(f, g, "dominates");
  auto [fr, gr] = detail::refine_to_common(decreasing_rearrangement(f),
                                           decreasing_rearrangement(g));
  double cf = 0.0;
  double cg = 0.0;
  double scale = 1.0;
  const double total_f = fr.integral();
  const double total_g = gr.integral();
  scale = std::fmax(scale, std::fmax(std::fabs(total_f), std::fabs(total_g)));
  if (std::fabs(total_f - total_g) > 1e-10 * scale) return false;
  const double slack = 1e-12 * scale;
  for (std::size_t k = 0; k < fr.size(); ++k) {
    cf += fr.values[k] * fr.widths[k];
    cg += gr.values[k] * gr.widths[k];
    if (cf > cg + slack) return false;
  }
  return true;
}

/// Rearrangement of a decreasing f0 aligned with the level order of psi:
/// the k-th largest slice of f0 goes to the cell holding the k-th largest
/// psi value (ties by cell index, ascending).  Guarantees
///   int fbar * psi = int f0 * psi*
/// exactly, the maximal pairing among rearrangements of f0.
///
/// When a receiving cell is wider than the next slice of f0, the cell is
/// subdivided, so the output partition can refine the input one; on equal
/// partitions the output is a pure permutation of f0's cells.
inline StepProfile pseudo_rearrangement(const StepProfile& f0, const StepProfile& psi) {
  detail::require_same_total(f0, psi, "pseudo_rearrangement");
  if (!f0.is_decreasing()) {
    throw precondition_error("pseudo_rearrangement: f0 must be decreasing");
  }
  auto [f, p] = detail::refine_to_common(f0, psi);
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.values[a] > p.values[b]; });

  // Walk cells in decreasing-psi order handing out successive slices of f.
  struct Piece {
    double width;
    double value;
  };
  std::vector<std::vector<Piece>> assigned(n);
  std::size_t src = 0;
  double src_left = f.widths.empty() ? 0.0 : f.widths[0];
  for (std::size_t rank = 0; rank < n; ++rank) {
    const std::size_t cell = order[rank];
    double need = p.widths[cell];
    while (need > 0.0 && src < f.size()) {
      const double take = std::fmin(need, src_left);
      if (take > 0.0) assigned[cell].push_back({take, f.values[src]});
      need -= take;
      src_left -= take;
      if (src_left <= 1e-12 * f.total_measure / (f.size() + 1)) {
        ++src;
        src_left = (src < f.size()) ? f.widths[src] : 0.0;
      }
      if (need <= 1e-12 * f.total_measure / (f.size() + 1)) need = 0.0;
    }
  }
  StepProfile out;
  out.total_measure = f0.total_measure;
  for (std::size_t cell = 0; cell < n; ++cell) {
    for (const Piece& piece : assigned[cell]) {
      out.widths.push_back(piece.width);
      out.values.push_back(piece.value);
    }
  }
  return out;
}

/// Hardy-Littlewood upper bound int f* g* for the pairing int f g.
inline double hardy_littlewood_bound(const StepProfile& f, const StepProfile& g) {
  detail::require_same_total(f, g, "hardy_littlewood_bound");
  auto [fr, gr] = detail::refine_to_common(decreasing_rearrangement(f),
                                           decreasing_rearrangement(g));
  double acc = 0.0;
  for (std::size_t k = 0; k < fr.size(); ++k) acc += fr.values[k] * gr.values[k] * fr.widths[k];
  return acc;
}

/// Pairing int f g of two profiles on the same measure interval.
inline double pairing(const StepProfile& f, const StepProfile& g) {
  detail::require_same_total(f, g, "pairing");
  auto [fr, gr] = detail::refine_to_common(f, g);
  double acc = 0.0;
  for (std::size_t k = 0; k < fr.size(); ++k) acc += fr.values[k] * gr.values[k] * fr.widths[k];
  return acc;
}

/// Lorentz norm ||u||_{r,s} of a decreasing step profile.
///
/// The defining integral lives on the ball Omega#:
///   ||u||_{r,s} = omega_N^{1/r-1/s} ( int_{Omega#} [u#(x) |x|^{N/r}]^s dx / |x|^N )^{1/s}.
/// Substituting the measure coordinate sigma = omega_N |x|^N gives
/// dx = d sigma, |x|^{N/r} = (sigma/omega_N)^{1/r} and |x|^N = sigma/omega_N,
/// so the integral becomes omega_N^{1-s/r} int_0^V [u*(sigma) sigma^{1/r}]^s
/// d sigma / sigma and the omega_N prefactors cancel exactly:
///   ||u||_{r,s} = ( int_0^V [u*(sigma) sigma^{1/r}]^s  d sigma / sigma )^{1/s}.
/// For a step u* this is a finite sum of monomial integrals, evaluated in
/// closed form below; no quadrature and no dependence on omega_N remain.
/// (dim is kept for the domain precondition N >= 3 shared by the callers.)
inline double lorentz_norm(const StepProfile& u_star, const LorentzIndex& idx, int dim) {
  validate(idx);
  if (dim < 3) throw invalid_argument_error("lorentz_norm: dim must be >= 3");
  if (!u_star.is_decreasing()) {
    throw precondition_error("lorentz_norm: profile must be decreasing");
  }
  if (!u_star.values.empty() && u_star.values.back() < 0.0) {
    throw precondition_error("lorentz_norm: profile must be nonnegative");
  }
  const double e = idx.s / idx.r;  // sigma exponent inside the integral is e - 1
  double acc = 0.0;
  double left = 0.0;
  double left_pow = 0.0;  // left^e with 0^e = 0 for e > 0
  for (std::size_t k = 0; k < u_star.size(); ++k) {
    const double right = left + u_star.widths[k];
    const double right_pow = std::pow(right, e);
    const double v = u_star.values[k];
    if (v > 0.0) acc += std::pow(v, idx.s) * (right_pow - left_pow) / e;
    left = right;
    left_pow = right_pow;
  }
  return std::pow(acc, 1.0 / idx.s);
}

}  // namespace hardylab::measure

#endif  // HARDYLAB_MEASURE_HPP

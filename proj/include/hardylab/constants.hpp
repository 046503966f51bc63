// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_CONSTANTS_HPP
#define HARDYLAB_CONSTANTS_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hardylab/domain.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/special.hpp"

// Closed-form evaluation of every constant that appears in the inequalities
// this toolkit verifies.  Each formula is paired elsewhere with an
// independent variational recomputation (varmin::best_constant_search).

namespace hardylab::constants {

enum class ConstantId {
  hardy,
  brezis_vazquez,
  thm1,
  thm1_intermediate,
  thm2,
  thm4_text,
  thm4_stmt,
  thm5,
  prop_log,
};

inline const char* to_string(ConstantId id) {
  switch (id) {
    case ConstantId::hardy: return "hardy";
    case ConstantId::brezis_vazquez: return "brezis_vazquez";
    case ConstantId::thm1: return "thm1";
    case ConstantId::thm1_intermediate: return "thm1_intermediate";
    case ConstantId::thm2: return "thm2";
    case ConstantId::thm4_text: return "thm4_text";
    case ConstantId::thm4_stmt: return "thm4_stmt";
    case ConstantId::thm5: return "thm5";
    case ConstantId::prop_log: return "prop_log";
  }
  return "?";
}

struct ConstantRecord {
  ConstantId id = ConstantId::hardy;
  int dim = 0;
  double volume = 0.0;
  double p = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double q = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  std::string formula_text;
};

/// (N-2)^2 / 4, the sharp constant of the classical Hardy inequality.
inline double hardy_constant(int dim) {
  if (dim < 3) throw invalid_argument_error("hardy_constant: dim must be >= 3");
  return (dim - 2.0) * (dim - 2.0) / 4.0;
}

/// Lambda_2 / R_Omega^2: sharp L^2 remainder constant (Brezis-Vazquez).
inline double brezis_vazquez(const Domain& dom) {
  return special::spectral_constants().lambda2 / (dom.radius * dom.radius);
}

/// Sharp constant for the L(2N/(N-1), 2) remainder:
///   C = omega_N^{2/N} / |Omega|^{1/N} * V0.
inline double thm1_constant(const Domain& dom) {
  const double v0 = special::spectral_constants().v0;
  return std::pow(dom.omega_n, 2.0 / dom.dim) / std::pow(dom.volume, 1.0 / dom.dim) * v0;
}

/// Constant of the intermediate inequality with remainder int u^2/|x| dx:
///   C = (omega_N / |Omega|)^{1/N} * V0.
/// Differs from thm1_constant by exactly omega_N^{1/N}, the factor that
/// converts int u^2/|x| dx into the squared L(2N/(N-1),2) norm.
inline double thm1_intermediate_constant(const Domain& dom) {
  const double v0 = special::spectral_constants().v0;
  return std::pow(dom.omega_n / dom.volume, 1.0 / dom.dim) * v0;
}

/// Exponent a = N/p - N/2 + 1 of the reduced plane problem.
inline double thm2_exponent(const Domain& dom, double p) {
  return dom.dim / p - dom.dim / 2.0 + 1.0;
}

/// Sharp constant for the L(p,1) remainder, 1 <= p < 2*:
///   C = 2 a^3 / (N |Omega|^{2a/N}) * omega_N^{2/N},  a = N/p - N/2 + 1.
inline double thm2_constant(const Domain& dom, double p) {
  if (!(p >= 1.0) || !(p < dom.crit_exp)) {
    throw invalid_argument_error("thm2_constant: need 1 <= p < 2N/(N-2)");
  }
  const double a = thm2_exponent(dom, p);
  return 2.0 * a * a * a / (dom.dim * std::pow(dom.volume, 2.0 * a / dom.dim)) *
         std::pow(dom.omega_n, 2.0 / dom.dim);
}

/// Both candidate closed forms for the gradient-L^1 remainder constant (q=1).
/// first  = (1/(4|Omega|)) (N/(N-1))^2           (no omega_N factor)
/// second = (1/(4 omega_N |Omega|)) (N/(N-1))^2  (with omega_N factor)
/// The two differ by a factor omega_N; best_constant_search adjudicates.
inline std::pair<double, double> thm4_constants(const Domain& dom) {
  const double ratio = dom.dim / (dom.dim - 1.0);
  const double text = ratio * ratio / (4.0 * dom.volume);
  return {text, text / dom.omega_n};
}

/// Admissible open interval for thm5's exponent p.
inline std::pair<double, double> thm5_range(int dim) {
  const double lo = std::fmax(2.0 * dim / (3.0 * dim - 2.0), dim / (dim + 1.0));
  return {lo, 1.0};
}

/// alpha > 0 with p = N/(N+alpha), the weight exponent realizing the
/// L(p,1) gradient norm as int |grad u|# |x|^alpha dx.
inline double thm5_alpha(int dim, double p) { return dim / p - dim; }

/// Sharp constant for the L(p,1) gradient remainder with p < 1:
///   C = ((2-p)/p)^3 / (4 |Omega|^{2/p-1}) * (Np/(N-p))^2.
inline double thm5_constant(const Domain& dom, double p) {
  const auto [lo, hi] = thm5_range(dom.dim);
  if (!(p > lo) || !(p < hi)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "thm5_constant: p must lie in the open interval (%.17g, 1)", lo);
    throw invalid_argument_error(msg);
  }
  const double ratio = (2.0 - p) / p;
  const double np = dom.dim * p / (dom.dim - p);
  return ratio * ratio * ratio / (4.0 * std::pow(dom.volume, 2.0 / p - 1.0)) * np * np;
}

/// Constant of the logarithmic-weight remainder inequality.
inline double prop_log_constant() { return 0.25; }

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

}  // namespace detail

/// Every record applicable to (dim, volume) and, when supplied, p.
inline std::vector<ConstantRecord> all_records(const Domain& dom, const double* p_opt = nullptr) {
  std::vector<ConstantRecord> out;
  auto push = [&](ConstantId id, double value, std::string formula, double p, double alpha,
                  double q) {
    ConstantRecord rec;
    rec.id = id;
    rec.dim = dom.dim;
    rec.volume = dom.volume;
    rec.value = value;
    rec.formula_text = std::move(formula);
    rec.p = p;
    rec.alpha = alpha;
    rec.q = q;
    out.push_back(std::move(rec));
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  push(ConstantId::hardy, hardy_constant(dom.dim), "(N-2)^2/4", nan, nan, nan);
  push(ConstantId::brezis_vazquez, brezis_vazquez(dom), "Lambda_2 / R_Omega^2", nan, nan, nan);
  push(ConstantId::thm1, thm1_constant(dom), "omega_N^{2/N} |Omega|^{-1/N} V0", nan, nan, nan);
  push(ConstantId::thm1_intermediate, thm1_intermediate_constant(dom),
       "(omega_N/|Omega|)^{1/N} V0", nan, nan, nan);
  const auto [t4_text, t4_stmt] = thm4_constants(dom);
  push(ConstantId::thm4_text, t4_text, "(N/(N-1))^2 / (4 |Omega|)", nan, nan, 1.0);
  push(ConstantId::thm4_stmt, t4_stmt, "(N/(N-1))^2 / (4 omega_N |Omega|)", nan, nan, 1.0);
  push(ConstantId::prop_log, prop_log_constant(), "1/4", nan, nan, nan);
  if (p_opt != nullptr) {
    const double p = *p_opt;
    if (p >= 1.0 && p < dom.crit_exp) {
      push(ConstantId::thm2, thm2_constant(dom, p),
           detail::fmt("2 a^3 omega_N^{2/N} / (N |Omega|^{2a/N}), a=%.12g",
                       thm2_exponent(dom, p)),
           p, nan, nan);
    }
    const auto [lo, hi] = thm5_range(dom.dim);
    if (p > lo && p < hi) {
      push(ConstantId::thm5, thm5_constant(dom, p),
           "((2-p)/p)^3 |Omega|^{1-2/p} (Np/(N-p))^2 / 4", p, thm5_alpha(dom.dim, p), 1.0);
    }
  }
  return out;
}

}  // namespace hardylab::constants

#endif  // HARDYLAB_CONSTANTS_HPP

// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_ERRORS_HPP
#define HARDYLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardylab {

/// Base class for all hardylab exceptions.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A scalar argument violates a documented precondition.
class invalid_argument_error : public error {
 public:
  using error::error;
};

/// Root bracketing failed: no sign change on the supplied interval.
class bracketing_error : public error {
 public:
  using error::error;
};

/// An iterative solver exhausted its iteration budget.
class convergence_error : public error {
 public:
  using error::error;
};

/// Two profiles live on incompatible measure spaces.
class domain_mismatch_error : public error {
 public:
  using error::error;
};

/// A structural precondition on a profile failed (monotonicity, sign, ...).
class precondition_error : public error {
 public:
  using error::error;
};

/// The grid is too coarse for the requested operation.
class resolution_error : public error {
 public:
  using error::error;
};

/// A weight exponent makes the integrand non-integrable on this grid.
class singular_integrand_error : public error {
 public:
  using error::error;
};

/// Input is identically zero where a nonzero object is required.
class degenerate_input_error : public error {
 public:
  using error::error;
};

/// Input data contradicts itself (e.g. zero gradient with varying values).
class inconsistency_error : public error {
 public:
  using error::error;
};

}  // namespace hardylab

#endif  // HARDYLAB_ERRORS_HPP

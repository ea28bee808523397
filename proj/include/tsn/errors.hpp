#pragma once

#include <stdexcept>

namespace tsn {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The truncation window keeps less skew-normal mass than the floor that
/// makes the truncated density denominator trustworthy.
struct degenerate_window_error : error {
  using error::error;
};

/// An observation lies outside the truncation window it is modeled under.
struct data_outside_window_error : error {
  using error::error;
};

/// Adaptive quadrature exhausted its subdivision budget.
struct quadrature_error : error {
  using error::error;
};

/// A computed quantity degenerated past the point of being usable
/// (e.g. a variance that is nonpositive after roundoff).
struct numerical_error : error {
  using error::error;
};

/// A fit could not produce an estimate at all (zero sample variance,
/// every grid point failed, every bootstrap replicate failed, ...).
struct estimation_error : error {
  using error::error;
};

}  // namespace tsn

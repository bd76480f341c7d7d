#pragma once

#include <stdexcept>

#include "adictree/op.hpp"

namespace adictree {

/// Power iteration reached the iteration cap; carries the last two
/// singular-value iterates as a bracket for the unconverged limit.
struct SpectralNormError : std::runtime_error {
  SpectralNormError(double previous, double last);
  double previous_estimate;
  double last_estimate;
};

/// Largest singular value to within tol: exact dense computation for
/// dim <= 512, deterministic power iteration on a*a otherwise.
double spectral_norm(const TruncatedOperator& op, double tol = 1e-10);

double dense_spectral_norm(const TruncatedOperator& op);
double power_spectral_norm(const TruncatedOperator& op, double tol, int max_iterations = 10000);

/// Spectral norm of the compression of op to levels >= from_level.
double tail_norm(const TruncatedOperator& op, int from_level, double tol = 1e-10);

/// k-th largest singular value (k = 1 is the norm); dense computation,
/// optionally with columns above a level cutoff zeroed first.
double singular_value(const TruncatedOperator& op, int k, int max_col_level = -1);

}  // namespace adictree

#ifndef INCOMPLETE_MATH_UTIL_HPP
#define INCOMPLETE_MATH_UTIL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace incomplete {

/// Standard normal quantile function, accurate to ~1e-14.
double inverse_normal_cdf(double p);

/// Left-continuous generalized inverse of the empirical distribution of
/// `values`: inf { x : (1/N) * #{v_i <= x} >= alpha }. `values` is sorted
/// in place.
double empirical_quantile_inf(std::vector<double>& values, double alpha);

/// Reconstructs a rational p/q ~= x with q <= max_den via continued
/// fractions; empty if no rational within `tol` exists at that cap.
std::optional<std::pair<std::int64_t, std::int64_t>>
rationalize(double x, std::int64_t max_den, double tol = 1e-9);

/// Runs fn(0..count-1), using up to `threads` workers (>=1). Results must
/// be written to per-index storage so scheduling cannot affect output.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace incomplete

#endif

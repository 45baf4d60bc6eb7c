#pragma once

// Convolution kernels. Each parallel kernel has a serial reference with a
// different summation order; tests compare the two and bench/ times them.
//
// The parallel kernels are gather-form (one output slot per iteration), so
// their result is independent of the thread count and schedule.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wsum::kernels {

// Dense 1-D convolution: out[k] = sum_j a[j] * b[k - j], length |a|+|b|-1.
std::vector<double> convolve_serial(std::span<const double> a, std::span<const double> b);
std::vector<double> convolve_parallel(std::span<const double> a, std::span<const double> b);

// Sparse masses keyed by a packed integer, keys strictly increasing.
struct KeyedMasses {
  std::vector<std::int64_t> keys;
  std::vector<double> masses;

  std::size_t size() const { return keys.size(); }
};

// Keyed convolution: result key = keyA + keyB. The serial reference
// accumulates into an ordered map; the parallel kernel materializes all
// pairs, sorts and merges.
KeyedMasses keyed_convolve_serial(const KeyedMasses& a, const KeyedMasses& b);
KeyedMasses keyed_convolve_parallel(const KeyedMasses& a, const KeyedMasses& b);

// Dense-range variant for when the pair count is large but the key range
// is small: scatter both operands onto [0, range) and convolve densely.
KeyedMasses keyed_convolve_dense(const KeyedMasses& a, const KeyedMasses& b);

// Largest |prefix sum| of the sequence, scanned in order.
double max_abs_prefix(std::span<const double> values);

}  // namespace wsum::kernels

#pragma once

// Linear interpolation of a triaxial stream onto another clock, used to put
// gyroscope readings on accelerometer timestamps.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "movelet/core.hpp"

namespace movelet {

struct InterpolationResult {
  SyncedSeries series;
  std::size_t clipped_head = 0;  // accelerometer samples before gyroscope coverage
  std::size_t clipped_tail = 0;  // accelerometer samples after gyroscope coverage
};

/// Per-axis values of `series` at each (sorted) target time. A target equal
/// to a source timestamp returns the source value exactly. Throws OutOfRange
/// for targets outside [first t, last t].
std::array<std::vector<double>, 3> linear_interpolate(const TriaxialSeries& series,
                                                      std::span<const double> targets);

/// Accelerometer channels are copied verbatim; gyroscope channels are
/// interpolated. Accelerometer samples outside gyroscope coverage are dropped
/// and counted, never extrapolated. Throws NoOverlap.
InterpolationResult synchronize(const TriaxialSeries& accel, const TriaxialSeries& gyro);

}  // namespace movelet

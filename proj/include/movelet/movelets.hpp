#pragma once

// Sliding-window movelet extraction and the Euclidean discrepancy between
// two movelets.

#include <cstddef>
#include <span>
#include <vector>

#include "movelet/core.hpp"

namespace movelet {

inline constexpr std::size_t kDefaultWindow = 10;

/// Windows [i, i + window) for i = 0 .. T - window; throws SeriesTooShort.
std::vector<Movelet> extract_movelets(const ChannelMatrix& series,
                                      std::size_t window = kDefaultWindow);

/// Euclidean distance between two equally long vectors.
double axis_distance(std::span<const double> a, std::span<const double> b);

struct DiscrepancyValue {
  double value = 0.0;
  std::size_t channels = 0;
};

/// Mean over channels of axis_distance. Throws ChannelMismatch or LengthMismatch.
DiscrepancyValue discrepancy(const Movelet& m, const Movelet& other);

}  // namespace movelet

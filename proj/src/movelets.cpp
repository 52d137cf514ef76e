#include "movelet/movelets.hpp"

#include <cmath>

namespace movelet {

std::vector<Movelet> extract_movelets(const ChannelMatrix& series, std::size_t window) {
  const std::size_t length = series.length();
  const std::size_t channels = series.channel_count();
  if (window == 0) throw Error(ErrorCode::SeriesTooShort, "window length must be positive");
  if (length < window) {
    throw Error(ErrorCode::SeriesTooShort, "series of " + std::to_string(length) +
                                               " samples is shorter than the " +
                                               std::to_string(window) + "-sample window");
  }
  for (const auto& c : series.channels) {
    if (c.size() != length) throw Error(ErrorCode::LengthMismatch, "ragged channel matrix");
  }

  std::vector<Movelet> out;
  out.reserve(length - window + 1);
  for (std::size_t i = 0; i + window <= length; ++i) {
    std::vector<double> values;
    values.reserve(channels * window);
    for (const auto& c : series.channels) {
      values.insert(values.end(), c.begin() + static_cast<std::ptrdiff_t>(i),
                    c.begin() + static_cast<std::ptrdiff_t>(i + window));
    }
    std::vector<double> ts(series.timestamps.begin() + static_cast<std::ptrdiff_t>(i),
                           series.timestamps.begin() + static_cast<std::ptrdiff_t>(i + window));
    out.emplace_back(i, channels, window, std::move(values), std::move(ts));
  }
  return out;
}

double axis_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "axis vectors differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

DiscrepancyValue discrepancy(const Movelet& m, const Movelet& other) {
  if (m.channel_count() != other.channel_count()) {
    throw Error(ErrorCode::ChannelMismatch, "movelets differ in channel count");
  }
  if (m.window_length() != other.window_length()) {
    throw Error(ErrorCode::LengthMismatch, "movelets differ in window length");
  }
  const std::size_t c = m.channel_count();
  double total = 0.0;
  for (std::size_t k = 0; k < c; ++k) total += axis_distance(m.channel(k), other.channel(k));
  return {total / static_cast<double>(c), c};
}

}  // namespace movelet

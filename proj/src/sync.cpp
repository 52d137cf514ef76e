#include "movelet/sync.hpp"

#include <algorithm>
#include <sstream>

namespace movelet {
namespace {

double lerp_clamped(double t0, double v0, double t1, double v1, double t) {
  const double v = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  return std::clamp(v, std::min(v0, v1), std::max(v0, v1));
}

}  // namespace

std::array<std::vector<double>, 3> linear_interpolate(const TriaxialSeries& series,
                                                      std::span<const double> targets) {
  std::array<std::vector<double>, 3> out;
  for (auto& axis : out) axis.reserve(targets.size());
  if (targets.empty()) return out;

  const auto& src = series.samples;
  if (src.empty()) throw Error(ErrorCode::OutOfRange, "cannot interpolate an empty series");

  std::size_t j = 0;  // src[j].t <= target < src[j + 1].t
  double previous = targets.front();
  for (double t : targets) {
    if (t < previous) throw Error(ErrorCode::OutOfRange, "interpolation targets must be sorted");
    previous = t;
    if (t < src.front().t || t > src.back().t) {
      std::ostringstream msg;
      msg << "target t=" << t << " outside source span [" << src.front().t << ", "
          << src.back().t << "]";
      throw Error(ErrorCode::OutOfRange, msg.str());
    }
    while (j + 1 < src.size() && src[j + 1].t <= t) ++j;

    const Sample& a = src[j];
    if (a.t == t || j + 1 == src.size()) {
      out[0].push_back(a.x);
      out[1].push_back(a.y);
      out[2].push_back(a.z);
      continue;
    }
    const Sample& b = src[j + 1];
    out[0].push_back(lerp_clamped(a.t, a.x, b.t, b.x, t));
    out[1].push_back(lerp_clamped(a.t, a.y, b.t, b.y, t));
    out[2].push_back(lerp_clamped(a.t, a.z, b.t, b.z, t));
  }
  return out;
}

InterpolationResult synchronize(const TriaxialSeries& accel, const TriaxialSeries& gyro) {
  if (accel.empty() || gyro.empty()) {
    throw Error(ErrorCode::NoOverlap, "accelerometer or gyroscope series is empty");
  }
  const double lo = gyro.samples.front().t;
  const double hi = gyro.samples.back().t;
  const auto& a = accel.samples;

  auto first = std::find_if(a.begin(), a.end(), [lo](const Sample& s) { return s.t >= lo; });
  auto last = std::find_if(first, a.end(), [hi](const Sample& s) { return s.t > hi; });
  if (first == last) {
    throw Error(ErrorCode::NoOverlap, "accelerometer and gyroscope time spans do not overlap");
  }

  InterpolationResult result;
  result.clipped_head = static_cast<std::size_t>(first - a.begin());
  result.clipped_tail = static_cast<std::size_t>(a.end() - last);

  std::vector<double> ts;
  std::array<std::vector<double>, kJointChannels> channels;
  const auto kept = static_cast<std::size_t>(last - first);
  ts.reserve(kept);
  for (std::size_t k = 0; k < 3; ++k) channels[k].reserve(kept);
  for (auto it = first; it != last; ++it) {
    ts.push_back(it->t);
    channels[0].push_back(it->x);
    channels[1].push_back(it->y);
    channels[2].push_back(it->z);
  }
  auto gyro_values = linear_interpolate(gyro, ts);
  for (std::size_t k = 0; k < 3; ++k) channels[3 + k] = std::move(gyro_values[k]);

  result.series = SyncedSeries(std::move(ts), std::move(channels));
  return result;
}

}  // namespace movelet

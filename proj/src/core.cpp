#include "movelet/core.hpp"

#include <cmath>
#include <sstream>

namespace movelet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::ActivityAbsent: return "ActivityAbsent";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::EmptyDictionary: return "EmptyDictionary";
    case ErrorCode::MissingSensor: return "MissingSensor";
    case ErrorCode::EmptyTimeline: return "EmptyTimeline";
    case ErrorCode::MissingActivity: return "MissingActivity";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::DatasetMissing: return "DatasetMissing";
    case ErrorCode::ArtifactMissing: return "ArtifactMissing";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::string_view to_string(ActivityLabel label) {
  switch (label) {
    case ActivityLabel::Walk: return "walk";
    case ActivityLabel::Stand: return "stand";
    case ActivityLabel::StairUp: return "stairUp";
    case ActivityLabel::StairDown: return "stairDown";
    case ActivityLabel::Sit: return "sit";
    case ActivityLabel::SitToStand: return "sitToStand";
    case ActivityLabel::StandToSit: return "standToSit";
    case ActivityLabel::OutOfDictionary: return "revolvingDoor";
  }
  return "unknown";
}

std::optional<ActivityLabel> parse_label(std::string_view text) {
  for (ActivityLabel label : kAllLabels) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

std::string_view to_string(SensorKind kind) {
  return kind == SensorKind::Accelerometer ? "accelerometer" : "gyroscope";
}

std::string_view unit_of(SensorKind kind) {
  return kind == SensorKind::Accelerometer ? "g" : "rad/s";
}

std::vector<double> TriaxialSeries::timestamps() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.t);
  return out;
}

void validate_series(const TriaxialSeries& series) {
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const Sample& s = series.samples[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y) ||
        !std::isfinite(s.z)) {
      std::ostringstream msg;
      msg << to_string(series.kind) << " sample " << i << " has a non-finite field";
      throw Error(ErrorCode::NonFiniteValue, msg.str());
    }
    if (i > 0 && !(s.t > series.samples[i - 1].t)) {
      std::ostringstream msg;
      msg << to_string(series.kind) << " sample " << i << " at t=" << s.t
          << " does not follow t=" << series.samples[i - 1].t;
      throw Error(ErrorCode::NonMonotoneTimestamps, msg.str());
    }
  }
}

ChannelMatrix to_channels(const TriaxialSeries& series) {
  ChannelMatrix out;
  out.timestamps = series.timestamps();
  out.channels.assign(3, {});
  for (auto& c : out.channels) c.reserve(series.size());
  for (const Sample& s : series.samples) {
    out.channels[0].push_back(s.x);
    out.channels[1].push_back(s.y);
    out.channels[2].push_back(s.z);
  }
  return out;
}

SyncedSeries::SyncedSeries(std::vector<double> timestamps,
                           std::array<std::vector<double>, kJointChannels> channels)
    : timestamps_(std::move(timestamps)), channels_(std::move(channels)) {
  for (const auto& c : channels_) {
    if (c.size() != timestamps_.size()) {
      throw Error(ErrorCode::LengthMismatch, "synced channel length differs from timestamps");
    }
  }
}

ChannelMatrix SyncedSeries::to_channels() const {
  return ChannelMatrix{timestamps_, {channels_.begin(), channels_.end()}};
}

Movelet::Movelet(std::size_t start_index, std::size_t channel_count, std::size_t window_length,
                 std::vector<double> values, std::vector<double> timestamps)
    : start_index_(start_index),
      channel_count_(channel_count),
      window_length_(window_length),
      values_(std::move(values)),
      timestamps_(std::move(timestamps)) {
  if (values_.size() != channel_count_ * window_length_) {
    throw Error(ErrorCode::LengthMismatch, "movelet value count is not channels x window");
  }
  if (!timestamps_.empty() && timestamps_.size() != window_length_) {
    throw Error(ErrorCode::LengthMismatch, "movelet timestamp count differs from window");
  }
}

std::span<const double> Movelet::channel(std::size_t k) const {
  if (k >= channel_count_) throw Error(ErrorCode::ChannelMismatch, "channel index out of range");
  return std::span<const double>(values_).subspan(k * window_length_, window_length_);
}

Dictionary::Dictionary(std::string person, std::size_t channel_count, Entries entries)
    : person_(std::move(person)), channel_count_(channel_count), entries_(std::move(entries)) {
  if (channel_count_ != 3 && channel_count_ != kJointChannels) {
    throw Error(ErrorCode::ChannelMismatch, "dictionary channel count must be 3 or 6");
  }
  std::optional<std::size_t> window;
  for (const auto& [label, movelets] : entries_) {
    if (!is_dictionary_activity(label)) {
      throw Error(ErrorCode::MalformedRow, "OutOfDictionary cannot be a dictionary entry");
    }
    for (const Movelet& m : movelets) {
      if (m.channel_count() != channel_count_) {
        throw Error(ErrorCode::ChannelMismatch, "movelet channel count differs from dictionary");
      }
      if (window && *window != m.window_length()) {
        throw Error(ErrorCode::LengthMismatch, "dictionary movelets differ in window length");
      }
      window = m.window_length();
    }
  }
}

const std::vector<Movelet>& Dictionary::entry(ActivityLabel label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) {
    throw Error(ErrorCode::ActivityAbsent,
                "dictionary has no entry for " + std::string(to_string(label)));
  }
  return it->second;
}

std::size_t Dictionary::movelet_count() const {
  std::size_t total = 0;
  for (const auto& [label, movelets] : entries_) total += movelets.size();
  return total;
}

ClassifiedTimeline::ClassifiedTimeline(std::vector<TimelineEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!is_dictionary_activity(entries_[i].predicted)) {
      throw Error(ErrorCode::MalformedRow, "prediction cannot be OutOfDictionary");
    }
    if (i > 0 && !(entries_[i].t > entries_[i - 1].t)) {
      throw Error(ErrorCode::NonMonotoneTimestamps, "timeline timestamps must increase");
    }
  }
}

std::vector<double> ClassifiedTimeline::timestamps() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.t);
  return out;
}

}  // namespace movelet

#pragma once

// Domain vocabulary shared by every stage of the movelet pipeline: activity
// labels, raw triaxial sensor streams, synchronized six-channel streams,
// movelets, per-person dictionaries and classified timelines.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace movelet {

enum class ErrorCode {
  NonMonotoneTimestamps,
  NonFiniteValue,
  MalformedRow,
  OverlappingIntervals,
  ActivityAbsent,
  OutOfRange,
  NoOverlap,
  SeriesTooShort,
  LengthMismatch,
  ChannelMismatch,
  EmptyDictionary,
  MissingSensor,
  EmptyTimeline,
  MissingActivity,
  ZeroBaseline,
  ConfigInvalid,
  DatasetMissing,
  ArtifactMissing,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Dictionary activities come first, in the fixed enumeration order used for
// tie-breaking. OutOfDictionary is only ever a ground-truth value.
enum class ActivityLabel : std::uint8_t {
  Walk = 0,
  Stand,
  StairUp,
  StairDown,
  Sit,
  SitToStand,
  StandToSit,
  OutOfDictionary,
};

inline constexpr std::size_t kDictionaryActivityCount = 7;
inline constexpr std::size_t kLabelCount = 8;

inline constexpr std::array<ActivityLabel, kDictionaryActivityCount> kDictionaryActivities = {
    ActivityLabel::Walk,       ActivityLabel::Stand,      ActivityLabel::StairUp,
    ActivityLabel::StairDown,  ActivityLabel::Sit,        ActivityLabel::SitToStand,
    ActivityLabel::StandToSit,
};

inline constexpr std::array<ActivityLabel, kLabelCount> kAllLabels = {
    ActivityLabel::Walk,       ActivityLabel::Stand,      ActivityLabel::StairUp,
    ActivityLabel::StairDown,  ActivityLabel::Sit,        ActivityLabel::SitToStand,
    ActivityLabel::StandToSit, ActivityLabel::OutOfDictionary,
};

constexpr std::size_t index_of(ActivityLabel label) { return static_cast<std::size_t>(label); }
constexpr bool is_dictionary_activity(ActivityLabel label) {
  return label != ActivityLabel::OutOfDictionary;
}

/// Canonical label strings: walk, stand, stairUp, stairDown, sit, sitToStand,
/// standToSit, revolvingDoor.
std::string_view to_string(ActivityLabel label);
std::optional<ActivityLabel> parse_label(std::string_view text);

enum class SensorKind { Accelerometer, Gyroscope };

std::string_view to_string(SensorKind kind);
/// "g" for the accelerometer, "rad/s" for the gyroscope.
std::string_view unit_of(SensorKind kind);

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Sample&) const = default;
};

struct TriaxialSeries {
  SensorKind kind = SensorKind::Accelerometer;
  std::vector<Sample> samples;
  double nominal_rate = 10.0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  std::vector<double> timestamps() const;
};

/// Throws Error(NonMonotoneTimestamps | NonFiniteValue).
void validate_series(const TriaxialSeries& series);

/// Timestamps plus an arbitrary number of equally long value channels.
struct ChannelMatrix {
  std::vector<double> timestamps;
  std::vector<std::vector<double>> channels;

  std::size_t length() const { return timestamps.size(); }
  std::size_t channel_count() const { return channels.size(); }
};

ChannelMatrix to_channels(const TriaxialSeries& series);

inline constexpr std::size_t kJointChannels = 6;

/// Accelerometer x,y,z followed by gyroscope x,y,z on the accelerometer clock.
class SyncedSeries {
 public:
  SyncedSeries() = default;
  SyncedSeries(std::vector<double> timestamps,
               std::array<std::vector<double>, kJointChannels> channels);

  const std::vector<double>& timestamps() const { return timestamps_; }
  const std::vector<double>& channel(std::size_t k) const { return channels_.at(k); }
  std::size_t size() const { return timestamps_.size(); }

  ChannelMatrix to_channels() const;

 private:
  std::vector<double> timestamps_;
  std::array<std::vector<double>, kJointChannels> channels_;
};

/// A window of `window_length` consecutive samples over `channel_count`
/// channels, stored channel-major.
class Movelet {
 public:
  Movelet(std::size_t start_index, std::size_t channel_count, std::size_t window_length,
          std::vector<double> values, std::vector<double> timestamps);

  std::size_t start_index() const { return start_index_; }
  std::size_t channel_count() const { return channel_count_; }
  std::size_t window_length() const { return window_length_; }
  std::span<const double> channel(std::size_t k) const;
  std::span<const double> values() const { return values_; }
  const std::vector<double>& timestamps() const { return timestamps_; }

  bool same_values(const Movelet& other) const { return values_ == other.values_; }

 private:
  std::size_t start_index_;
  std::size_t channel_count_;
  std::size_t window_length_;
  std::vector<double> values_;
  std::vector<double> timestamps_;
};

/// Per-person map from activity to its training movelets. Entries iterate in
/// label enumeration order.
class Dictionary {
 public:
  using Entries = std::map<ActivityLabel, std::vector<Movelet>>;

  Dictionary(std::string person, std::size_t channel_count, Entries entries);

  const std::string& person() const { return person_; }
  std::size_t channel_count() const { return channel_count_; }
  const Entries& entries() const { return entries_; }
  const std::vector<Movelet>& entry(ActivityLabel label) const;
  bool has(ActivityLabel label) const { return entries_.contains(label); }
  std::size_t movelet_count() const;

 private:
  std::string person_;
  std::size_t channel_count_;
  Entries entries_;
};

struct TimelineEntry {
  double t = 0.0;
  ActivityLabel predicted = ActivityLabel::Walk;
  std::optional<ActivityLabel> truth;  // nullopt: sample outside every annotation

  bool operator==(const TimelineEntry&) const = default;
};

class ClassifiedTimeline {
 public:
  ClassifiedTimeline() = default;
  /// Throws NonMonotoneTimestamps, or MalformedRow if a prediction is OutOfDictionary.
  explicit ClassifiedTimeline(std::vector<TimelineEntry> entries);

  const std::vector<TimelineEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::vector<double> timestamps() const;

  bool operator==(const ClassifiedTimeline&) const = default;

 private:
  std::vector<TimelineEntry> entries_;
};

}  // namespace movelet

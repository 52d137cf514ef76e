#pragma once

// Reading sensor and annotation CSV files, attaching ground truth to samples
// and cutting per-activity training segments.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "movelet/core.hpp"

namespace movelet {

/// Header names for the sensor CSV columns. Extra columns are ignored.
struct SensorColumns {
  std::string timestamp = "timestamp";
  std::string x = "x";
  std::string y = "y";
  std::string z = "z";
  double timestamp_scale = 1.0;  // multiply raw timestamps by this to get seconds
};

struct LabelColumns {
  std::string start = "start";
  std::string end = "end";
  std::string label = "label";
  double timestamp_scale = 1.0;
  // Raw label text -> canonical label, consulted before the canonical names.
  std::map<std::string, ActivityLabel> aliases;
};

struct LabeledInterval {
  double start = 0.0;
  double end = 0.0;
  ActivityLabel label = ActivityLabel::Walk;

  bool operator==(const LabeledInterval&) const = default;
};

struct LabeledSeries {
  TriaxialSeries series;
  std::vector<std::optional<ActivityLabel>> labels;  // one per sample
};

struct StudyStep {
  int step = 0;
  TriaxialSeries accel;
  std::optional<TriaxialSeries> gyro;
  std::vector<LabeledInterval> intervals;
};

TriaxialSeries parse_sensor_csv(std::istream& in, SensorKind kind,
                                const SensorColumns& columns = {}, double nominal_rate = 10.0);
TriaxialSeries parse_sensor_csv(const std::filesystem::path& path, SensorKind kind,
                                const SensorColumns& columns = {}, double nominal_rate = 10.0);

/// Writes `timestamp,x,y,z` with shortest round-trip number formatting.
void write_sensor_csv(std::ostream& out, const TriaxialSeries& series);

std::vector<LabeledInterval> parse_label_csv(std::istream& in, const LabelColumns& columns = {});
std::vector<LabeledInterval> parse_label_csv(const std::filesystem::path& path,
                                             const LabelColumns& columns = {});

/// Half-open intervals [start, end). Throws OverlappingIntervals.
LabeledSeries attach_labels(const TriaxialSeries& series,
                            std::vector<LabeledInterval> intervals);

/// First contiguous run of `activity`, keeping at most
/// round(max_duration * nominal_rate) samples from its start.
TriaxialSeries extract_training_segment(const LabeledSeries& training, ActivityLabel activity,
                                        double max_duration = 5.0);

/// Shifts every timestamp by -origin.
void rebase(TriaxialSeries& series, double origin);
void rebase(std::vector<LabeledInterval>& intervals, double origin);

/// Labeled-sample counts per label; unlabeled samples are not counted.
std::map<ActivityLabel, std::size_t> count_labels(const LabeledSeries& labeled);

}  // namespace movelet

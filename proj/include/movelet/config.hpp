#pragma once

// Experiment configuration: a plain `key = value` file, `#` starts a comment.
//
//   dataset_root           directory holding the per-participant folders
//   output_dir             artifact directory (default "movelet-out")
//   participants           comma list, default 1,2,3,4
//   steps                  comma list from {1,2,3,5,6}; step 4 is rejected
//   modes                  comma list from {accel,gyro,joint}
//   window                 samples per movelet (10)
//   vote_window            movelets per majority vote (10)
//   training_seconds       training cap per activity (5)
//   sample_rate            nominal Hz (10)
//   threads                worker threads (1)
//   layout.participant_dir template with {p} (participant{p})
//   layout.training_dir    folder under the participant (training)
//   layout.step_dir        template with {s} (step{s})
//   layout.accel_file / layout.gyro_file / layout.labels_file
//   sensor.timestamp_column / sensor.x_column / sensor.y_column / sensor.z_column
//   sensor.timestamp_scale multiplier from raw timestamp units to seconds
//   labels.start_column / labels.end_column / labels.label_column
//   labels.timestamp_scale
//   label_alias.<raw text> canonical label name for a raw annotation string

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "movelet/classify.hpp"
#include "movelet/ingest.hpp"

namespace movelet {

struct DatasetLayout {
  std::string participant_dir = "participant{p}";
  std::string training_dir = "training";
  std::string step_dir = "step{s}";
  std::string accel_file = "accel.csv";
  std::string gyro_file = "gyro.csv";
  std::string labels_file = "labels.csv";
};

struct ExperimentConfig {
  std::filesystem::path dataset_root;
  std::filesystem::path output_dir = "movelet-out";
  std::vector<int> participants = {1, 2, 3, 4};
  std::vector<int> steps = {1, 2, 3, 5, 6};
  std::vector<Mode> modes = {Mode::AccelOnly, Mode::GyroOnly, Mode::Joint};
  std::size_t window = 10;
  std::size_t vote_window = 10;
  double training_seconds = 5.0;
  double sample_rate = 10.0;
  unsigned threads = 1;
  DatasetLayout layout;
  SensorColumns sensor_columns;
  LabelColumns label_columns;

  /// Applies one key; throws ConfigInvalid for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Throws ConfigInvalid.
  void validate() const;

  /// Sorted key=value text of every setting that affects results.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  std::string hash() const;

  std::filesystem::path participant_path(int participant) const;
  std::filesystem::path training_path(int participant) const;
  std::filesystem::path step_path(int participant, int step) const;
  ClassifierParams classifier_params() const;
};

ExperimentConfig parse_config(std::istream& in);
/// Throws ConfigInvalid when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

std::string participant_name(int participant);
std::string step_name(int step);

}  // namespace movelet

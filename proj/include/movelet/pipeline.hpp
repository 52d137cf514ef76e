#pragma once

// End-to-end analyses: load a participant's training and test recordings,
// build a dictionary per mode, classify every test step and evaluate.
//
// Output layout under the output directory:
//   participant<P>/<mode>/step<S>.timeline.json
//   participant<P>/<mode>/confusion.json
//   summary/table3.json, summary/table3.txt
// Every JSON artifact carries "config_hash".

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "movelet/classify.hpp"
#include "movelet/config.hpp"
#include "movelet/evaluate.hpp"
#include "movelet/ingest.hpp"

namespace movelet {

struct TrainingData {
  LabeledSeries accel;
  std::optional<LabeledSeries> gyro;
};

struct DictionaryParams {
  std::size_t window = 10;
  double training_seconds = 5.0;
};

/// One entry per dictionary activity. Joint mode interpolates the training
/// gyroscope stream onto each accelerometer training segment. Throws
/// ActivityAbsent, MissingSensor, NoOverlap, SeriesTooShort.
Dictionary build_dictionary(const TrainingData& training, Mode mode,
                            const DictionaryParams& params = {}, std::string person = {});

/// Timestamps of both sensors and the annotations are shifted so the first
/// accelerometer sample sits at t = 0. The gyroscope is read only when asked.
TrainingData load_training(const ExperimentConfig& config, int participant, bool with_gyro);
StudyStep load_step(const ExperimentConfig& config, int participant, int step, bool with_gyro);

struct StepTimeline {
  int step = 0;
  ClassifiedTimeline timeline;
};

struct ModeResult {
  Mode mode = Mode::AccelOnly;
  std::vector<StepTimeline> timelines;
  ConfusionMatrix confusion;
  std::map<std::string, double> group_accuracy;  // groups with every member observed
  std::optional<std::string> error;
};

struct ParticipantResult {
  int participant = 0;
  std::vector<ModeResult> modes;
  std::optional<std::string> error;
};

struct ExperimentResult {
  std::string config_hash;
  std::vector<ParticipantResult> participants;
  std::vector<GroupAccuracyRow> table3;

  /// "participant3/joint: ..." style messages for every failed item.
  std::vector<std::string> failures() const;
};

/// Failures are recorded per participant and mode without aborting others.
/// Throws ConfigInvalid or DatasetMissing for problems affecting the whole run.
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_artifacts(const ExperimentResult& result,
                     const std::filesystem::path& output_dir);

nlohmann::json timeline_artifact(const ClassifiedTimeline& timeline, const std::string& config_hash,
                                 int participant, Mode mode, int step);

/// Per-label sample counts over the configured steps, by participant.
std::map<int, std::map<ActivityLabel, std::size_t>> label_count_table(
    const ExperimentConfig& config);

}  // namespace movelet

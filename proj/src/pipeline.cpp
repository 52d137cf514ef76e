#include "movelet/pipeline.hpp"

#include <future>

#include "movelet/artifacts.hpp"
#include "movelet/movelets.hpp"
#include "movelet/sync.hpp"

namespace movelet {
namespace {

struct Recording {
  TriaxialSeries accel;
  std::optional<TriaxialSeries> gyro;
  std::vector<LabeledInterval> intervals;
};

std::filesystem::path require_file(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::DatasetMissing, "missing file " + path.string());
  }
  return path;
}

Recording load_recording(const ExperimentConfig& config, const std::filesystem::path& dir,
                         bool with_gyro) {
  Recording r;
  r.accel = parse_sensor_csv(require_file(dir / config.layout.accel_file),
                             SensorKind::Accelerometer, config.sensor_columns, config.sample_rate);
  if (r.accel.empty()) throw Error(ErrorCode::MissingSensor, "empty accelerometer file in " + dir.string());
  r.intervals = parse_label_csv(require_file(dir / config.layout.labels_file), config.label_columns);
  const double origin = r.accel.samples.front().t;
  rebase(r.accel, origin);
  rebase(r.intervals, origin);
  if (with_gyro) {
    const auto path = dir / config.layout.gyro_file;
    if (!std::filesystem::is_regular_file(path)) {
      throw Error(ErrorCode::MissingSensor, "missing gyroscope file " + path.string());
    }
    r.gyro = parse_sensor_csv(path, SensorKind::Gyroscope, config.sensor_columns, config.sample_rate);
    rebase(*r.gyro, origin);
  }
  return r;
}

std::vector<Movelet> entry_movelets(const TrainingData& training, ActivityLabel activity, Mode mode,
                                    const DictionaryParams& params) {
  switch (mode) {
    case Mode::AccelOnly:
      return extract_movelets(
          to_channels(extract_training_segment(training.accel, activity, params.training_seconds)),
          params.window);
    case Mode::GyroOnly:
      return extract_movelets(
          to_channels(extract_training_segment(*training.gyro, activity, params.training_seconds)),
          params.window);
    case Mode::Joint: {
      const auto segment = extract_training_segment(training.accel, activity, params.training_seconds);
      const auto synced = synchronize(segment, training.gyro->series);
      return extract_movelets(synced.series.to_channels(), params.window);
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown mode");
}

ModeResult run_mode(const ExperimentConfig& config, int participant, Mode mode) {
  ModeResult result;
  result.mode = mode;
  try {
    const bool with_gyro = mode != Mode::AccelOnly;
    const TrainingData training = load_training(config, participant, with_gyro);
    const Dictionary dictionary =
        build_dictionary(training, mode, {config.window, config.training_seconds},
                         participant_name(participant));
    std::vector<ClassifiedTimeline> all;
    for (int s : config.steps) {
      const StudyStep step = load_step(config, participant, s, with_gyro);
      auto timeline = classify_series(step, dictionary, mode, config.classifier_params());
      all.push_back(timeline);
      result.timelines.push_back({s, std::move(timeline)});
    }
    result.confusion = confusion_matrix(all);
    for (const auto& group : standard_groups()) {
      bool complete = true;
      for (ActivityLabel a : group.members) complete = complete && result.confusion.has_truth(a);
      if (complete) {
        result.group_accuracy[std::string(group.name)] =
            group_average_accuracy(result.confusion, group);
      }
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

std::vector<GroupAccuracyRow> build_table3(const std::vector<ParticipantResult>& participants) {
  std::vector<GroupAccuracyRow> rows;
  for (const auto& group : standard_groups()) {
    for (const auto& p : participants) {
      GroupAccuracyRow row;
      row.participant = participant_name(p.participant);
      row.group = std::string(group.name);
      for (const auto& m : p.modes) {
        auto it = m.group_accuracy.find(row.group);
        if (m.error || it == m.group_accuracy.end()) continue;
        (m.mode == Mode::AccelOnly ? row.accel : m.mode == Mode::GyroOnly ? row.gyro : row.joint) =
            it->second;
      }
      if (row.accel && row.gyro && row.joint && std::max(*row.accel, *row.gyro) > 0.0) {
        row.improvement = percent_improvement(*row.joint, *row.accel, *row.gyro);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

Dictionary build_dictionary(const TrainingData& training, Mode mode, const DictionaryParams& params,
                            std::string person) {
  if (mode != Mode::AccelOnly && !training.gyro) {
    throw Error(ErrorCode::MissingSensor,
                std::string(to_string(mode)) + " dictionary needs gyroscope training data");
  }
  Dictionary::Entries entries;
  for (ActivityLabel activity : kDictionaryActivities) {
    try {
      entries[activity] = entry_movelets(training, activity, mode, params);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(to_string(activity)) + " entry: " + e.what());
    }
  }
  return Dictionary(std::move(person), channels_for(mode), std::move(entries));
}

TrainingData load_training(const ExperimentConfig& config, int participant, bool with_gyro) {
  Recording r = load_recording(config, config.training_path(participant), with_gyro);
  TrainingData out;
  out.accel = attach_labels(r.accel, r.intervals);
  if (r.gyro) out.gyro = attach_labels(*r.gyro, r.intervals);
  return out;
}

StudyStep load_step(const ExperimentConfig& config, int participant, int step, bool with_gyro) {
  if (step == 4) throw Error(ErrorCode::ConfigInvalid, "step 4 is not analysed");
  Recording r = load_recording(config, config.step_path(participant, step), with_gyro);
  return StudyStep{step, std::move(r.accel), std::move(r.gyro), std::move(r.intervals)};
}

std::vector<std::string> ExperimentResult::failures() const {
  std::vector<std::string> out;
  for (const auto& p : participants) {
    if (p.error) out.push_back(participant_name(p.participant) + ": " + *p.error);
    for (const auto& m : p.modes) {
      if (m.error) {
        out.push_back(participant_name(p.participant) + "/" + std::string(to_string(m.mode)) +
                      ": " + *m.error);
      }
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (!std::filesystem::is_directory(config.dataset_root)) {
    throw Error(ErrorCode::DatasetMissing,
                "dataset root '" + config.dataset_root.string() + "' is not a directory");
  }

  ExperimentResult result;
  result.config_hash = config.hash();
  for (int p : config.participants) {
    ParticipantResult pr;
    pr.participant = p;
    if (!std::filesystem::is_directory(config.participant_path(p))) {
      pr.error = "DatasetMissing: no directory " + config.participant_path(p).string();
    }
    result.participants.push_back(std::move(pr));
  }

  struct Task {
    std::size_t participant_slot;
    Mode mode;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < result.participants.size(); ++i) {
    if (result.participants[i].error) continue;
    for (Mode m : config.modes) tasks.push_back({i, m});
  }

  // Tasks run in waves of `threads`; results are stored by task position so
  // scheduling never changes the output order.
  std::vector<ModeResult> outcomes(tasks.size());
  const std::size_t wave = std::max<unsigned>(1, config.threads);
  for (std::size_t begin = 0; begin < tasks.size(); begin += wave) {
    const std::size_t end = std::min(tasks.size(), begin + wave);
    if (end - begin == 1) {
      outcomes[begin] = run_mode(config, result.participants[tasks[begin].participant_slot].participant,
                                 tasks[begin].mode);
      continue;
    }
    std::vector<std::future<ModeResult>> running;
    for (std::size_t t = begin; t < end; ++t) {
      const int participant = result.participants[tasks[t].participant_slot].participant;
      running.push_back(std::async(std::launch::async, run_mode, std::cref(config), participant,
                                   tasks[t].mode));
    }
    for (std::size_t t = begin; t < end; ++t) outcomes[t] = running[t - begin].get();
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    result.participants[tasks[t].participant_slot].modes.push_back(std::move(outcomes[t]));
  }
  result.table3 = build_table3(result.participants);
  return result;
}

nlohmann::json timeline_artifact(const ClassifiedTimeline& timeline, const std::string& config_hash,
                                 int participant, Mode mode, int step) {
  nlohmann::json j = timeline_to_json(timeline);
  std::size_t unlabeled = 0;
  for (const auto& e : timeline.entries()) unlabeled += e.truth ? 0 : 1;
  j["config_hash"] = config_hash;
  j["participant"] = participant_name(participant);
  j["mode"] = to_string(mode);
  j["step"] = step;
  j["excluded_unlabeled"] = unlabeled;
  return j;
}

void write_artifacts(const ExperimentResult& result,
                     const std::filesystem::path& output_dir) {
  for (const auto& p : result.participants) {
    for (const auto& m : p.modes) {
      if (m.error) continue;
      const auto dir = output_dir / participant_name(p.participant) / std::string(to_string(m.mode));
      for (const auto& st : m.timelines) {
        write_json_file(dir / (step_name(st.step) + ".timeline.json"),
                        timeline_artifact(st.timeline, result.config_hash, p.participant, m.mode,
                                          st.step));
      }
      nlohmann::json cj = to_json(m.confusion);
      cj["config_hash"] = result.config_hash;
      cj["participant"] = participant_name(p.participant);
      cj["mode"] = to_string(m.mode);
      cj["group_accuracy"] = m.group_accuracy;
      write_json_file(dir / "confusion.json", cj);
    }
  }
  nlohmann::json summary;
  summary["config_hash"] = result.config_hash;
  summary["rows"] = to_json(result.table3);
  summary["failures"] = result.failures();
  write_json_file(output_dir / "summary" / "table3.json", summary);
  write_text_file(output_dir / "summary" / "table3.txt", render_text(result.table3));
}

std::map<int, std::map<ActivityLabel, std::size_t>> label_count_table(
    const ExperimentConfig& config) {
  std::map<int, std::map<ActivityLabel, std::size_t>> table;
  for (int p : config.participants) {
    auto& counts = table[p];
    for (int s : config.steps) {
      const StudyStep step = load_step(config, p, s, false);
      for (const auto& [label, n] : count_labels(attach_labels(step.accel, step.intervals))) {
        counts[label] += n;
      }
    }
  }
  return table;
}

}  // namespace movelet

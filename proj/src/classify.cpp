#include "movelet/classify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <thread>

#include "movelet/sync.hpp"

namespace movelet {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::AccelOnly: return "accel";
    case Mode::GyroOnly: return "gyro";
    case Mode::Joint: return "joint";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : kAllModes) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

MoveletMatch match_movelet(const Movelet& m, const Dictionary& dictionary) {
  if (m.channel_count() != dictionary.channel_count()) {
    throw Error(ErrorCode::ChannelMismatch, "test movelet has " +
                                                std::to_string(m.channel_count()) +
                                                " channels, dictionary has " +
                                                std::to_string(dictionary.channel_count()));
  }
  MoveletMatch best;
  best.test_index = m.start_index();
  best.discrepancy = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& [label, movelets] : dictionary.entries()) {
    for (std::size_t j = 0; j < movelets.size(); ++j) {
      const double d = discrepancy(m, movelets[j]).value;
      if (!found || d < best.discrepancy) {
        best.label = label;
        best.discrepancy = d;
        best.dictionary_index = j;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorCode::EmptyDictionary, "dictionary holds no movelets");
  return best;
}

std::vector<MoveletMatch> classify_movelets(std::span<const Movelet> test,
                                            const Dictionary& dictionary, unsigned threads) {
  std::vector<MoveletMatch> out(test.size());
  if (dictionary.movelet_count() == 0) {
    throw Error(ErrorCode::EmptyDictionary, "dictionary holds no movelets");
  }
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, test.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < test.size(); ++i) out[i] = match_movelet(test[i], dictionary);
    return out;
  }

  // Each worker owns a contiguous slice of `out`; the first error wins.
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (test.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(test.size(), (w + 1) * chunk);
          for (std::size_t i = w * chunk; i < end; ++i) out[i] = match_movelet(test[i], dictionary);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ActivityLabel vote_timepoint(std::span<const MoveletMatch> matches, std::size_t i,
                             std::size_t vote_window) {
  if (i >= matches.size()) throw Error(ErrorCode::OutOfRange, "vote index past the last match");
  const std::size_t end = std::min(matches.size(), i + std::max<std::size_t>(vote_window, 1));

  std::array<std::size_t, kLabelCount> votes{};
  std::array<double, kLabelCount> summed{};
  for (std::size_t k = i; k < end; ++k) {
    ++votes[index_of(matches[k].label)];
    summed[index_of(matches[k].label)] += matches[k].discrepancy;
  }

  ActivityLabel winner = matches[i].label;
  std::size_t best_votes = 0;
  double best_sum = 0.0;
  for (ActivityLabel label : kDictionaryActivities) {
    const std::size_t v = votes[index_of(label)];
    const double s = summed[index_of(label)];
    if (v == 0) continue;
    if (v > best_votes || (v == best_votes && s < best_sum)) {
      winner = label;
      best_votes = v;
      best_sum = s;
    }
  }
  return winner;
}

std::vector<ActivityLabel> label_samples(const ChannelMatrix& series, const Dictionary& dictionary,
                                         const ClassifierParams& params) {
  const auto movelets = extract_movelets(series, params.window);
  const auto matches = classify_movelets(movelets, dictionary, params.threads);

  std::vector<ActivityLabel> labels;
  labels.reserve(series.length());
  for (std::size_t i = 0; i < matches.size(); ++i) {
    labels.push_back(vote_timepoint(matches, i, params.vote_window));
  }
  labels.resize(series.length(), labels.back());
  return labels;
}

namespace {

std::vector<TimelineEntry> with_truth(const std::vector<double>& ts,
                                      const std::vector<ActivityLabel>& predicted,
                                      const LabeledSeries& truth) {
  std::vector<TimelineEntry> entries;
  entries.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    entries.push_back({ts[i], predicted[i], truth.labels[i]});
  }
  return entries;
}

void require_channels(const Dictionary& dictionary, Mode mode) {
  if (dictionary.channel_count() != channels_for(mode)) {
    throw Error(ErrorCode::ChannelMismatch,
                std::string(to_string(mode)) + " mode needs a " +
                    std::to_string(channels_for(mode)) + "-channel dictionary");
  }
}

}  // namespace

ClassifiedTimeline classify_series(const StudyStep& step, const Dictionary& dictionary, Mode mode,
                                   const ClassifierParams& params) {
  require_channels(dictionary, mode);
  const LabeledSeries accel_truth = attach_labels(step.accel, step.intervals);
  const std::vector<double> accel_ts = step.accel.timestamps();

  switch (mode) {
    case Mode::AccelOnly: {
      if (step.accel.empty()) throw Error(ErrorCode::MissingSensor, "no accelerometer data");
      const auto predicted = label_samples(to_channels(step.accel), dictionary, params);
      return ClassifiedTimeline(with_truth(accel_ts, predicted, accel_truth));
    }
    case Mode::GyroOnly: {
      if (!step.gyro || step.gyro->empty()) {
        throw Error(ErrorCode::MissingSensor, "gyroscope-only mode needs gyroscope data");
      }
      const LabeledSeries gyro_truth = attach_labels(*step.gyro, step.intervals);
      const auto predicted = label_samples(to_channels(*step.gyro), dictionary, params);
      const ClassifiedTimeline native(with_truth(step.gyro->timestamps(), predicted, gyro_truth));
      const ClassifiedTimeline mapped = map_to_accel_timestamps(native, accel_ts);
      std::vector<TimelineEntry> entries = mapped.entries();
      for (std::size_t i = 0; i < entries.size(); ++i) entries[i].truth = accel_truth.labels[i];
      return ClassifiedTimeline(std::move(entries));
    }
    case Mode::Joint: {
      if (!step.gyro || step.gyro->empty()) {
        throw Error(ErrorCode::MissingSensor, "joint mode needs gyroscope data");
      }
      const InterpolationResult synced = synchronize(step.accel, *step.gyro);
      const auto inner = label_samples(synced.series.to_channels(), dictionary, params);
      std::vector<ActivityLabel> predicted;
      predicted.reserve(accel_ts.size());
      predicted.insert(predicted.end(), synced.clipped_head, inner.front());
      predicted.insert(predicted.end(), inner.begin(), inner.end());
      predicted.insert(predicted.end(), synced.clipped_tail, inner.back());
      return ClassifiedTimeline(with_truth(accel_ts, predicted, accel_truth));
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown mode");
}

ClassifiedTimeline map_to_accel_timestamps(const ClassifiedTimeline& gyro_timeline,
                                           std::span<const double> accel_timestamps) {
  if (gyro_timeline.empty() || accel_timestamps.empty()) {
    throw Error(ErrorCode::EmptyTimeline, "cannot map an empty timeline");
  }
  const auto& g = gyro_timeline.entries();
  std::vector<TimelineEntry> out;
  out.reserve(accel_timestamps.size());
  for (double t : accel_timestamps) {
    // First gyroscope entry at or after t; compare with its predecessor.
    auto it = std::lower_bound(g.begin(), g.end(), t,
                               [](const TimelineEntry& e, double v) { return e.t < v; });
    const TimelineEntry* nearest = nullptr;
    if (it == g.end()) {
      nearest = &g.back();
    } else if (it == g.begin()) {
      nearest = &*it;
    } else {
      const TimelineEntry& before = *(it - 1);
      nearest = (t - before.t <= it->t - t) ? &before : &*it;
    }
    out.push_back({t, nearest->predicted, nearest->truth});
  }
  return ClassifiedTimeline(std::move(out));
}

}  // namespace movelet

#pragma once

// Nearest-movelet matching against a dictionary, the forward majority vote
// and the three analysis modes (accelerometer only, gyroscope only, joint).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "movelet/core.hpp"
#include "movelet/ingest.hpp"
#include "movelet/movelets.hpp"

namespace movelet {

enum class Mode { AccelOnly, GyroOnly, Joint };

inline constexpr std::array<Mode, 3> kAllModes = {Mode::AccelOnly, Mode::GyroOnly, Mode::Joint};

/// "accel", "gyro", "joint".
std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);
constexpr std::size_t channels_for(Mode mode) { return mode == Mode::Joint ? 6 : 3; }

struct ClassifierParams {
  std::size_t window = kDefaultWindow;       // samples per movelet
  std::size_t vote_window = 10;              // movelets per majority vote
  unsigned threads = 1;
};

struct MoveletMatch {
  std::size_t test_index = 0;
  ActivityLabel label = ActivityLabel::Walk;
  double discrepancy = 0.0;
  std::size_t dictionary_index = 0;  // position inside the winning entry

  bool operator==(const MoveletMatch&) const = default;
};

/// Exhaustive scan; the first strict minimum in (activity order, movelet
/// index) order wins. Throws ChannelMismatch or EmptyDictionary.
MoveletMatch match_movelet(const Movelet& m, const Dictionary& dictionary);

/// One match per test movelet, in input order, for any thread count.
std::vector<MoveletMatch> classify_movelets(std::span<const Movelet> test,
                                            const Dictionary& dictionary, unsigned threads = 1);

/// Plurality over matches[i, min(i + vote_window, size)). Ties go to the
/// smallest summed discrepancy, then to label order.
ActivityLabel vote_timepoint(std::span<const MoveletMatch> matches, std::size_t i,
                             std::size_t vote_window = 10);

/// One label per sample of `series`; the final window-1 samples repeat the
/// last vote.
std::vector<ActivityLabel> label_samples(const ChannelMatrix& series, const Dictionary& dictionary,
                                         const ClassifierParams& params = {});

/// Timeline on accelerometer timestamps with accelerometer ground truth.
/// Gyroscope-only mode classifies the raw gyroscope clock and maps the result
/// with map_to_accel_timestamps. Joint mode repeats the first/last computed
/// label over accelerometer samples clipped by synchronization.
/// Throws MissingSensor, NoOverlap, ChannelMismatch, SeriesTooShort.
ClassifiedTimeline classify_series(const StudyStep& step, const Dictionary& dictionary, Mode mode,
                                   const ClassifierParams& params = {});

/// Labels of the gyroscope timestamp nearest each accelerometer timestamp;
/// exact midpoints take the earlier one. Throws EmptyTimeline.
ClassifiedTimeline map_to_accel_timestamps(const ClassifiedTimeline& gyro_timeline,
                                           std::span<const double> accel_timestamps);

}  // namespace movelet

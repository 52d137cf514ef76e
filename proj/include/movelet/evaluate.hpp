#pragma once

// Column-normalized confusion matrices, activity-group accuracies and the
// relative improvement of the joint-sensor method.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "movelet/core.hpp"

namespace movelet {

/// Truth labels on columns, predicted labels on rows.
class ConfusionMatrix {
 public:
  /// Adds every labeled entry; unlabeled entries are counted as excluded.
  void add(const ClassifiedTimeline& timeline);
  void add(ActivityLabel predicted, ActivityLabel truth, std::size_t n = 1);

  std::size_t count(ActivityLabel predicted, ActivityLabel truth) const;
  std::size_t column_total(ActivityLabel truth) const;
  bool has_truth(ActivityLabel truth) const { return column_total(truth) > 0; }
  /// Percentage of `truth` samples predicted as `predicted`; 0 for an empty column.
  double percent(ActivityLabel predicted, ActivityLabel truth) const;
  double accuracy(ActivityLabel truth) const { return percent(truth, truth); }
  std::size_t total() const;
  std::size_t excluded() const { return excluded_; }

 private:
  std::array<std::array<std::size_t, kLabelCount>, kLabelCount> counts_{};
  std::size_t excluded_ = 0;
};

/// Throws EmptyTimeline.
ConfusionMatrix confusion_matrix(const ClassifiedTimeline& timeline);
ConfusionMatrix confusion_matrix(std::span<const ClassifiedTimeline> timelines);

struct ActivityGroup {
  std::string_view name;
  std::vector<ActivityLabel> members;
};

ActivityGroup group_all();
ActivityGroup group_vigorous();
ActivityGroup group_stationary();
ActivityGroup group_transition();
/// All, Vigorous, Stationary, Transition.
std::vector<ActivityGroup> standard_groups();

/// Unweighted mean of the diagonal percentages of the group's members.
/// Throws MissingActivity when a member has no truth samples.
double group_average_accuracy(const ConfusionMatrix& cm, const ActivityGroup& group);

/// 100 * (joint - best) / best with best = max(accel, gyro). Throws
/// ZeroBaseline, or OutOfRange for inputs outside [0, 100].
double percent_improvement(double joint, double accel, double gyro);

nlohmann::json to_json(const ConfusionMatrix& cm);
/// Aligned-column table of column percentages, one decimal place.
std::string render_text(const ConfusionMatrix& cm);

/// One participant/group row of the group-accuracy table.
struct GroupAccuracyRow {
  std::string participant;
  std::string group;
  std::optional<double> accel;
  std::optional<double> gyro;
  std::optional<double> joint;
  std::optional<double> improvement;  // only when all three methods are present
};

nlohmann::json to_json(const std::vector<GroupAccuracyRow>& rows);
std::string render_text(const std::vector<GroupAccuracyRow>& rows);

}  // namespace movelet

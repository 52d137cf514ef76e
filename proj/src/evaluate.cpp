#include "movelet/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace movelet {

void ConfusionMatrix::add(const ClassifiedTimeline& timeline) {
  for (const TimelineEntry& e : timeline.entries()) {
    if (!e.truth) {
      ++excluded_;
      continue;
    }
    ++counts_[index_of(e.predicted)][index_of(*e.truth)];
  }
}

void ConfusionMatrix::add(ActivityLabel predicted, ActivityLabel truth, std::size_t n) {
  if (!is_dictionary_activity(predicted)) {
    throw Error(ErrorCode::MalformedRow, "prediction cannot be OutOfDictionary");
  }
  counts_[index_of(predicted)][index_of(truth)] += n;
}

std::size_t ConfusionMatrix::count(ActivityLabel predicted, ActivityLabel truth) const {
  return counts_[index_of(predicted)][index_of(truth)];
}

std::size_t ConfusionMatrix::column_total(ActivityLabel truth) const {
  std::size_t total = 0;
  for (const auto& row : counts_) total += row[index_of(truth)];
  return total;
}

double ConfusionMatrix::percent(ActivityLabel predicted, ActivityLabel truth) const {
  const std::size_t column = column_total(truth);
  if (column == 0) return 0.0;
  return 100.0 * static_cast<double>(count(predicted, truth)) / static_cast<double>(column);
}

std::size_t ConfusionMatrix::total() const {
  std::size_t total = 0;
  for (const auto& row : counts_) {
    for (std::size_t c : row) total += c;
  }
  return total;
}

ConfusionMatrix confusion_matrix(const ClassifiedTimeline& timeline) {
  if (timeline.empty()) throw Error(ErrorCode::EmptyTimeline, "timeline has no entries");
  ConfusionMatrix cm;
  cm.add(timeline);
  return cm;
}

ConfusionMatrix confusion_matrix(std::span<const ClassifiedTimeline> timelines) {
  ConfusionMatrix cm;
  bool any = false;
  for (const auto& t : timelines) {
    any = any || !t.empty();
    cm.add(t);
  }
  if (!any) throw Error(ErrorCode::EmptyTimeline, "no timeline entries to evaluate");
  return cm;
}

ActivityGroup group_all() {
  return {"all", {kDictionaryActivities.begin(), kDictionaryActivities.end()}};
}
ActivityGroup group_vigorous() {
  return {"vigorous", {ActivityLabel::Walk, ActivityLabel::StairUp, ActivityLabel::StairDown}};
}
ActivityGroup group_stationary() {
  return {"stationary", {ActivityLabel::Stand, ActivityLabel::Sit}};
}
ActivityGroup group_transition() {
  return {"transition", {ActivityLabel::SitToStand, ActivityLabel::StandToSit}};
}
std::vector<ActivityGroup> standard_groups() {
  return {group_all(), group_vigorous(), group_stationary(), group_transition()};
}

double group_average_accuracy(const ConfusionMatrix& cm, const ActivityGroup& group) {
  if (group.members.empty()) throw Error(ErrorCode::MissingActivity, "group has no members");
  double sum = 0.0;
  for (ActivityLabel label : group.members) {
    if (!cm.has_truth(label)) {
      throw Error(ErrorCode::MissingActivity, "no " + std::string(to_string(label)) +
                                                  " truth samples for group " +
                                                  std::string(group.name));
    }
    sum += cm.accuracy(label);
  }
  return sum / static_cast<double>(group.members.size());
}

double percent_improvement(double joint, double accel, double gyro) {
  for (double v : {joint, accel, gyro}) {
    if (!(v >= 0.0 && v <= 100.0)) {
      throw Error(ErrorCode::OutOfRange, "accuracy " + std::to_string(v) + " outside [0, 100]");
    }
  }
  const double best = std::max(accel, gyro);
  if (best == 0.0) throw Error(ErrorCode::ZeroBaseline, "both single-sensor accuracies are 0");
  return 100.0 * (joint - best) / best;
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  nlohmann::json j;
  j["predicted_labels"] = nlohmann::json::array();
  j["truth_labels"] = nlohmann::json::array();
  for (ActivityLabel p : kDictionaryActivities) j["predicted_labels"].push_back(to_string(p));
  for (ActivityLabel t : kAllLabels) j["truth_labels"].push_back(to_string(t));
  auto counts = nlohmann::json::array();
  auto percents = nlohmann::json::array();
  for (ActivityLabel p : kDictionaryActivities) {
    auto crow = nlohmann::json::array();
    auto prow = nlohmann::json::array();
    for (ActivityLabel t : kAllLabels) {
      crow.push_back(cm.count(p, t));
      prow.push_back(cm.percent(p, t));
    }
    counts.push_back(std::move(crow));
    percents.push_back(std::move(prow));
  }
  j["counts"] = std::move(counts);
  j["percent"] = std::move(percents);
  auto totals = nlohmann::json::object();
  for (ActivityLabel t : kAllLabels) totals[std::string(to_string(t))] = cm.column_total(t);
  j["column_totals"] = std::move(totals);
  j["total"] = cm.total();
  j["excluded_unlabeled"] = cm.excluded();
  return j;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string render_text(const ConfusionMatrix& cm) {
  std::vector<ActivityLabel> columns;
  for (ActivityLabel t : kAllLabels) {
    if (cm.has_truth(t)) columns.push_back(t);
  }
  constexpr std::size_t kWidth = 14;
  std::ostringstream out;
  out << pad_left("pred\\truth", kWidth);
  for (ActivityLabel t : columns) out << pad_left(std::string(to_string(t)), kWidth);
  out << '\n';
  for (ActivityLabel p : kDictionaryActivities) {
    out << pad_left(std::string(to_string(p)), kWidth);
    for (ActivityLabel t : columns) out << pad_left(fixed(cm.percent(p, t), 1), kWidth);
    out << '\n';
  }
  out << pad_left("n", kWidth);
  for (ActivityLabel t : columns) out << pad_left(std::to_string(cm.column_total(t)), kWidth);
  out << '\n';
  return out.str();
}

nlohmann::json to_json(const std::vector<GroupAccuracyRow>& rows) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"participant", r.participant},
                   {"group", r.group},
                   {"accel", opt(r.accel)},
                   {"gyro", opt(r.gyro)},
                   {"joint", opt(r.joint)},
                   {"improvement_percent", opt(r.improvement)}});
  }
  return out;
}

std::string render_text(const std::vector<GroupAccuracyRow>& rows) {
  auto cell = [](const std::optional<double>& v) { return v ? fixed(*v, 1) : std::string("-"); };
  std::ostringstream out;
  out << pad_left("group", 12) << pad_left("participant", 14) << pad_left("accel", 8)
      << pad_left("gyro", 8) << pad_left("joint", 8) << pad_left("improve%", 10) << '\n';
  for (const auto& r : rows) {
    out << pad_left(r.group, 12) << pad_left(r.participant, 14) << pad_left(cell(r.accel), 8)
        << pad_left(cell(r.gyro), 8) << pad_left(cell(r.joint), 8)
        << pad_left(cell(r.improvement), 10) << '\n';
  }
  return out.str();
}

}  // namespace movelet

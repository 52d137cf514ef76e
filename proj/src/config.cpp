#include "movelet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace movelet {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::ConfigInvalid, "bad value '" + value + "' for " + key);
}

long parse_int(const std::string& key, const std::string& value) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value);
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value);
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const long v = parse_int(key, value);
  if (v < 1) bad(key, value);
  return static_cast<std::size_t>(v);
}

std::string replace_all(std::string text, const std::string& token, const std::string& with) {
  for (auto pos = text.find(token); pos != std::string::npos;
       pos = text.find(token, pos + with.size())) {
    text.replace(pos, token.size(), with);
  }
  return text;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "dataset_root") {
    dataset_root = value;
  } else if (key == "output_dir") {
    output_dir = value;
  } else if (key == "participants" || key == "steps") {
    std::vector<int> ids;
    for (const auto& item : split_list(value)) ids.push_back(static_cast<int>(parse_int(key, item)));
    if (ids.empty()) bad(key, value);
    (key == "participants" ? participants : steps) = ids;
  } else if (key == "modes") {
    std::vector<Mode> parsed;
    for (const auto& item : split_list(value)) {
      auto m = parse_mode(item);
      if (!m) bad(key, item);
      parsed.push_back(*m);
    }
    if (parsed.empty()) bad(key, value);
    modes = parsed;
  } else if (key == "window") {
    window = parse_count(key, value);
  } else if (key == "vote_window") {
    vote_window = parse_count(key, value);
  } else if (key == "training_seconds") {
    training_seconds = parse_double(key, value);
  } else if (key == "sample_rate") {
    sample_rate = parse_double(key, value);
  } else if (key == "threads") {
    threads = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "layout.participant_dir") {
    layout.participant_dir = value;
  } else if (key == "layout.training_dir") {
    layout.training_dir = value;
  } else if (key == "layout.step_dir") {
    layout.step_dir = value;
  } else if (key == "layout.accel_file") {
    layout.accel_file = value;
  } else if (key == "layout.gyro_file") {
    layout.gyro_file = value;
  } else if (key == "layout.labels_file") {
    layout.labels_file = value;
  } else if (key == "sensor.timestamp_column") {
    sensor_columns.timestamp = value;
  } else if (key == "sensor.x_column") {
    sensor_columns.x = value;
  } else if (key == "sensor.y_column") {
    sensor_columns.y = value;
  } else if (key == "sensor.z_column") {
    sensor_columns.z = value;
  } else if (key == "sensor.timestamp_scale") {
    sensor_columns.timestamp_scale = parse_double(key, value);
  } else if (key == "labels.start_column") {
    label_columns.start = value;
  } else if (key == "labels.end_column") {
    label_columns.end = value;
  } else if (key == "labels.label_column") {
    label_columns.label = value;
  } else if (key == "labels.timestamp_scale") {
    label_columns.timestamp_scale = parse_double(key, value);
  } else if (key.starts_with("label_alias.")) {
    auto label = parse_label(value);
    if (!label) bad(key, value);
    label_columns.aliases[key.substr(std::string("label_alias.").size())] = *label;
  } else {
    throw Error(ErrorCode::ConfigInvalid, "unknown config key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (participants.empty()) throw Error(ErrorCode::ConfigInvalid, "no participants selected");
  if (steps.empty()) throw Error(ErrorCode::ConfigInvalid, "no steps selected");
  for (int s : steps) {
    if (s == 4) {
      throw Error(ErrorCode::ConfigInvalid, "step 4 (phone reorientation) is not analysed");
    }
    if (s < 1 || s > 6) throw Error(ErrorCode::ConfigInvalid, "step ids range over 1..6");
  }
  if (modes.empty()) throw Error(ErrorCode::ConfigInvalid, "no modes selected");
  if (window < 1 || vote_window < 1) {
    throw Error(ErrorCode::ConfigInvalid, "window and vote_window must be at least 1");
  }
  if (!(training_seconds > 0.0) || !(sample_rate > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "training_seconds and sample_rate must be positive");
  }
  if (!(sensor_columns.timestamp_scale > 0.0) || !(label_columns.timestamp_scale > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "timestamp scales must be positive");
  }
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["dataset_root"] = dataset_root.generic_string();
  kv["participants"] = join_ints(participants);
  kv["steps"] = join_ints(steps);
  std::string m;
  for (std::size_t i = 0; i < modes.size(); ++i) m += (i ? "," : "") + std::string(to_string(modes[i]));
  kv["modes"] = m;
  kv["window"] = std::to_string(window);
  kv["vote_window"] = std::to_string(vote_window);
  kv["training_seconds"] = shortest(training_seconds);
  kv["sample_rate"] = shortest(sample_rate);
  kv["layout.participant_dir"] = layout.participant_dir;
  kv["layout.training_dir"] = layout.training_dir;
  kv["layout.step_dir"] = layout.step_dir;
  kv["layout.accel_file"] = layout.accel_file;
  kv["layout.gyro_file"] = layout.gyro_file;
  kv["layout.labels_file"] = layout.labels_file;
  kv["sensor.timestamp_column"] = sensor_columns.timestamp;
  kv["sensor.x_column"] = sensor_columns.x;
  kv["sensor.y_column"] = sensor_columns.y;
  kv["sensor.z_column"] = sensor_columns.z;
  kv["sensor.timestamp_scale"] = shortest(sensor_columns.timestamp_scale);
  kv["labels.start_column"] = label_columns.start;
  kv["labels.end_column"] = label_columns.end;
  kv["labels.label_column"] = label_columns.label;
  kv["labels.timestamp_scale"] = shortest(label_columns.timestamp_scale);
  for (const auto& [raw, label] : label_columns.aliases) {
    kv["label_alias." + raw] = std::string(to_string(label));
  }
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path ExperimentConfig::participant_path(int participant) const {
  return dataset_root / replace_all(layout.participant_dir, "{p}", std::to_string(participant));
}

std::filesystem::path ExperimentConfig::training_path(int participant) const {
  return participant_path(participant) / layout.training_dir;
}

std::filesystem::path ExperimentConfig::step_path(int participant, int step) const {
  return participant_path(participant) / replace_all(layout.step_dir, "{s}", std::to_string(step));
}

ClassifierParams ExperimentConfig::classifier_params() const {
  return ClassifierParams{window, vote_window, threads};
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigInvalid,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read config " + path.string());
  return parse_config(in);
}

std::string participant_name(int participant) { return "participant" + std::to_string(participant); }
std::string step_name(int step) { return "step" + std::to_string(step); }

}  // namespace movelet

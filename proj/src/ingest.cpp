#include "movelet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace movelet {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(trim(line.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) +
                                             ": cannot parse number '" + std::string(field) + "'");
  }
  return value;
}

std::size_t column_index(const std::vector<std::string_view>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::MalformedRow, "header is missing column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace

TriaxialSeries parse_sensor_csv(std::istream& in, SensorKind kind, const SensorColumns& columns,
                                double nominal_rate) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header_storage;
  std::vector<std::string_view> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto f : split_csv(line)) header_storage.emplace_back(f);
    for (const auto& h : header_storage) header.emplace_back(h);
  }
  if (header.empty()) throw Error(ErrorCode::MalformedRow, "sensor file has no header row");

  const std::size_t ti = column_index(header, columns.timestamp);
  const std::size_t xi = column_index(header, columns.x);
  const std::size_t yi = column_index(header, columns.y);
  const std::size_t zi = column_index(header, columns.z);

  TriaxialSeries series;
  series.kind = kind;
  series.nominal_rate = nominal_rate;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " columns, got " +
                                               std::to_string(fields.size()));
    }
    series.samples.push_back(Sample{parse_number(fields[ti], line_no) * columns.timestamp_scale,
                                    parse_number(fields[xi], line_no),
                                    parse_number(fields[yi], line_no),
                                    parse_number(fields[zi], line_no)});
  }
  validate_series(series);
  return series;
}

TriaxialSeries parse_sensor_csv(const std::filesystem::path& path, SensorKind kind,
                                const SensorColumns& columns, double nominal_rate) {
  auto in = open_or_throw(path);
  try {
    return parse_sensor_csv(in, kind, columns, nominal_rate);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_sensor_csv(std::ostream& out, const TriaxialSeries& series) {
  auto put = [&out](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
  };
  out << "timestamp,x,y,z\n";
  for (const Sample& s : series.samples) {
    put(s.t);
    out << ',';
    put(s.x);
    out << ',';
    put(s.y);
    out << ',';
    put(s.z);
    out << '\n';
  }
}

std::vector<LabeledInterval> parse_label_csv(std::istream& in, const LabelColumns& columns) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header_storage;
  std::vector<std::string_view> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto f : split_csv(line)) header_storage.emplace_back(f);
    for (const auto& h : header_storage) header.emplace_back(h);
  }
  if (header.empty()) throw Error(ErrorCode::MalformedRow, "label file has no header row");
  const std::size_t si = column_index(header, columns.start);
  const std::size_t ei = column_index(header, columns.end);
  const std::size_t li = column_index(header, columns.label);

  std::vector<LabeledInterval> intervals;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": wrong number of columns");
    }
    const std::string text(fields[li]);
    std::optional<ActivityLabel> label;
    if (auto it = columns.aliases.find(text); it != columns.aliases.end()) {
      label = it->second;
    } else {
      label = parse_label(text);
    }
    if (!label) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": unknown label '" + text + "'");
    }
    LabeledInterval interval{parse_number(fields[si], line_no) * columns.timestamp_scale,
                             parse_number(fields[ei], line_no) * columns.timestamp_scale, *label};
    if (!(interval.start < interval.end)) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": interval start must precede end");
    }
    intervals.push_back(interval);
  }
  return intervals;
}

std::vector<LabeledInterval> parse_label_csv(const std::filesystem::path& path,
                                             const LabelColumns& columns) {
  auto in = open_or_throw(path);
  try {
    return parse_label_csv(in, columns);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

LabeledSeries attach_labels(const TriaxialSeries& series, std::vector<LabeledInterval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const LabeledInterval& a, const LabeledInterval& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].start < intervals[i - 1].end) {
      std::ostringstream msg;
      msg << "[" << intervals[i - 1].start << ", " << intervals[i - 1].end << ") overlaps ["
          << intervals[i].start << ", " << intervals[i].end << ")";
      throw Error(ErrorCode::OverlappingIntervals, msg.str());
    }
  }

  LabeledSeries out{series, {}};
  out.labels.reserve(series.size());
  // Both sequences are sorted, so one forward sweep suffices.
  std::size_t k = 0;
  for (const Sample& s : series.samples) {
    while (k < intervals.size() && intervals[k].end <= s.t) ++k;
    if (k < intervals.size() && intervals[k].start <= s.t) {
      out.labels.emplace_back(intervals[k].label);
    } else {
      out.labels.emplace_back(std::nullopt);
    }
  }
  return out;
}

TriaxialSeries extract_training_segment(const LabeledSeries& training, ActivityLabel activity,
                                        double max_duration) {
  const auto& labels = training.labels;
  auto first = std::find(labels.begin(), labels.end(), std::optional<ActivityLabel>(activity));
  if (first == labels.end()) {
    throw Error(ErrorCode::ActivityAbsent,
                "no " + std::string(to_string(activity)) + " samples in training data");
  }
  auto last = std::find_if(first, labels.end(),
                           [activity](const auto& l) { return l != activity; });

  const auto cap = static_cast<std::size_t>(
      std::llround(std::max(0.0, max_duration) * training.series.nominal_rate));
  const auto begin = static_cast<std::size_t>(first - labels.begin());
  const auto run = static_cast<std::size_t>(last - first);

  TriaxialSeries segment;
  segment.kind = training.series.kind;
  segment.nominal_rate = training.series.nominal_rate;
  const auto it = training.series.samples.begin() + static_cast<std::ptrdiff_t>(begin);
  segment.samples.assign(it, it + static_cast<std::ptrdiff_t>(std::min(run, cap)));
  return segment;
}

void rebase(TriaxialSeries& series, double origin) {
  for (Sample& s : series.samples) s.t -= origin;
}

void rebase(std::vector<LabeledInterval>& intervals, double origin) {
  for (auto& i : intervals) {
    i.start -= origin;
    i.end -= origin;
  }
}

std::map<ActivityLabel, std::size_t> count_labels(const LabeledSeries& labeled) {
  std::map<ActivityLabel, std::size_t> counts;
  for (const auto& l : labeled.labels) {
    if (l) ++counts[*l];
  }
  return counts;
}

}  // namespace movelet

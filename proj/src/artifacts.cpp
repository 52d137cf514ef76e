#include "movelet/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace movelet {
namespace {

ActivityLabel label_or_throw(const std::string& text) {
  auto label = parse_label(text);
  if (!label) throw Error(ErrorCode::MalformedRow, "unknown label '" + text + "'");
  return *label;
}

}  // namespace

nlohmann::json timeline_to_json(const ClassifiedTimeline& timeline) {
  auto entries = nlohmann::json::array();
  for (const TimelineEntry& e : timeline.entries()) {
    entries.push_back({{"t", e.t},
                       {"truth", e.truth ? nlohmann::json(to_string(*e.truth)) : nlohmann::json()},
                       {"predicted", to_string(e.predicted)}});
  }
  return {{"entries", std::move(entries)}};
}

ClassifiedTimeline timeline_from_json(const nlohmann::json& j) {
  try {
    const nlohmann::json& entries = j.is_array() ? j : j.at("entries");
    std::vector<TimelineEntry> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
      TimelineEntry entry;
      entry.t = e.at("t").get<double>();
      entry.predicted = label_or_throw(e.at("predicted").get<std::string>());
      if (const auto& truth = e.at("truth"); !truth.is_null()) {
        entry.truth = label_or_throw(truth.get<std::string>());
      }
      out.push_back(entry);
    }
    return ClassifiedTimeline(std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("timeline JSON: ") + e.what());
  }
}

std::string timeline_to_tsv(const ClassifiedTimeline& timeline) {
  std::ostringstream out;
  out << "elapsed_seconds\ttruth\tpredicted\n";
  if (timeline.empty()) return out.str();
  const double origin = timeline.entries().front().t;
  char buf[64];
  for (const TimelineEntry& e : timeline.entries()) {
    std::snprintf(buf, sizeof buf, "%.3f", e.t - origin);
    out << buf << '\t' << (e.truth ? to_string(*e.truth) : std::string_view("unlabeled")) << '\t'
        << to_string(e.predicted) << '\n';
  }
  return out.str();
}

nlohmann::json dictionary_to_json(const Dictionary& dictionary) {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [label, movelets] : dictionary.entries()) {
    auto list = nlohmann::json::array();
    for (const Movelet& m : movelets) {
      auto channels = nlohmann::json::array();
      for (std::size_t k = 0; k < m.channel_count(); ++k) {
        const auto c = m.channel(k);
        channels.push_back(std::vector<double>(c.begin(), c.end()));
      }
      list.push_back({{"start_index", m.start_index()},
                      {"timestamps", m.timestamps()},
                      {"values", std::move(channels)}});
    }
    entries[std::string(to_string(label))] = std::move(list);
  }
  return {{"person", dictionary.person()},
          {"channel_count", dictionary.channel_count()},
          {"entries", std::move(entries)}};
}

Dictionary dictionary_from_json(const nlohmann::json& j) {
  try {
    const auto channel_count = j.at("channel_count").get<std::size_t>();
    Dictionary::Entries entries;
    for (const auto& [name, list] : j.at("entries").items()) {
      auto& movelets = entries[label_or_throw(name)];
      for (const auto& m : list) {
        const auto& channels = m.at("values");
        std::vector<double> values;
        std::size_t window = 0;
        for (const auto& c : channels) {
          auto v = c.get<std::vector<double>>();
          window = v.size();
          values.insert(values.end(), v.begin(), v.end());
        }
        movelets.emplace_back(m.at("start_index").get<std::size_t>(), channels.size(), window,
                              std::move(values), m.value("timestamps", std::vector<double>{}));
      }
    }
    return Dictionary(j.value("person", std::string{}), channel_count, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("dictionary JSON: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ArtifactMissing, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace movelet

#pragma once

// JSON and TSV encodings of timelines and dictionaries.
//
// Timeline JSON:
//   { "entries": [ {"t": 0.0, "truth": "walk" | null, "predicted": "walk"}, ... ], ...metadata }
// Timeline TSV:
//   elapsed_seconds<TAB>truth<TAB>predicted, elapsed time with three decimals,
//   "unlabeled" for samples outside every annotation.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "movelet/core.hpp"

namespace movelet {

nlohmann::json timeline_to_json(const ClassifiedTimeline& timeline);
/// Accepts either an artifact object with an "entries" array or the bare array.
ClassifiedTimeline timeline_from_json(const nlohmann::json& j);
std::string timeline_to_tsv(const ClassifiedTimeline& timeline);

nlohmann::json dictionary_to_json(const Dictionary& dictionary);
Dictionary dictionary_from_json(const nlohmann::json& j);

/// Throws ArtifactMissing or MalformedRow.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace movelet

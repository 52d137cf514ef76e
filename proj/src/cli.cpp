#include "movelet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "movelet/artifacts.hpp"
#include "movelet/classify.hpp"
#include "movelet/config.hpp"
#include "movelet/evaluate.hpp"
#include "movelet/pipeline.hpp"

namespace movelet::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitItemFailures = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
};

ExperimentConfig resolve_config(const CommonOptions& common) {
  ExperimentConfig config = common.config_path.empty() ? ExperimentConfig{}
                                                       : load_config(common.config_path);
  if (const char* root = std::getenv(kDatasetRootEnv); root && *root) config.dataset_root = root;
  for (const auto& kv : common.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigInvalid, "override '" + kv + "' is not key=value");
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.validate();
  return config;
}

void require_dataset(const ExperimentConfig& config) {
  if (config.dataset_root.empty() || !std::filesystem::is_directory(config.dataset_root)) {
    throw Error(ErrorCode::DatasetMissing,
                "dataset root '" + config.dataset_root.string() + "' is not a directory");
  }
}

Mode mode_or_throw(const std::string& text) {
  auto m = parse_mode(text);
  if (!m) throw Error(ErrorCode::ConfigInvalid, "unknown mode '" + text + "'");
  return *m;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_validate(const ExperimentConfig& config, std::ostream& out) {
  require_dataset(config);
  std::size_t failures = 0;
  auto check = [&](const std::string& what, auto&& load) {
    try {
      load();
      out << "ok      " << what << '\n';
    } catch (const std::exception& e) {
      ++failures;
      out << "FAILED  " << what << ": " << e.what() << '\n';
    }
  };
  for (int p : config.participants) {
    check(participant_name(p) + "/training", [&] { (void)load_training(config, p, true); });
    for (int s : config.steps) {
      check(participant_name(p) + "/" + step_name(s), [&] { (void)load_step(config, p, s, true); });
    }
  }
  if (failures == 0) {
    const auto table = label_count_table(config);
    out << "\nlabeled accelerometer samples per activity\n";
    out << std::string(16, ' ');
    for (const auto& [p, counts] : table) out << std::setw(14) << participant_name(p);
    out << '\n';
    for (ActivityLabel label : kAllLabels) {
      out << std::setw(16) << std::left << to_string(label) << std::right;
      for (const auto& [p, counts] : table) {
        auto it = counts.find(label);
        out << std::setw(14) << (it == counts.end() ? 0 : it->second);
      }
      out << '\n';
    }
  }
  return failures == 0 ? kExitOk : kExitItemFailures;
}

int cmd_run(const ExperimentConfig& config, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
  require_dataset(config);
  const ExperimentResult result = run_experiment(config);
  const std::filesystem::path dir = out_dir.empty() ? config.output_dir : std::filesystem::path(out_dir);
  write_artifacts(result, dir);
  out << "config " << result.config_hash << ", artifacts in " << dir.string() << "\n\n";
  out << render_text(result.table3);
  const auto failures = result.failures();
  for (const auto& f : failures) err << "FAILED " << f << '\n';
  return failures.empty() ? kExitOk : kExitItemFailures;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Movelet activity recognition from accelerometer and gyroscope data", "movelet"};
  app.require_subcommand(1, 1);

  CommonOptions common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "experiment config file");
    sub->add_option("--set", common.overrides, "override a config key (key=value)");
  };

  auto* validate = app.add_subcommand("validate", "check every input file and print label counts");
  add_common(validate);

  int participant = 0;
  std::string mode_text;
  std::string out_path;
  auto* build = app.add_subcommand("build-dict", "build one participant's dictionary as JSON");
  add_common(build);
  build->add_option("-p,--participant", participant)->required();
  build->add_option("-m,--mode", mode_text)->required();
  build->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  int step = 0;
  std::string dict_path;
  auto* classify = app.add_subcommand("classify", "classify one test step into a timeline JSON");
  add_common(classify);
  classify->add_option("-p,--participant", participant)->required();
  classify->add_option("-s,--step", step)->required();
  classify->add_option("-m,--mode", mode_text)->required();
  classify->add_option("-d,--dict", dict_path, "dictionary JSON (built from training data when omitted)");
  classify->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  std::vector<std::string> timeline_paths;
  auto* evaluate = app.add_subcommand("evaluate", "confusion matrix and group accuracies of timelines");
  evaluate->add_option("timelines", timeline_paths, "timeline JSON files")->required();
  evaluate->add_option("-o,--out", out_path, "write the confusion matrix JSON here");

  std::string participants_text;
  std::string modes_text;
  auto* run_cmd = app.add_subcommand("run", "run every configured analysis and write artifacts");
  add_common(run_cmd);
  run_cmd->add_option("--participants", participants_text, "comma list overriding the config");
  run_cmd->add_option("--modes", modes_text, "comma list overriding the config");
  run_cmd->add_option("-o,--out", out_path, "output directory overriding the config");

  std::string format = "tsv";
  std::string timeline_path;
  auto* export_cmd = app.add_subcommand("export-timeline", "plot-ready rows of a timeline artifact");
  export_cmd->add_option("timeline", timeline_path, "timeline JSON file")->required();
  export_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"tsv", "json"}));
  export_cmd->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  std::vector<std::string> argv_storage{"movelet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(resolve_config(common), out);

    if (build->parsed()) {
      const auto config = resolve_config(common);
      require_dataset(config);
      const Mode mode = mode_or_throw(mode_text);
      const auto training = load_training(config, participant, mode != Mode::AccelOnly);
      const auto dict = build_dictionary(training, mode, {config.window, config.training_seconds},
                                         participant_name(participant));
      auto j = dictionary_to_json(dict);
      j["config_hash"] = config.hash();
      j["mode"] = to_string(mode);
      emit(out_path, j.dump(2) + "\n", out);
      return kExitOk;
    }

    if (classify->parsed()) {
      const auto config = resolve_config(common);
      require_dataset(config);
      const Mode mode = mode_or_throw(mode_text);
      const bool with_gyro = mode != Mode::AccelOnly;
      const Dictionary dict =
          dict_path.empty()
              ? build_dictionary(load_training(config, participant, with_gyro), mode,
                                 {config.window, config.training_seconds},
                                 participant_name(participant))
              : dictionary_from_json(read_json_file(dict_path));
      const auto st = load_step(config, participant, step, with_gyro);
      const auto timeline = classify_series(st, dict, mode, config.classifier_params());
      emit(out_path,
           timeline_artifact(timeline, config.hash(), participant, mode, step).dump(2) + "\n", out);
      return kExitOk;
    }

    if (evaluate->parsed()) {
      std::vector<ClassifiedTimeline> timelines;
      for (const auto& p : timeline_paths) timelines.push_back(timeline_from_json(read_json_file(p)));
      const ConfusionMatrix cm = confusion_matrix(timelines);
      out << render_text(cm);
      auto j = to_json(cm);
      nlohmann::json groups = nlohmann::json::object();
      for (const auto& g : standard_groups()) {
        try {
          const double acc = group_average_accuracy(cm, g);
          groups[std::string(g.name)] = acc;
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.1f", acc);
          out << g.name << " average accuracy: " << buf << '\n';
        } catch (const Error&) {
          out << g.name << " average accuracy: n/a (activity missing)\n";
        }
      }
      j["group_accuracy"] = groups;
      if (!out_path.empty()) write_json_file(out_path, j);
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      if (!participants_text.empty()) common.overrides.push_back("participants=" + participants_text);
      if (!modes_text.empty()) common.overrides.push_back("modes=" + modes_text);
      return cmd_run(resolve_config(common), out_path, out, err);
    }

    if (export_cmd->parsed()) {
      const auto timeline = timeline_from_json(read_json_file(timeline_path));
      emit(out_path,
           format == "json" ? timeline_to_json(timeline).dump(2) + "\n" : timeline_to_tsv(timeline),
           out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::DatasetMissing;
    return usage ? kExitUsage : kExitItemFailures;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitItemFailures;
  }
  return kExitUsage;
}

}  // namespace movelet::cli

// Acceptance checks, one result line per criterion. Criterion 6 needs the
// published recordings: set MOVELET_DATASET_ROOT (and optionally
// MOVELET_DATASET_CONFIG for a config file describing their layout).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "movelet/classify.hpp"
#include "movelet/config.hpp"
#include "movelet/evaluate.hpp"
#include "movelet/movelets.hpp"
#include "movelet/pipeline.hpp"
#include "movelet/sync.hpp"
#include "support/oracle.hpp"
#include "support/synthetic.hpp"

using namespace movelet;
using A = ActivityLabel;

namespace {

struct Outcome {
  enum { Pass, Fail, Skip } status;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1 ---------------------------------------------------------------------

Outcome improvement_regression() {
  struct Row {
    double accel, gyro, joint, reported;
  };
  const Row rows[] = {{78.9, 80.5, 88.9, 10.4}, {68.7, 62.4, 80.2, 16.7},
                      {71.3, 74.6, 78.1, 4.7}, {68.4, 67.8, 73.7, 7.7}};
  std::string detail;
  bool ok = true;
  for (const auto& r : rows) {
    const double v = percent_improvement(r.joint, r.accel, r.gyro);
    ok = ok && std::abs(v - r.reported) <= 0.05;
    detail += fmt("%.2f/%.1f ", v, r.reported);
  }
  return ok ? pass(detail) : fail(detail);
}

// ---- 2 ---------------------------------------------------------------------

Outcome movelet_count_law() {
  std::mt19937_64 rng(2);
  const auto r = testing::make_recording(testing::training_plan(), rng);
  const TrainingData training{attach_labels(r.accel, r.intervals), attach_labels(r.gyro, r.intervals)};
  for (Mode mode : kAllModes) {
    const auto dict = build_dictionary(training, mode);
    for (A a : {A::Walk, A::Stand, A::StairUp, A::StairDown, A::Sit}) {
      if (dict.entry(a).size() != 41) {
        return fail(fmt("%s entry of %s mode has %zu movelets", std::string(to_string(a)).c_str(),
                        std::string(to_string(mode)).c_str(), dict.entry(a).size()));
      }
    }
  }
  std::uniform_int_distribution<std::size_t> len(1, 300), win(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = win(rng), t = std::max(n, len(rng));
    ChannelMatrix m;
    m.channels.assign(3, std::vector<double>(t, 0.0));
    for (std::size_t i = 0; i < t; ++i) m.timestamps.push_back(0.1 * static_cast<double>(i));
    if (extract_movelets(m, n).size() != t - n + 1) return fail(fmt("T=%zu n=%zu", t, n));
  }
  return pass("41 per 5 s entry in all modes; T - n + 1 over 500 random (T, n)");
}

// ---- 3 ---------------------------------------------------------------------

oracle::Channels channels_of(const TriaxialSeries& s) {
  oracle::Channels c(3);
  for (const auto& x : s.samples) {
    c[0].push_back(x.x);
    c[1].push_back(x.y);
    c[2].push_back(x.z);
  }
  return c;
}

struct Fixture {
  std::mt19937_64& rng;
  bool quantized;

  double value() {
    if (quantized) return std::uniform_int_distribution<int>(0, 2)(rng) * 0.5;
    return std::normal_distribution<double>(0.0, 1.0)(rng);
  }

  TriaxialSeries series(SensorKind kind, std::size_t n, double offset) {
    std::uniform_real_distribution<double> jitter(-0.02, 0.02);
    TriaxialSeries s;
    s.kind = kind;
    for (std::size_t i = 0; i < n; ++i) {
      s.samples.push_back({offset + 0.1 * static_cast<double>(i) + jitter(rng), value(), value(), value()});
    }
    return s;
  }
};

// Expected predictions for one fixture, computed without library code.
std::vector<int> reference_labels(const StudyStep& step, const std::vector<oracle::Reference>& refs,
                                  Mode mode) {
  switch (mode) {
    case Mode::AccelOnly: return oracle::classify(channels_of(step.accel), refs, 10, 10);
    case Mode::GyroOnly: {
      const auto native = oracle::classify(channels_of(*step.gyro), refs, 10, 10);
      const auto gts = step.gyro->timestamps();
      std::vector<int> out;
      for (const auto& s : step.accel.samples) out.push_back(native[oracle::nearest(gts, s.t)]);
      return out;
    }
    case Mode::Joint: {
      const auto gts = step.gyro->timestamps();
      const auto gc = channels_of(*step.gyro);
      const auto ac = channels_of(step.accel);
      oracle::Channels synced(6);
      std::size_t head = 0, tail = 0;
      for (std::size_t i = 0; i < step.accel.size(); ++i) {
        const double t = step.accel.samples[i].t;
        if (t < gts.front()) {
          ++head;
          continue;
        }
        if (t > gts.back()) {
          ++tail;
          continue;
        }
        for (std::size_t c = 0; c < 3; ++c) {
          synced[c].push_back(ac[c][i]);
          synced[c + 3].push_back(oracle::interpolate(gts, gc[c], t));
        }
      }
      const auto inner = oracle::classify(synced, refs, 10, 10);
      std::vector<int> out(head, inner.front());
      out.insert(out.end(), inner.begin(), inner.end());
      out.insert(out.end(), tail, inner.back());
      return out;
    }
  }
  return {};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(3);
  std::size_t fixtures = 0, samples = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const Mode mode = kAllModes[static_cast<std::size_t>(trial) % 3];
    Fixture fx{rng, trial % 2 == 0};
    const std::size_t c = channels_for(mode);

    std::vector<oracle::Reference> refs;
    Dictionary::Entries entries;
    std::size_t movelets = 0;
    std::vector<A> activities(kDictionaryActivities.begin(), kDictionaryActivities.end());
    std::shuffle(activities.begin(), activities.end(), rng);
    activities.resize(std::uniform_int_distribution<std::size_t>(1, 7)(rng));
    for (A a : activities) {
      const std::size_t len = std::uniform_int_distribution<std::size_t>(10, 23)(rng);
      if (movelets + len - 9 > 100) break;
      movelets += len - 9;
      oracle::Channels data(c);
      ChannelMatrix m;
      for (std::size_t i = 0; i < len; ++i) m.timestamps.push_back(0.1 * static_cast<double>(i));
      for (auto& ch : data) {
        for (std::size_t i = 0; i < len; ++i) ch.push_back(fx.value());
      }
      m.channels = data;
      entries[a] = extract_movelets(m, 10);
      refs.push_back({static_cast<int>(a), data});
    }
    const Dictionary dict("fixture", c, std::move(entries));

    StudyStep step;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(20, 100)(rng);
    step.accel = fx.series(SensorKind::Accelerometer, n, 0.0);
    if (mode != Mode::AccelOnly) {
      const std::size_t gn = std::uniform_int_distribution<std::size_t>(12, 100)(rng);
      const double offset = mode == Mode::Joint ? std::uniform_real_distribution<double>(-0.5, 0.3)(rng)
                                                : std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
      step.gyro = fx.series(SensorKind::Gyroscope, gn, offset);
    }
    step.intervals = {{0.0, 2.0, A::Walk}};

    const auto expected = reference_labels(step, refs, mode);
    const auto got = classify_series(step, dict, mode);
    if (got.size() != expected.size()) return fail(fmt("fixture %d: length differs", trial));
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (static_cast<int>(got.entries()[i].predicted) != expected[i]) {
        return fail(fmt("fixture %d (%s), sample %zu differs", trial,
                        std::string(to_string(mode)).c_str(), i));
      }
    }
    ++fixtures;
    samples += expected.size();
  }
  return pass(fmt("%zu fixtures, %zu samples identical across accel/gyro/joint", fixtures, samples));
}

// ---- 4 ---------------------------------------------------------------------

Movelet random_movelet(std::mt19937_64& rng, std::size_t c, bool coarse) {
  std::normal_distribution<double> v(0.0, 1.0);
  std::uniform_int_distribution<int> q(-1, 1);
  std::vector<double> values(c * 10);
  for (auto& x : values) x = coarse ? q(rng) : v(rng);
  std::vector<double> ts(10);
  for (std::size_t i = 0; i < 10; ++i) ts[i] = 0.1 * static_cast<double>(i);
  return Movelet(0, c, 10, std::move(values), std::move(ts));
}

Movelet half(const Movelet& m, std::size_t from) {
  std::vector<double> values;
  for (std::size_t c = from; c < from + 3; ++c) {
    values.insert(values.end(), m.channel(c).begin(), m.channel(c).end());
  }
  return Movelet(m.start_index(), 3, 10, std::move(values), m.timestamps());
}

Outcome metric_properties() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const bool coarse = trial % 4 == 0;
    const auto a = random_movelet(rng, 6, coarse);
    const auto b = trial % 10 == 0 ? a : random_movelet(rng, 6, coarse);
    const double ab = discrepancy(a, b).value, ba = discrepancy(b, a).value;
    if (ab != ba) return fail(fmt("asymmetric on pair %d", trial));
    if (ab < 0.0) return fail(fmt("negative on pair %d", trial));
    if ((ab == 0.0) != a.same_values(b)) return fail(fmt("zero-iff-equal broken on pair %d", trial));
    const double accel = discrepancy(half(a, 0), half(b, 0)).value;
    const double gyro = discrepancy(half(a, 3), half(b, 3)).value;
    worst = std::max(worst, std::abs(ab - 0.5 * (accel + gyro)));
  }
  if (worst > 1e-12) return fail(fmt("decomposition error %.3g", worst));
  return pass(fmt("10000 pairs; worst decomposition error %.3g", worst));
}

// ---- 5 ---------------------------------------------------------------------

Outcome interpolation_identities() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.01, 0.3), val(-5.0, 5.0);
  double ramp_error = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    TriaxialSeries s;
    s.kind = SensorKind::Gyroscope;
    double t = val(rng);
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 50);
    const double slope = val(rng), intercept = val(rng);
    for (std::size_t i = 0; i < n; ++i, t += step(rng)) {
      s.samples.push_back({t, val(rng), slope * t + intercept, val(rng)});
    }
    const auto ts = s.timestamps();
    const auto exact = linear_interpolate(s, ts);
    for (std::size_t i = 0; i < n; ++i) {
      if (exact[0][i] != s.samples[i].x || exact[1][i] != s.samples[i].y ||
          exact[2][i] != s.samples[i].z) {
        return fail(fmt("source timestamp %zu not returned exactly", i));
      }
    }
    std::vector<double> targets;
    std::uniform_real_distribution<double> inside(ts.front(), ts.back());
    for (int k = 0; k < 50; ++k) targets.push_back(inside(rng));
    std::sort(targets.begin(), targets.end());
    const auto v = linear_interpolate(s, targets);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      ramp_error = std::max(ramp_error, std::abs(v[1][k] - (slope * targets[k] + intercept)) /
                                            std::max(1.0, std::abs(slope * targets[k] + intercept)));
      const auto hi = std::upper_bound(ts.begin(), ts.end(), targets[k]);
      const std::size_t j = static_cast<std::size_t>(hi - ts.begin());
      if (j == 0 || j > n) return fail("target outside source span");
      const auto& lo = s.samples[j - 1];
      const auto& up = j < n ? s.samples[j] : lo;
      if (v[0][k] < std::min(lo.x, up.x) || v[0][k] > std::max(lo.x, up.x) ||
          v[2][k] < std::min(lo.z, up.z) || v[2][k] > std::max(lo.z, up.z)) {
        return fail(fmt("overshoot at t=%.6f", targets[k]));
      }
    }
  }
  if (ramp_error >= 1e-12) return fail(fmt("ramp error %.3g", ramp_error));
  return pass(fmt("exact at sources, ramp error %.3g, no overshoot on 200 random grids", ramp_error));
}

// ---- 6 ---------------------------------------------------------------------

const std::map<int, std::map<A, std::size_t>> kLabelCounts = {
    {1, {{A::Walk, 3288}, {A::Stand, 201}, {A::StairUp, 321}, {A::StairDown, 404}, {A::Sit, 291},
         {A::SitToStand, 21}, {A::StandToSit, 20}, {A::OutOfDictionary, 50}}},
    {2, {{A::Walk, 3135}, {A::Stand, 150}, {A::StairUp, 302}, {A::StairDown, 274}, {A::Sit, 232},
         {A::SitToStand, 20}, {A::StandToSit, 20}, {A::OutOfDictionary, 31}}},
    {3, {{A::Walk, 3287}, {A::Stand, 240}, {A::StairUp, 361}, {A::StairDown, 324}, {A::Sit, 242},
         {A::SitToStand, 20}, {A::StandToSit, 20}, {A::OutOfDictionary, 20}}},
    {4, {{A::Walk, 3246}, {A::Stand, 203}, {A::StairUp, 342}, {A::StairDown, 302}, {A::Sit, 251},
         {A::SitToStand, 20}, {A::StandToSit, 20}, {A::OutOfDictionary, 30}}},
};

// group -> participant -> {accel, gyro, joint}
const std::map<std::string, std::map<int, std::array<double, 3>>> kGroupAccuracy = {
    {"all", {{1, {78.9, 80.5, 88.9}}, {2, {68.7, 62.4, 80.2}}, {3, {71.3, 74.6, 78.1}}, {4, {68.4, 67.8, 73.7}}}},
    {"vigorous", {{1, {81.4, 92.1, 89.4}}, {2, {67.1, 82.6, 82.8}}, {3, {89.8, 87.4, 87.9}}, {4, {79.2, 87.7, 89.2}}}},
    {"stationary", {{1, {98.1, 53.2, 96.5}}, {2, {97.2, 47.0, 96.4}}, {3, {94.8, 74.9, 96.5}}, {4, {90.6, 63.4, 89.0}}}},
    {"transition", {{1, {56.0, 90.2, 80.5}}, {2, {42.5, 47.5, 60.0}}, {3, {20.0, 55.0, 45.0}}, {4, {30.0, 42.5, 35.0}}}},
};

Outcome dataset_reproduction() {
  const char* root = std::getenv("MOVELET_DATASET_ROOT");
  if (!root || !*root) return {Outcome::Skip, "MOVELET_DATASET_ROOT not set"};
  ExperimentConfig config;
  if (const char* path = std::getenv("MOVELET_DATASET_CONFIG"); path && *path) config = load_config(path);
  config.dataset_root = root;
  config.participants = {1, 2, 3, 4};
  config.steps = {1, 2, 3, 5, 6};
  config.modes = {Mode::AccelOnly, Mode::GyroOnly, Mode::Joint};
  config.validate();

  std::vector<std::string> problems;
  const auto counts = label_count_table(config);
  for (const auto& [p, expected] : kLabelCounts) {
    for (const auto& [label, n] : expected) {
      const auto& got = counts.at(p);
      const auto it = got.find(label);
      const std::size_t have = it == got.end() ? 0 : it->second;
      if (have != n) {
        problems.push_back(fmt("P%d %s count %zu != %zu", p, std::string(to_string(label)).c_str(), have, n));
      }
    }
  }

  const auto result = run_experiment(config);
  for (const auto& f : result.failures()) problems.push_back(f);
  double worst = 0.0;
  std::map<std::pair<std::string, int>, std::array<double, 3>> got;
  for (const auto& p : result.participants) {
    for (std::size_t m = 0; m < p.modes.size(); ++m) {
      for (const auto& [group, acc] : p.modes[m].group_accuracy) got[{group, p.participant}][m] = acc;
    }
  }
  for (const auto& [group, rows] : kGroupAccuracy) {
    for (const auto& [p, expected] : rows) {
      const auto it = got.find({group, p});
      if (it == got.end()) {
        problems.push_back(fmt("P%d %s missing", p, group.c_str()));
        continue;
      }
      for (std::size_t m = 0; m < 3; ++m) {
        const double d = std::abs(it->second[m] - expected[m]);
        worst = std::max(worst, d);
        if (d > 2.0) {
          problems.push_back(fmt("P%d %s %s %.1f vs %.1f", p, group.c_str(),
                                 std::string(to_string(kAllModes[m])).c_str(), it->second[m], expected[m]));
        }
      }
    }
  }
  for (int p = 1; p <= 4; ++p) {
    const auto all = got[{"all", p}];
    if (all[2] < all[0] || all[2] < all[1]) problems.push_back(fmt("P%d joint below a single sensor on all", p));
    const auto st = got[{"stationary", p}];
    if (!(st[1] < st[0] && st[1] < st[2])) problems.push_back(fmt("P%d gyro stationary not lowest", p));
  }
  if (!problems.empty()) {
    std::string detail = fmt("%zu problems, worst cell gap %.1f: ", problems.size(), worst);
    for (std::size_t i = 0; i < problems.size() && i < 8; ++i) detail += problems[i] + "; ";
    return fail(detail);
  }
  return pass(fmt("label counts exact, worst cell gap %.1f", worst));
}

// ---- 7 ---------------------------------------------------------------------

Outcome self_classification() {
  std::mt19937_64 rng(7);
  const auto r = testing::make_recording(testing::training_plan(), rng);
  const TrainingData training{attach_labels(r.accel, r.intervals), attach_labels(r.gyro, r.intervals)};
  double worst = 100.0;
  std::string where;
  for (Mode mode : kAllModes) {
    const auto dict = build_dictionary(training, mode);
    for (A a : kDictionaryActivities) {
      const auto accel = extract_training_segment(training.accel, a, 5.0);
      ChannelMatrix segment;
      switch (mode) {
        case Mode::AccelOnly: segment = to_channels(accel); break;
        case Mode::GyroOnly: segment = to_channels(extract_training_segment(*training.gyro, a, 5.0)); break;
        case Mode::Joint: segment = synchronize(accel, training.gyro->series).series.to_channels(); break;
      }
      const auto labels = label_samples(segment, dict);
      const std::size_t interior = labels.size() - 9;
      const auto hits = std::count(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(interior), a);
      const double acc = 100.0 * static_cast<double>(hits) / static_cast<double>(interior);
      if (where.empty() || acc < worst) {
        worst = acc;
        where = std::string(to_string(mode)) + "/" + std::string(to_string(a));
      }
    }
  }
  const std::string detail = fmt("lowest interior accuracy %.1f%% (%s)", worst, where.c_str());
  return worst >= 90.0 ? pass(detail) : fail(detail);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 percent-improvement regression", improvement_regression},
      {"2 movelet count law", movelet_count_law},
      {"3 oracle equivalence", oracle_equivalence},
      {"4 discrepancy properties", metric_properties},
      {"5 interpolation identities", interpolation_identities},
      {"6 dataset reproduction", dataset_reproduction},
      {"7 self-classification", self_classification},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] %s: %s\n", tag, name, o.detail.c_str());
    failed += o.status == Outcome::Fail;
  }
  return failed == 0 ? 0 : 1;
}

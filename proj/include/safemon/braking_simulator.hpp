#pragma once

// Deterministic 1D pedestrian emergency-braking scenario.
//
// A car drives at constant speed; a static pedestrian appears ahead of it at
// a fixed step. The braking policy stops the car when a detection lies in the
// safety-critical region in front of it. In the monitored variant the contrast
// rule also brakes, and a detection without a recent track is flagged and
// ignored. Kinematics are integer (millimetres per step).
//
// Randomness: each scenario seed is expanded with SplitMix64 into a detector
// stream seed for std::mt19937_64, whose output sequence is fixed by the C++
// standard. Every step draws exactly two uniforms (miss, ghost) from the top
// 53 bits of one engine output each, so the f and f_with_monitor variants see
// identical detector noise step for step.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "safemon/errors.hpp"
#include "safemon/records.hpp"
#include "safemon/trace_model.hpp"

namespace safemon::sim {

enum class PerturbationKind {
  smoke,
  sun_flare,
  rain,
  row_add_logic,
  shifted_pixel,
  coarse_dropout,
  grid_dropout,
  channel_shuffle,
  channel_dropout,
  contrast,
  brightness,
  gaussian_noise,
};

inline constexpr std::array<std::string_view, 12> kPerturbationNames{
    "smoke",         "sun_flare",      "rain",         "row_add_logic",
    "shifted_pixel", "coarse_dropout", "grid_dropout", "channel_shuffle",
    "channel_dropout", "contrast",     "brightness",   "gaussian_noise",
};

inline std::string_view perturbation_name(PerturbationKind k) {
  return kPerturbationNames[static_cast<std::size_t>(k)];
}

inline std::optional<PerturbationKind> parse_perturbation(std::string_view name) {
  for (std::size_t i = 0; i < kPerturbationNames.size(); ++i)
    if (kPerturbationNames[i] == name) return static_cast<PerturbationKind>(i);
  return std::nullopt;
}

struct PerturbationProfile {
  PerturbationKind kind = PerturbationKind::smoke;
  double intensity = 0.0;  // 0 means unperturbed
  std::int64_t onset_step = 0;

  bool active_at(std::int64_t t) const { return intensity > 0.0 && t >= onset_step; }

  bool operator==(const PerturbationProfile&) const = default;
};

struct ScenarioConfig {
  std::string scenario_id = "scenario";
  std::int64_t episode_length = 220;
  std::int64_t car_speed = 100;  // mm per step
  std::int64_t pedestrian_appear_step = 100;
  std::int64_t pedestrian_position = 12000;  // mm from the car's start
  std::int64_t critical_region_length = 1500;
  PerturbationProfile perturbation;
  std::uint64_t seed = 0;

  void validate() const {
    auto fail = [&](const std::string& what) {
      throw InvalidInput("scenario " + scenario_id + ": " + what);
    };
    if (scenario_id.empty()) throw InvalidInput("scenario_id must not be empty");
    if (episode_length <= 0) fail("episode_length must be positive");
    if (pedestrian_appear_step < 0 || pedestrian_appear_step >= episode_length)
      fail("pedestrian_appear_step must lie in [0, episode_length)");
    if (car_speed <= 0 || pedestrian_position <= 0 || critical_region_length <= 0)
      fail("distances must be positive");
    // A region shorter than one step would let the pedestrian be reached unseen.
    if (critical_region_length < car_speed) fail("critical_region_length must be >= car_speed");
    if (pedestrian_position <= car_speed * pedestrian_appear_step)
      fail("pedestrian must appear ahead of the car");
    if (!(std::isfinite(perturbation.intensity) && perturbation.intensity >= 0.0 &&
          perturbation.intensity <= 1.0))
      fail("perturbation intensity must lie in [0, 1]");
    if (perturbation.onset_step < 0) fail("perturbation onset_step must be nonnegative");
  }

  bool operator==(const ScenarioConfig&) const = default;
};

/// Monotone piecewise-linear map from [0, 1] to [0, 1], clamped at both ends.
class PiecewiseLinear {
 public:
  PiecewiseLinear() : knots_{{0.0, 0.0}, {1.0, 1.0}} {}
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    validate();
  }

  double operator()(double x) const {
    if (x <= knots_.front().first) return knots_.front().second;
    if (x >= knots_.back().first) return knots_.back().second;
    auto hi = std::ranges::upper_bound(knots_, x, {}, &std::pair<double, double>::first);
    auto lo = std::prev(hi);
    const double frac = (x - lo->first) / (hi->first - lo->first);
    return lo->second + frac * (hi->second - lo->second);
  }

  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  void validate() const {
    if (knots_.empty()) throw InvalidInput("miss-rate curve needs at least one knot");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      const auto [x, y] = knots_[i];
      if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw InvalidInput("miss-rate curve knots must lie in [0, 1] x [0, 1]");
      if (i > 0 && !(x > knots_[i - 1].first))
        throw InvalidInput("miss-rate curve knots must have increasing intensity");
      if (i > 0 && y < knots_[i - 1].second)
        throw InvalidInput("miss-rate curve must be nondecreasing");
    }
  }

  bool operator==(const PiecewiseLinear&) const = default;

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Stand-in for the perception model's behaviour under perturbation.
struct DetectorModel {
  double base_miss_rate = 0.0;
  double ghost_rate = 0.0;  // per-step chance of a spurious detection in the critical region
  PiecewiseLinear default_curve;
  std::map<PerturbationKind, PiecewiseLinear> curves;  // per-kind overrides of default_curve

  double miss_rate(const PerturbationProfile& p, std::int64_t t) const {
    if (!p.active_at(t)) return base_miss_rate;
    auto it = curves.find(p.kind);
    const PiecewiseLinear& curve = it == curves.end() ? default_curve : it->second;
    return std::max(base_miss_rate, curve(p.intensity));
  }

  void validate() const {
    auto prob = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!prob(base_miss_rate)) throw InvalidInput("base_miss_rate must lie in [0, 1]");
    if (!prob(ghost_rate)) throw InvalidInput("ghost_rate must lie in [0, 1]");
    default_curve.validate();
    for (const auto& [_, c] : curves) c.validate();
  }

  bool operator==(const DetectorModel&) const = default;
};

/// Contrast rule (an alert brakes) plus a temporal plausibility check (a flagged
/// detection is dropped).
struct MonitorModel {
  double contrast_threshold = 0.5;
  std::int64_t plausibility_window = 3;

  void validate() const {
    if (!(std::isfinite(contrast_threshold) && contrast_threshold >= 0.0 && contrast_threshold <= 1.0))
      throw InvalidInput("contrast_threshold must lie in [0, 1]");
    if (plausibility_window < 1) throw InvalidInput("plausibility_window must be >= 1");
  }

  bool operator==(const MonitorModel&) const = default;
};

struct SuiteConfig {
  DetectorModel detector;
  MonitorModel monitor;
  std::vector<ScenarioConfig> scenarios;

  bool operator==(const SuiteConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream));
}

inline constexpr std::uint64_t kDetectorStream = 1;

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

inline EpisodeTrace run_episode(const ScenarioConfig& config, const DetectorModel& detector,
                                const MonitorModel& monitor, Variant variant) {
  config.validate();
  detector.validate();
  monitor.validate();

  EpisodeTrace trace;
  trace.scenario_id = config.scenario_id;
  trace.variant = variant;
  trace.frames.reserve(static_cast<std::size_t>(config.episode_length));

  UniformStream noise(derive_seed(config.seed, kDetectorStream));
  std::int64_t position = 0;
  std::int64_t last_detection = -1;
  bool ended = false;

  for (std::int64_t t = 0; t < config.episode_length; ++t) {
    FrameState fs;
    fs.t = t;
    const double u_miss = noise.next();
    const double u_ghost = noise.next();
    if (ended) {
      trace.frames.push_back(fs);
      continue;
    }

    const bool pedestrian_present = t >= config.pedestrian_appear_step;
    const std::int64_t gap = config.pedestrian_position - position;
    const bool in_view = pedestrian_present && gap > 0;
    const bool in_region = in_view && gap <= config.critical_region_length;

    // The pedestrian is tracked from the moment it appears; only detections
    // inside the critical region can trigger braking.
    bool seen = false;
    bool ghost = false;
    if (variant == Variant::f_star) {
      seen = in_view;
    } else {
      seen = in_view && !(u_miss < detector.miss_rate(config.perturbation, t));
      ghost = u_ghost < detector.ghost_rate;
    }
    bool detected = (seen && in_region) || ghost;

    bool alert = false;
    if (variant == Variant::f_with_monitor) {
      const auto& p = config.perturbation;
      alert = p.active_at(t) && p.intensity >= monitor.contrast_threshold;
      // A detection with no track in the previous window steps is a ghost: flag it and drop it.
      if (detected && (last_detection < 0 || t - last_detection > monitor.plausibility_window)) {
        fs.monitor_flag = true;
        detected = false;
      }
    }
    if (seen || ghost) last_detection = t;
    fs.monitor_flag = fs.monitor_flag || alert;

    if (detected || alert) {
      fs.braked = true;
      ended = true;
    } else {
      const std::int64_t next = position + config.car_speed;
      if (pedestrian_present && next >= config.pedestrian_position) {
        fs.collision = true;
        ended = true;
      } else {
        fs.running = true;
        position = next;
      }
    }
    trace.frames.push_back(fs);
  }
  validate(trace);
  return trace;
}

struct VariantCounts {
  std::size_t episodes = 0;
  std::size_t collisions = 0;
  std::size_t brakes = 0;
  std::int64_t running_frames = 0;

  bool operator==(const VariantCounts&) const = default;
};

struct SuiteSummary {
  VariantCounts f;
  VariantCounts f_with_monitor;
  VariantCounts f_star;

  bool operator==(const SuiteSummary&) const = default;
};

struct SuiteResult {
  std::vector<EpisodeTrace> f;
  std::vector<EpisodeTrace> f_with_monitor;
  std::vector<EpisodeTrace> f_star;
  SuiteSummary summary;
};

inline VariantCounts count(std::span<const EpisodeTrace> traces) {
  VariantCounts c;
  for (const auto& tr : traces) {
    ++c.episodes;
    for (const auto& fs : tr.frames) {
      c.collisions += fs.collision;
      c.brakes += fs.braked;
      c.running_frames += fs.running;
    }
  }
  return c;
}

inline SuiteResult run_suite(std::span<const ScenarioConfig> configs, const DetectorModel& detector,
                             const MonitorModel& monitor) {
  if (configs.empty()) throw InvalidInput("scenario suite is empty");
  SuiteResult out;
  for (const auto& cfg : configs) {
    out.f.push_back(run_episode(cfg, detector, monitor, Variant::f));
    out.f_with_monitor.push_back(run_episode(cfg, detector, monitor, Variant::f_with_monitor));
    out.f_star.push_back(run_episode(cfg, detector, monitor, Variant::f_star));
  }
  out.summary = {count(out.f), count(out.f_with_monitor), count(out.f_star)};
  return out;
}

inline SuiteResult run_suite(const SuiteConfig& suite) {
  return run_suite(suite.scenarios, suite.detector, suite.monitor);
}

/// Replaces every scenario seed with one derived from `master` and the scenario index.
inline void reseed(SuiteConfig& suite, std::uint64_t master) {
  for (std::size_t i = 0; i < suite.scenarios.size(); ++i)
    suite.scenarios[i].seed = derive_seed(master, i);
}

// ---------------------------------------------------------------------------
// Suite config (JSON)
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::ordered_json curve_to_json(const PiecewiseLinear& c) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [x, y] : c.knots()) arr.push_back({x, y});
  return arr;
}

inline PiecewiseLinear curve_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("miss-rate curve must be an array of [intensity, rate] pairs");
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
      throw InvalidInput("miss-rate curve knots must be [intensity, rate] pairs");
    knots.emplace_back(k[0].get<double>(), k[1].get<double>());
  }
  return PiecewiseLinear(std::move(knots));
}

template <typename T>
T value_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("suite config field \"") + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const SuiteConfig& suite) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  auto& det = j["detector"];
  det["base_miss_rate"] = suite.detector.base_miss_rate;
  det["ghost_rate"] = suite.detector.ghost_rate;
  det["intensity_to_miss_rate"]["default"] = detail::curve_to_json(suite.detector.default_curve);
  for (const auto& [kind, curve] : suite.detector.curves)
    det["intensity_to_miss_rate"][std::string(perturbation_name(kind))] = detail::curve_to_json(curve);
  j["monitor"]["contrast_threshold"] = suite.monitor.contrast_threshold;
  j["monitor"]["plausibility_window"] = suite.monitor.plausibility_window;
  j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& s : suite.scenarios) {
    nlohmann::ordered_json sj;
    sj["scenario_id"] = s.scenario_id;
    sj["episode_length"] = s.episode_length;
    sj["car_speed"] = s.car_speed;
    sj["pedestrian_appear_step"] = s.pedestrian_appear_step;
    sj["pedestrian_position"] = s.pedestrian_position;
    sj["critical_region_length"] = s.critical_region_length;
    sj["perturbation"]["kind"] = perturbation_name(s.perturbation.kind);
    sj["perturbation"]["intensity"] = s.perturbation.intensity;
    sj["perturbation"]["onset_step"] = s.perturbation.onset_step;
    sj["seed"] = s.seed;
    j["scenarios"].push_back(std::move(sj));
  }
  return j;
}

inline SuiteConfig suite_from_json(const nlohmann::json& j) {
  using detail::value_or;
  if (!j.is_object()) throw InvalidInput("suite config must be a JSON object");
  if (value_or<int>(j, "schema_version", kSchemaVersion) != kSchemaVersion)
    throw VersionError("unsupported suite config schema_version");
  SuiteConfig suite;
  if (j.contains("detector")) {
    const auto& d = j["detector"];
    suite.detector.base_miss_rate = value_or<double>(d, "base_miss_rate", 0.0);
    suite.detector.ghost_rate = value_or<double>(d, "ghost_rate", 0.0);
    if (d.contains("intensity_to_miss_rate")) {
      for (const auto& [key, curve] : d["intensity_to_miss_rate"].items()) {
        if (key == "default") {
          suite.detector.default_curve = detail::curve_from_json(curve);
          continue;
        }
        auto kind = parse_perturbation(key);
        if (!kind) throw InvalidInput("unknown perturbation kind \"" + key + "\"");
        suite.detector.curves[*kind] = detail::curve_from_json(curve);
      }
    }
  }
  if (j.contains("monitor")) {
    const auto& m = j["monitor"];
    suite.monitor.contrast_threshold = value_or<double>(m, "contrast_threshold", 0.5);
    suite.monitor.plausibility_window = value_or<std::int64_t>(m, "plausibility_window", 3);
  }
  if (!j.contains("scenarios") || !j["scenarios"].is_array())
    throw InvalidInput("suite config needs a \"scenarios\" array");
  std::size_t index = 0;
  for (const auto& sj : j["scenarios"]) {
    ScenarioConfig s;
    char fallback_id[32];
    std::snprintf(fallback_id, sizeof fallback_id, "s%03zu", index++);
    s.scenario_id = value_or<std::string>(sj, "scenario_id", fallback_id);
    s.episode_length = value_or<std::int64_t>(sj, "episode_length", s.episode_length);
    s.car_speed = value_or<std::int64_t>(sj, "car_speed", s.car_speed);
    s.pedestrian_appear_step = value_or<std::int64_t>(sj, "pedestrian_appear_step", s.pedestrian_appear_step);
    s.pedestrian_position = value_or<std::int64_t>(sj, "pedestrian_position", s.pedestrian_position);
    s.critical_region_length = value_or<std::int64_t>(sj, "critical_region_length", s.critical_region_length);
    s.seed = value_or<std::uint64_t>(sj, "seed", 0);
    if (sj.contains("perturbation")) {
      const auto& p = sj["perturbation"];
      const auto kind_name = value_or<std::string>(p, "kind", "smoke");
      auto kind = parse_perturbation(kind_name);
      if (!kind) throw InvalidInput("unknown perturbation kind \"" + kind_name + "\"");
      s.perturbation.kind = *kind;
      s.perturbation.intensity = value_or<double>(p, "intensity", 0.0);
      s.perturbation.onset_step = value_or<std::int64_t>(p, "onset_step", 0);
    }
    s.validate();
    suite.scenarios.push_back(std::move(s));
  }
  suite.detector.validate();
  suite.monitor.validate();
  return suite;
}

inline SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open suite config");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path.string(), std::string("malformed suite config: ") + e.what());
  }
  return suite_from_json(j);
}

inline void save_suite_config(const SuiteConfig& suite, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << to_json(suite).dump(2) << '\n';
  if (!out) throw IoError(path.string(), "write failed");
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 3> kTraceFileNames{
    "episodes_f.jsonl", "episodes_f_with_monitor.jsonl", "episodes_f_star.jsonl"};

inline nlohmann::ordered_json to_json(const SuiteSummary& s) {
  nlohmann::ordered_json j;
  auto put = [&](std::string_view name, const VariantCounts& c) {
    auto& v = j[std::string(name)];
    v["episodes"] = c.episodes;
    v["collisions"] = c.collisions;
    v["brakes"] = c.brakes;
    v["running_frames"] = c.running_frames;
  };
  put("f", s.f);
  put("f_with_monitor", s.f_with_monitor);
  put("f_star", s.f_star);
  return j;
}

/// Writes one trace file per variant plus summary.json into `out_dir`.
inline void write_suite(const SuiteResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string(), "cannot create output directory: " + ec.message());
  save_traces(RecordSet{result.f}, out_dir / kTraceFileNames[0]);
  save_traces(RecordSet{result.f_with_monitor}, out_dir / kTraceFileNames[1]);
  save_traces(RecordSet{result.f_star}, out_dir / kTraceFileNames[2]);
  const auto summary_path = out_dir / "summary.json";
  std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(summary_path.string(), "cannot open for writing");
  out << to_json(result.summary).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Built-in suites
// ---------------------------------------------------------------------------

/// 53 perturbed runs of the same scenario: five kinds at five intensity levels
/// and seven kinds at four. Eight runs end in an accident for the bare model
/// and the contrast rule catches the four at full intensity.
inline SuiteConfig default_suite() {
  SuiteConfig suite;
  suite.detector.base_miss_rate = 0.05;
  suite.detector.ghost_rate = 0.0;
  suite.detector.default_curve = PiecewiseLinear({{0.0, 0.0}, {1.0, 0.3}});
  const PiecewiseLinear severe({{0.0, 0.0}, {0.6, 0.1}, {0.8, 1.0}, {1.0, 1.0}});
  for (auto k : {PerturbationKind::smoke, PerturbationKind::sun_flare, PerturbationKind::rain,
                 PerturbationKind::shifted_pixel})
    suite.detector.curves[k] = severe;
  suite.monitor.contrast_threshold = 0.9;
  suite.monitor.plausibility_window = 3;

  std::size_t index = 0;
  for (std::size_t k = 0; k < kPerturbationNames.size(); ++k) {
    const std::vector<double> levels = k < 5 ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0}
                                             : std::vector<double>{0.25, 0.5, 0.75, 1.0};
    for (double level : levels) {
      ScenarioConfig s;
      char id[48];
      std::snprintf(id, sizeof id, "s%02zu_%s_%03d", index, kPerturbationNames[k].data(),
                    static_cast<int>(std::lround(level * 100)));
      s.scenario_id = id;
      s.perturbation = {static_cast<PerturbationKind>(k), level,
                        static_cast<std::int64_t>(10 + (index * 37) % 90)};
      s.seed = 1000 + index;
      suite.scenarios.push_back(std::move(s));
      ++index;
    }
  }
  return suite;
}

/// Noise-free 20-scenario suite: three accidents for the bare model, two of
/// them averted by the monitor, and three contrast false alarms.
inline SuiteConfig desk_suite() {
  SuiteConfig suite;
  suite.detector.base_miss_rate = 0.0;
  suite.detector.ghost_rate = 0.0;
  // Any perturbation at or above 0.35 blinds the detector, except brightness.
  suite.detector.default_curve = PiecewiseLinear({{0.0, 0.0}, {0.3, 0.0}, {0.35, 1.0}, {1.0, 1.0}});
  suite.detector.curves[PerturbationKind::brightness] = PiecewiseLinear({{0.0, 0.0}, {1.0, 0.0}});
  suite.monitor.contrast_threshold = 0.5;
  suite.monitor.plausibility_window = 3;

  using K = PerturbationKind;
  const std::vector<PerturbationProfile> profiles{
      {K::smoke, 1.0, 60},          // accident, averted at onset
      {K::grid_dropout, 0.9, 80},   // accident, averted at onset
      {K::sun_flare, 0.4, 50},      // accident, below the contrast threshold
      {K::brightness, 0.7, 30},     // false alarm
      {K::brightness, 0.8, 90},     // false alarm
      {K::brightness, 0.9, 150},    // alarm after the pedestrian brake
      {K::rain, 0.0, 0},
      {K::rain, 0.1, 40},
      {K::row_add_logic, 0.2, 20},
      {K::shifted_pixel, 0.3, 70},
      {K::coarse_dropout, 0.1, 10},
      {K::channel_shuffle, 0.2, 100},
      {K::channel_dropout, 0.3, 5},
      {K::contrast, 0.25, 60},
      {K::gaussian_noise, 0.15, 0},
      {K::smoke, 0.3, 110},
      {K::sun_flare, 0.2, 30},
      {K::grid_dropout, 0.05, 45},
      {K::gaussian_noise, 0.0, 0},
      {K::contrast, 0.1, 200},
  };
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    ScenarioConfig s;
    char id[32];
    std::snprintf(id, sizeof id, "d%02zu", i);
    s.scenario_id = id;
    s.perturbation = profiles[i];
    s.seed = 42 + i;
    suite.scenarios.push_back(std::move(s));
  }
  return suite;
}

}  // namespace safemon::sim

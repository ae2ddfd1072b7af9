#pragma once

// Scheme-specific evaluation records and their invariants.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "safemon/errors.hpp"

namespace safemon {

using CategoryId = std::int64_t;

/// Sentinel selection meaning "no candidate accepted, take the parachute fallback".
inline constexpr std::string_view kDefaultAction = "default";

/// Axis-aligned box in pixel coordinates. Ground-truth boxes carry score 1.
struct Box {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  CategoryId label = 0;
  double score = 1.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }

  bool operator==(const Box&) const = default;
};

struct ClassificationRecord {
  std::string example_id;
  CategoryId true_label = 0;
  CategoryId predicted_label = 0;
  bool monitor_flag = false;
  std::optional<bool> threat_flag;  // required by clf-threat only
  double weight = 1.0;

  bool operator==(const ClassificationRecord&) const = default;
};

struct DetectionFrameRecord {
  std::string frame_id;
  std::vector<Box> ground_truth;
  std::vector<Box> predictions;
  bool monitor_flag = false;
  double weight = 1.0;

  bool operator==(const DetectionFrameRecord&) const = default;
};

enum class Variant { f, f_with_monitor, f_star };

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::f: return "f";
    case Variant::f_with_monitor: return "f_with_monitor";
    case Variant::f_star: return "f_star";
  }
  return "unknown";
}

inline std::optional<Variant> parse_variant(std::string_view name) {
  for (auto v : {Variant::f, Variant::f_with_monitor, Variant::f_star})
    if (variant_name(v) == name) return v;
  return std::nullopt;
}

/// World state reached after the system acts on the observation of step t.
struct FrameState {
  std::int64_t t = 0;
  bool running = false;
  bool collision = false;
  bool monitor_flag = false;
  bool braked = false;

  bool operator==(const FrameState&) const = default;
};

struct EpisodeTrace {
  std::string scenario_id;
  Variant variant = Variant::f;
  std::vector<FrameState> frames;

  bool operator==(const EpisodeTrace&) const = default;
};

struct LandingCandidate {
  std::string candidate_id;
  bool has_forbidden_pixel = false;
  double mean_hazard = 0.0;  // ground-truth mean of h over the candidate's pixels
  bool monitor_flag = false;

  bool operator==(const LandingCandidate&) const = default;
};

struct LandingImageRecord {
  std::string image_id;
  std::vector<LandingCandidate> candidates;
  std::string selected_f{kDefaultAction};
  std::string selected_fm{kDefaultAction};
  std::string selected_fstar{kDefaultAction};
  double weight = 1.0;

  bool operator==(const LandingImageRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Validation. Each check throws ValidationError naming the offending field.
// ---------------------------------------------------------------------------

namespace detail {

inline void require(bool ok, const char* field, const std::string& what, std::size_t line) {
  if (!ok) throw ValidationError(field, what, line);
}

inline void validate_weight(double w, std::size_t line) {
  require(std::isfinite(w) && w >= 0.0, "weight", "must be finite and nonnegative", line);
}

}  // namespace detail

inline void validate(const Box& b, bool is_prediction, std::size_t line = 0) {
  using detail::require;
  require(std::isfinite(b.x_min) && std::isfinite(b.x_max) && b.x_min < b.x_max, "x_max",
          "box needs x_min < x_max", line);
  require(std::isfinite(b.y_min) && std::isfinite(b.y_max) && b.y_min < b.y_max, "y_max",
          "box needs y_min < y_max", line);
  require(std::isfinite(b.score) && b.score >= 0.0 && b.score <= 1.0, "score",
          "must lie in [0, 1]", line);
  if (!is_prediction) require(b.score == 1.0, "score", "ground-truth boxes carry score 1", line);
}

inline void validate(const ClassificationRecord& r, bool require_threat, std::size_t line = 0) {
  detail::validate_weight(r.weight, line);
  if (require_threat)
    detail::require(r.threat_flag.has_value(), "threat_flag", "required by the threat scheme", line);
}

inline void validate(const DetectionFrameRecord& r, std::size_t line = 0) {
  detail::validate_weight(r.weight, line);
  for (const auto& b : r.ground_truth) validate(b, false, line);
  for (const auto& b : r.predictions) validate(b, true, line);
}

inline void validate(const EpisodeTrace& trace, std::size_t line = 0) {
  using detail::require;
  require(!trace.scenario_id.empty(), "scenario_id", "must not be empty", line);
  require(!trace.frames.empty(), "frames", "episode has no frames", line);
  require(trace.frames.front().t == 0, "t", "first frame must have t = 0", line);
  bool stopped = false;
  int collisions = 0;
  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    const auto& fs = trace.frames[i];
    if (i > 0) require(fs.t > trace.frames[i - 1].t, "t", "must be strictly increasing", line);
    require(!(stopped && fs.running), "running", "cannot resume after the episode ended", line);
    if (!fs.running) stopped = true;
    if (fs.collision) ++collisions;
  }
  require(collisions <= 1, "collision", "at most one collision frame per episode", line);
}

inline void validate(const LandingImageRecord& r, bool require_candidates, std::size_t line = 0) {
  using detail::require;
  detail::validate_weight(r.weight, line);
  if (require_candidates) require(!r.candidates.empty(), "candidates", "no candidates", line);
  std::set<std::string_view> ids;
  for (const auto& c : r.candidates) {
    require(!c.candidate_id.empty() && c.candidate_id != kDefaultAction, "candidate_id",
            "must be nonempty and differ from \"default\"", line);
    require(ids.insert(c.candidate_id).second, "candidate_id", "duplicate id " + c.candidate_id,
            line);
    require(std::isfinite(c.mean_hazard) && c.mean_hazard >= 0.0 && c.mean_hazard <= 1.0,
            "mean_hazard", "must lie in [0, 1]", line);
  }
  auto known = [&](const std::string& s) { return s == kDefaultAction || ids.contains(s); };
  require(known(r.selected_f), "selected_f", "unknown candidate " + r.selected_f, line);
  require(known(r.selected_fm), "selected_fm", "unknown candidate " + r.selected_fm, line);
  require(known(r.selected_fstar), "selected_fstar", "unknown candidate " + r.selected_fstar, line);
}

}  // namespace safemon

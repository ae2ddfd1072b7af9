#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "safemon/errors.hpp"

namespace safemon {

/// The return-function schemes the evaluator knows how to apply.
enum class Scheme { clf_error, clf_threat, det_error, episodic, landing_e1, landing_e2 };

inline constexpr std::array<std::pair<Scheme, std::string_view>, 6> kSchemeNames{{
    {Scheme::clf_error, "clf-error"},
    {Scheme::clf_threat, "clf-threat"},
    {Scheme::det_error, "det-error"},
    {Scheme::episodic, "episodic"},
    {Scheme::landing_e1, "landing-e1"},
    {Scheme::landing_e2, "landing-e2"},
}};

inline std::string_view scheme_name(Scheme s) {
  for (const auto& [scheme, name] : kSchemeNames)
    if (scheme == s) return name;
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
  for (const auto& [scheme, n] : kSchemeNames)
    if (n == name) return scheme;
  return std::nullopt;
}

/// Thresholds and constants the schemes leave configurable.
struct SchemeParams {
  double iou_threshold = 0.5;
  double score_threshold = 0.5;
  double kappa = 0.5;
  // Safety score of the parachute fallback in landing-e2. Unset means "same as kappa".
  std::optional<double> default_action_score;

  double effective_default_action_score() const { return default_action_score.value_or(kappa); }

  void validate() const {
    auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!(std::isfinite(iou_threshold) && iou_threshold > 0.0 && iou_threshold <= 1.0))
      throw InvalidInput("iou_threshold must lie in (0, 1]");
    if (!in_unit(score_threshold)) throw InvalidInput("score_threshold must lie in [0, 1]");
    if (!in_unit(kappa)) throw InvalidInput("kappa must lie in [0, 1]");
    if (default_action_score && !in_unit(*default_action_score))
      throw InvalidInput("default_action_score must lie in [0, 1]");
  }

  bool operator==(const SchemeParams&) const = default;
};

}  // namespace safemon

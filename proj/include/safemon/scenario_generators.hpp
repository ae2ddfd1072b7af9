#pragma once

// Exact-count synthetic record sets. No sampling: every generator places the
// requested number of each outcome, so aggregated metrics equal the count
// ratios to machine precision.

#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "safemon/errors.hpp"
#include "safemon/records.hpp"

namespace safemon::gen {

namespace detail {

inline std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%06zu", prefix, i);
  return buf;
}

inline constexpr CategoryId kCategories = 10;

}  // namespace detail

/// `n` classification records: the first `n_errors` are misclassified and the
/// first `n_true_alarms` of those are flagged; of the correct records, the
/// first `n_false_alarms` are flagged.
inline std::vector<ClassificationRecord> synth_classification(std::size_t n, std::size_t n_errors,
                                                              std::size_t n_true_alarms,
                                                              std::size_t n_false_alarms) {
  if (n_errors > n) throw InvalidInput("n_errors exceeds n");
  if (n_true_alarms > n_errors) throw InvalidInput("n_true_alarms exceeds n_errors");
  if (n_false_alarms > n - n_errors) throw InvalidInput("n_false_alarms exceeds the correct predictions");
  std::vector<ClassificationRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ClassificationRecord r;
    r.example_id = detail::numbered("ex", i);
    r.true_label = static_cast<CategoryId>(i % detail::kCategories);
    if (i < n_errors) {
      r.predicted_label = (r.true_label + 1) % detail::kCategories;
      r.monitor_flag = i < n_true_alarms;
    } else {
      r.predicted_label = r.true_label;
      r.monitor_flag = i - n_errors < n_false_alarms;
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Counts solving SG*n, RH*n, AC*n for the auto-encoder monitor under the
/// error-detection scheme (SG 0.184, RH 0.140, AC 0.304 on 1000 examples).
inline std::vector<ClassificationRecord> table1_reconstruction() {
  return synth_classification(1000, 324, 184, 304);
}

/// Threat-labelled records: `n_threats` carry threat_flag 1, `n_detected` of
/// them are flagged; `n_false_alarms` of the non-threats are flagged. The model
/// is always right, which the threat scheme ignores anyway.
inline std::vector<ClassificationRecord> synth_threat(std::size_t n, std::size_t n_threats,
                                                      std::size_t n_detected,
                                                      std::size_t n_false_alarms) {
  if (n_threats > n) throw InvalidInput("n_threats exceeds n");
  if (n_detected > n_threats) throw InvalidInput("n_detected exceeds n_threats");
  if (n_false_alarms > n - n_threats) throw InvalidInput("n_false_alarms exceeds the non-threats");
  std::vector<ClassificationRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ClassificationRecord r;
    r.example_id = detail::numbered("ex", i);
    r.true_label = static_cast<CategoryId>(i % detail::kCategories);
    r.predicted_label = r.true_label;
    const bool threat = i < n_threats;
    r.threat_flag = threat;
    r.monitor_flag = threat ? i < n_detected : i - n_threats < n_false_alarms;
    out.push_back(std::move(r));
  }
  return out;
}

/// 420 landing images of 10 forbidden candidates each, 3381 of the 4200
/// candidates flagged by the monitor: candidate-averaged SG 0.805, RH 0.195.
inline std::vector<LandingImageRecord> table3_e1_reconstruction() {
  constexpr std::size_t kImages = 420;
  constexpr std::size_t kCandidates = 10;
  constexpr std::size_t kNinesFlagged = 21;  // 21 images with 9 flagged, 399 with 8
  std::vector<LandingImageRecord> out;
  out.reserve(kImages);
  for (std::size_t i = 0; i < kImages; ++i) {
    LandingImageRecord img;
    img.image_id = detail::numbered("img", i);
    const std::size_t flagged = i < kNinesFlagged ? 9 : 8;
    for (std::size_t c = 0; c < kCandidates; ++c) {
      LandingCandidate cand;
      cand.candidate_id = "c" + std::to_string(c);
      cand.has_forbidden_pixel = true;
      cand.mean_hazard = 1.0;
      cand.monitor_flag = c < flagged;
      img.candidates.push_back(std::move(cand));
    }
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace safemon::gen

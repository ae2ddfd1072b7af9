#pragma once

// Per-scheme estimators of the safety and mission returns. Each function maps
// one evaluation record to a ReturnTriple consumed by core_metrics.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "safemon/core_metrics.hpp"
#include "safemon/errors.hpp"
#include "safemon/params.hpp"
#include "safemon/records.hpp"

namespace safemon {

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Error-detection scheme: a silent monitor on a wrong prediction costs safety,
/// an alert on a correct prediction costs mission.
inline ReturnTriple clf_error_returns(CategoryId true_label, CategoryId predicted_label,
                                      bool monitor_flag) {
  const bool wrong = predicted_label != true_label;
  auto safety = [&](bool flag) { return (wrong && !flag) ? 0.0 : 1.0; };
  auto mission = [&](bool flag) { return (!wrong && flag) ? 0.0 : 1.0; };
  ReturnTriple r;
  r.safety_f = safety(false);
  r.safety_fm = safety(monitor_flag);
  r.safety_fstar = 1.0;
  r.mission_f = mission(false);
  r.mission_fm = mission(monitor_flag);
  return r;
}

/// Threat-detection scheme: returns depend only on the threat label and the
/// monitor, never on the model's prediction.
inline ReturnTriple clf_threat_returns(bool threat_flag, bool monitor_flag) {
  auto safety = [&](bool flag) { return (threat_flag && !flag) ? 0.0 : 1.0; };
  auto mission = [&](bool flag) { return (!threat_flag && flag) ? 0.0 : 1.0; };
  ReturnTriple r;
  r.safety_f = safety(false);
  r.safety_fm = safety(monitor_flag);
  r.safety_fstar = 1.0;
  r.mission_f = mission(false);
  r.mission_fm = mission(monitor_flag);
  return r;
}

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

inline double iou(const Box& a, const Box& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

struct DetectionMatching {
  // (ground-truth index, prediction index); prediction indices refer to the
  // caller's sequence, including predictions dropped by the score filter.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t unmatched_ground_truth = 0;
  std::size_t unmatched_predictions = 0;
  bool augmented = false;  // greedy pass was extended by augmenting paths

  bool has_error() const { return unmatched_ground_truth > 0 || unmatched_predictions > 0; }
};

namespace detail {

// Kuhn augmenting path from ground-truth node g.
inline bool augment(std::size_t g, const std::vector<std::vector<std::size_t>>& adj,
                    std::vector<std::ptrdiff_t>& pred_owner, std::vector<char>& visited) {
  for (std::size_t p : adj[g]) {
    if (visited[p]) continue;
    visited[p] = 1;
    if (pred_owner[p] < 0 || augment(static_cast<std::size_t>(pred_owner[p]), adj, pred_owner, visited)) {
      pred_owner[p] = static_cast<std::ptrdiff_t>(g);
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// One-to-one matching of predictions to ground truth. A pair is admissible when
/// labels agree, the prediction clears score_threshold and IoU >= iou_threshold.
/// Pairs are taken greedily by descending IoU; if that leaves both sides with
/// unmatched boxes the matching is grown to maximum cardinality, since greedy
/// can miss a perfect matching that exists.
inline DetectionMatching match_detections(std::span<const Box> gt, std::span<const Box> pred,
                                          const SchemeParams& params) {
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < pred.size(); ++j)
    if (pred[j].score >= params.score_threshold) kept.push_back(j);

  struct Edge {
    double overlap;
    std::size_t g;
    std::size_t k;  // index into kept
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(gt.size());
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const Box& p = pred[kept[k]];
      if (p.label != gt[g].label) continue;
      const double o = iou(gt[g], p);
      if (o >= params.iou_threshold) {
        edges.push_back({o, g, k});
        adj[g].push_back(k);
      }
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.overlap > b.overlap; });

  std::vector<std::ptrdiff_t> owner(kept.size(), -1);
  std::vector<char> gt_matched(gt.size(), 0);
  std::size_t matched = 0;
  for (const auto& e : edges) {
    if (gt_matched[e.g] || owner[e.k] >= 0) continue;
    gt_matched[e.g] = 1;
    owner[e.k] = static_cast<std::ptrdiff_t>(e.g);
    ++matched;
  }

  DetectionMatching out;
  if (matched < gt.size() && matched < kept.size()) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (gt_matched[g]) continue;
      std::vector<char> visited(kept.size(), 0);
      if (detail::augment(g, adj, owner, visited)) {
        gt_matched[g] = 1;
        ++matched;
        out.augmented = true;
      }
    }
  }

  for (std::size_t k = 0; k < kept.size(); ++k)
    if (owner[k] >= 0) out.pairs.emplace_back(static_cast<std::size_t>(owner[k]), kept[k]);
  std::sort(out.pairs.begin(), out.pairs.end());
  out.unmatched_ground_truth = gt.size() - matched;
  out.unmatched_predictions = kept.size() - matched;
  return out;
}

/// 1 when the frame has a false positive or a false negative after matching.
inline bool detection_error_flag(std::span<const Box> gt, std::span<const Box> pred,
                                 const SchemeParams& params) {
  return match_detections(gt, pred, params).has_error();
}

inline ReturnTriple detection_returns(const DetectionFrameRecord& frame, const SchemeParams& params) {
  ReturnTriple r = clf_threat_returns(
      detection_error_flag(frame.ground_truth, frame.predictions, params), frame.monitor_flag);
  r.weight = frame.weight;
  return r;
}

// ---------------------------------------------------------------------------
// Episodic (braking scenario)
// ---------------------------------------------------------------------------

/// Mission return is the running-frame fraction of the episode; safety return
/// is minus the number of collision frames.
inline ReturnTriple episodic_returns(const EpisodeTrace& trace_f, const EpisodeTrace& trace_fm,
                                     const EpisodeTrace& trace_fstar) {
  if (trace_f.scenario_id != trace_fm.scenario_id || trace_f.scenario_id != trace_fstar.scenario_id)
    throw InvalidInput("episode traces belong to different scenarios: " + trace_f.scenario_id +
                       ", " + trace_fm.scenario_id + ", " + trace_fstar.scenario_id);
  if (trace_f.frames.size() != trace_fm.frames.size() ||
      trace_f.frames.size() != trace_fstar.frames.size())
    throw InvalidInput("episode traces of scenario " + trace_f.scenario_id + " differ in length");
  if (trace_f.frames.empty())
    throw InvalidInput("episode of scenario " + trace_f.scenario_id + " has no frames");
  if (trace_f.variant != Variant::f || trace_fm.variant != Variant::f_with_monitor ||
      trace_fstar.variant != Variant::f_star)
    throw InvalidInput("episode traces of scenario " + trace_f.scenario_id +
                       " are not ordered (f, f_with_monitor, f_star)");

  const double length = static_cast<double>(trace_f.frames.size());
  auto mission = [&](const EpisodeTrace& tr) {
    return static_cast<double>(std::ranges::count_if(tr.frames, &FrameState::running)) / length;
  };
  auto safety = [](const EpisodeTrace& tr) {
    return -static_cast<double>(std::ranges::count_if(tr.frames, &FrameState::collision));
  };
  if (safety(trace_fstar) != 0.0)
    throw InvalidInput("f_star trace of scenario " + trace_f.scenario_id + " contains a collision");

  ReturnTriple r;
  r.safety_f = safety(trace_f);
  r.safety_fm = safety(trace_fm);
  r.safety_fstar = 0.0;
  r.mission_f = mission(trace_f);
  r.mission_fm = mission(trace_fm);
  return r;
}

// ---------------------------------------------------------------------------
// Emergency landing
// ---------------------------------------------------------------------------

/// Forbidden candidates score 0; the rest score kappa + (1 - kappa)(1 - mean_hazard),
/// so no candidate ever lands in the open gap (0, kappa).
inline double landing_candidate_score(bool has_forbidden_pixel, double mean_hazard, double kappa) {
  if (has_forbidden_pixel) return 0.0;
  return kappa + (1.0 - kappa) * (1.0 - mean_hazard);
}

/// Candidate-level threat scheme averaged over the image. Mission returns are
/// fixed at 1 so availability cost is zero by construction.
inline ReturnTriple landing_e1_returns(std::span<const LandingCandidate> candidates) {
  if (candidates.empty()) throw InvalidInput("landing image has no candidates");
  double f = 0.0;
  double fm = 0.0;
  double fstar = 0.0;
  for (const auto& c : candidates) {
    const ReturnTriple r = clf_threat_returns(c.has_forbidden_pixel, c.monitor_flag);
    f += r.safety_f;
    fm += r.safety_fm;
    fstar += r.safety_fstar;
  }
  const double n = static_cast<double>(candidates.size());
  ReturnTriple r;
  r.safety_f = f / n;
  r.safety_fm = fm / n;
  r.safety_fstar = fstar / n;
  r.mission_f = 1.0;
  r.mission_fm = 1.0;
  return r;
}

/// Scores the landing zone each system actually selected.
inline ReturnTriple landing_e2_returns(std::span<const LandingCandidate> candidates,
                                       const std::string& selected_f, const std::string& selected_fm,
                                       const std::string& selected_fstar, const SchemeParams& params) {
  auto score_of = [&](const std::string& id) {
    if (id == kDefaultAction) return params.effective_default_action_score();
    auto it = std::ranges::find(candidates, id, &LandingCandidate::candidate_id);
    if (it == candidates.end()) throw InvalidInput("unknown landing candidate id: " + id);
    return landing_candidate_score(it->has_forbidden_pixel, it->mean_hazard, params.kappa);
  };
  ReturnTriple r;
  r.safety_f = score_of(selected_f);
  r.safety_fm = score_of(selected_fm);
  r.safety_fstar = score_of(selected_fstar);
  r.mission_f = 1.0;
  r.mission_fm = 1.0;
  return r;
}

inline ReturnTriple landing_e1_returns(const LandingImageRecord& image) {
  ReturnTriple r = landing_e1_returns(image.candidates);
  r.weight = image.weight;
  return r;
}

inline ReturnTriple landing_e2_returns(const LandingImageRecord& image, const SchemeParams& params) {
  ReturnTriple r = landing_e2_returns(image.candidates, image.selected_f, image.selected_fm,
                                      image.selected_fstar, params);
  r.weight = image.weight;
  return r;
}

}  // namespace safemon

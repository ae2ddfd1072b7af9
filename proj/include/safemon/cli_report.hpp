#pragma once

// End-to-end evaluation: trace files -> return triples -> metrics report.

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "safemon/core_metrics.hpp"
#include "safemon/errors.hpp"
#include "safemon/params.hpp"
#include "safemon/records.hpp"
#include "safemon/return_schemes.hpp"
#include "safemon/trace_model.hpp"

namespace safemon {

/// Raised when a finished report fails its own decomposition check.
class SelfCheckFailure : public Error {
 public:
  using Error::Error;
};

/// A report whose |SG + RH - hazard_f| exceeds this is rejected as an internal error.
inline constexpr double kSelfCheckTolerance = 1e-9;

struct EvaluateOptions {
  Scheme scheme = Scheme::clf_error;
  SchemeParams params;
  std::optional<double> normalize_safety;
  std::optional<double> normalize_mission;
  bool compensated = false;
};

namespace detail {

inline std::vector<ReturnTriple> episodic_triples(const std::vector<EpisodeTrace>& traces) {
  // Pair traces by scenario, in order of first appearance.
  std::vector<std::string> order;
  std::map<std::string, std::array<const EpisodeTrace*, 3>> by_scenario;
  for (const auto& tr : traces) {
    auto [it, inserted] = by_scenario.try_emplace(tr.scenario_id);
    if (inserted) {
      it->second.fill(nullptr);
      order.push_back(tr.scenario_id);
    }
    auto& slot = it->second[static_cast<std::size_t>(tr.variant)];
    if (slot)
      throw InvalidInput("scenario " + tr.scenario_id + " has more than one " +
                         std::string(variant_name(tr.variant)) + " trace");
    slot = &tr;
  }
  std::vector<ReturnTriple> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    const auto& slots = by_scenario.at(id);
    for (auto v : {Variant::f, Variant::f_with_monitor, Variant::f_star})
      if (!slots[static_cast<std::size_t>(v)])
        throw InvalidInput("scenario " + id + " lacks a " + std::string(variant_name(v)) + " trace");
    out.push_back(episodic_returns(*slots[0], *slots[1], *slots[2]));
  }
  return out;
}

inline void expect_family(const RecordSet& records, Scheme scheme) {
  if (family_of(records) != family_of(scheme))
    throw InvalidInput("scheme " + std::string(scheme_name(scheme)) + " needs " +
                       std::string(family_name(family_of(scheme))) + " records, got " +
                       std::string(family_name(family_of(records))));
}

}  // namespace detail

/// Applies the scheme's return estimator to every record, in input order.
inline std::vector<ReturnTriple> returns_for(const RecordSet& records, Scheme scheme,
                                             const SchemeParams& params) {
  detail::expect_family(records, scheme);
  std::vector<ReturnTriple> out;
  switch (scheme) {
    case Scheme::clf_error:
      for (const auto& r : std::get<0>(records)) {
        auto t = clf_error_returns(r.true_label, r.predicted_label, r.monitor_flag);
        t.weight = r.weight;
        out.push_back(t);
      }
      break;
    case Scheme::clf_threat:
      for (const auto& r : std::get<0>(records)) {
        if (!r.threat_flag) throw ValidationError("threat_flag", "missing on record " + r.example_id);
        auto t = clf_threat_returns(*r.threat_flag, r.monitor_flag);
        t.weight = r.weight;
        out.push_back(t);
      }
      break;
    case Scheme::det_error:
      for (const auto& r : std::get<1>(records)) out.push_back(detection_returns(r, params));
      break;
    case Scheme::episodic:
      out = detail::episodic_triples(std::get<2>(records));
      break;
    case Scheme::landing_e1:
      for (const auto& r : std::get<3>(records)) out.push_back(landing_e1_returns(r));
      break;
    case Scheme::landing_e2:
      for (const auto& r : std::get<3>(records)) out.push_back(landing_e2_returns(r, params));
      break;
  }
  return out;
}

/// The same records as seen by a monitor that never fires.
inline RecordSet with_null_monitor(const RecordSet& records) {
  RecordSet out = records;
  std::visit(
      [](auto& vec) {
        using R = typename std::decay_t<decltype(vec)>::value_type;
        if constexpr (std::is_same_v<R, EpisodeTrace>) {
          std::map<std::string, const EpisodeTrace*> bare;
          for (const auto& tr : vec)
            if (tr.variant == Variant::f) bare[tr.scenario_id] = &tr;
          std::vector<EpisodeTrace> copy = vec;
          for (auto& tr : copy) {
            if (tr.variant != Variant::f_with_monitor) continue;
            auto it = bare.find(tr.scenario_id);
            if (it == bare.end()) continue;
            tr.frames = it->second->frames;
          }
          vec = std::move(copy);
        } else if constexpr (std::is_same_v<R, LandingImageRecord>) {
          for (auto& img : vec) {
            for (auto& c : img.candidates) c.monitor_flag = false;
            img.selected_fm = img.selected_f;
          }
        } else {
          for (auto& r : vec) r.monitor_flag = false;
        }
      },
      out);
  return out;
}

inline MetricsReport evaluate(const RecordSet& records, const EvaluateOptions& opts) {
  opts.params.validate();
  const auto triples = returns_for(records, opts.scheme, opts.params);
  MetricsReport report =
      summarize(triples, std::string(scheme_name(opts.scheme)), opts.params, opts.compensated);
  if (opts.normalize_safety || opts.normalize_mission)
    report = normalize_report(report, opts.normalize_safety.value_or(1.0),
                              opts.normalize_mission.value_or(1.0));
  if (decomposition_residual(report) > kSelfCheckTolerance)
    throw SelfCheckFailure(fmt::format("decomposition residual {:.3g} exceeds {:.0e}",
                                       decomposition_residual(report), kSelfCheckTolerance));
  return report;
}

/// Loads and concatenates every input under the scheme, then evaluates.
inline MetricsReport evaluate_files(const std::vector<std::filesystem::path>& inputs,
                                    const EvaluateOptions& opts) {
  if (inputs.empty()) throw InvalidInput("no input files");
  std::optional<RecordSet> all;
  for (const auto& path : inputs) {
    RecordSet part = load_traces(path, opts.scheme);
    if (!all) {
      all = std::move(part);
      continue;
    }
    std::visit(
        [&](auto& dst) {
          auto& src = std::get<std::decay_t<decltype(dst)>>(part);
          dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
        },
        *all);
  }
  return evaluate(*all, opts);
}

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

inline std::string format_real(double v) { return fmt::format("{:.12g}", v); }

/// Report object with a fixed field order and reals at 12 significant digits.
inline std::string format_report(const MetricsReport& r) {
  const auto& p = r.params_echo;
  std::string out;
  out += "{\n";
  out += fmt::format("  \"scheme\": \"{}\",\n", r.scheme_name);
  out += fmt::format("  \"n\": {},\n", r.n);
  out += fmt::format("  \"total_weight\": {},\n", format_real(r.total_weight));
  out += fmt::format("  \"sg\": {},\n", format_real(r.sg));
  out += fmt::format("  \"rh\": {},\n", format_real(r.rh));
  out += fmt::format("  \"ac\": {},\n", format_real(r.ac));
  out += fmt::format("  \"hazard_f\": {},\n", format_real(r.hazard_f));
  out += "  \"params_echo\": {\n";
  out += fmt::format("    \"iou_threshold\": {},\n", format_real(p.iou_threshold));
  out += fmt::format("    \"score_threshold\": {},\n", format_real(p.score_threshold));
  out += fmt::format("    \"kappa\": {},\n", format_real(p.kappa));
  out += fmt::format("    \"default_action_score\": {},\n", format_real(p.effective_default_action_score()));
  out += fmt::format("    \"normalize_safety\": {},\n", format_real(r.safety_scale));
  out += fmt::format("    \"normalize_mission\": {},\n", format_real(r.mission_scale));
  out += fmt::format("    \"compensated_summation\": {}\n", r.compensated ? "true" : "false");
  out += "  },\n";
  out += fmt::format("  \"decomposition_residual\": {}\n", format_real(decomposition_residual(r)));
  out += "}\n";
  return out;
}

/// Three-column SG / RH / AC summary for the terminal.
inline std::string format_table(const MetricsReport& r) {
  std::string out;
  out += fmt::format("scheme {}  n {}\n", r.scheme_name, r.n);
  out += fmt::format("{:<6} {:<6} {:<6}\n", "SG", "RH", "AC");
  out += fmt::format("{:.3f} {:.3f} {:.3f}\n", r.sg, r.rh, r.ac);
  out += fmt::format("hazard_f {:.3f}  residual {}\n", r.hazard_f, format_real(decomposition_residual(r)));
  return out;
}

inline void write_report(const MetricsReport& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << format_report(r);
  if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace safemon

#pragma once

// Relaxed Safety Gain / Residual Hazard / Availability Cost estimators over
// per-example return triples.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "safemon/errors.hpp"
#include "safemon/params.hpp"

namespace safemon {

/// Estimated safety and mission returns of one evaluation example under the
/// three systems: the bare model f, the monitored pair (f, m_f), and the
/// ground-truth system f*.
struct ReturnTriple {
  double safety_f = 0.0;
  double safety_fm = 0.0;
  double safety_fstar = 0.0;
  double mission_f = 0.0;
  double mission_fm = 0.0;
  double weight = 1.0;  // empirical importance of the example

  bool operator==(const ReturnTriple&) const = default;
};

struct MetricsReport {
  double sg = 0.0;
  double rh = 0.0;
  double ac = 0.0;
  double hazard_f = 0.0;  // weighted mean of safety_fstar - safety_f
  std::size_t n = 0;
  double total_weight = 0.0;
  std::string scheme_name;
  SchemeParams params_echo;
  // Divisors applied by normalize_report; 1 when the report is unnormalized.
  double safety_scale = 1.0;
  double mission_scale = 1.0;
  bool compensated = false;
};

namespace detail {

// Input-order accumulator; Neumaier compensation when requested.
class Accumulator {
 public:
  explicit Accumulator(bool compensated) : compensated_(compensated) {}

  void add(double v) {
    if (!compensated_) {
      sum_ += v;
      return;
    }
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  bool compensated_;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline void check_record(const ReturnTriple& r) {
  if (!(std::isfinite(r.weight) && r.weight >= 0.0))
    throw InvalidInput("record weight must be finite and nonnegative");
  if (!std::isfinite(r.safety_f) || !std::isfinite(r.safety_fm) || !std::isfinite(r.safety_fstar) ||
      !std::isfinite(r.mission_f) || !std::isfinite(r.mission_fm))
    throw InvalidInput("record returns must be finite");
}

template <typename Diff>
double weighted_mean(std::span<const ReturnTriple> records, bool compensated, Diff diff) {
  if (records.empty()) throw InvalidInput("cannot aggregate an empty record set");
  Accumulator num(compensated);
  Accumulator den(compensated);
  for (const auto& r : records) {
    check_record(r);
    num.add(r.weight * diff(r));
    den.add(r.weight);
  }
  const double total = den.value();
  if (!(total > 0.0)) throw InvalidInput("total record weight must be positive");
  return num.value() / total;
}

}  // namespace detail

/// Weighted mean of (safety_fm - safety_f): hazard removed by the monitor.
inline double aggregate_sg(std::span<const ReturnTriple> records, bool compensated = false) {
  return detail::weighted_mean(records, compensated,
                               [](const ReturnTriple& r) { return r.safety_fm - r.safety_f; });
}

/// Weighted mean of (safety_fstar - safety_fm): hazard still present with the monitor.
inline double aggregate_rh(std::span<const ReturnTriple> records, bool compensated = false) {
  return detail::weighted_mean(records, compensated,
                               [](const ReturnTriple& r) { return r.safety_fstar - r.safety_fm; });
}

/// Weighted mean of (mission_f - mission_fm): mission reward lost to the monitor.
inline double aggregate_ac(std::span<const ReturnTriple> records, bool compensated = false) {
  return detail::weighted_mean(records, compensated,
                               [](const ReturnTriple& r) { return r.mission_f - r.mission_fm; });
}

inline double aggregate_hazard_f(std::span<const ReturnTriple> records, bool compensated = false) {
  return detail::weighted_mean(records, compensated,
                               [](const ReturnTriple& r) { return r.safety_fstar - r.safety_f; });
}

inline MetricsReport summarize(std::span<const ReturnTriple> records, std::string scheme_name = {},
                               SchemeParams params = {}, bool compensated = false) {
  MetricsReport report;
  report.sg = aggregate_sg(records, compensated);
  report.rh = aggregate_rh(records, compensated);
  report.ac = aggregate_ac(records, compensated);
  report.hazard_f = aggregate_hazard_f(records, compensated);
  report.n = records.size();
  detail::Accumulator w(compensated);
  for (const auto& r : records) w.add(r.weight);
  report.total_weight = w.value();
  report.scheme_name = std::move(scheme_name);
  report.params_echo = params;
  report.compensated = compensated;
  return report;
}

/// |sg + rh - hazard_f|; stays below 1e-12 for any report built by summarize().
inline double decomposition_residual(const MetricsReport& report) {
  return std::abs(report.sg + report.rh - report.hazard_f);
}

inline MetricsReport normalize_report(const MetricsReport& report, double r_s_max, double r_m_max) {
  if (!(std::isfinite(r_s_max) && r_s_max > 0.0))
    throw InvalidInput("safety normalizer must be positive");
  if (!(std::isfinite(r_m_max) && r_m_max > 0.0))
    throw InvalidInput("mission normalizer must be positive");
  MetricsReport out = report;
  out.sg /= r_s_max;
  out.rh /= r_s_max;
  out.hazard_f /= r_s_max;
  out.ac /= r_m_max;
  out.safety_scale *= r_s_max;
  out.mission_scale *= r_m_max;
  return out;
}

/// Replaces the monitored returns with the bare-model ones (a monitor that never fires).
inline std::vector<ReturnTriple> with_null_monitor(std::span<const ReturnTriple> records) {
  std::vector<ReturnTriple> out(records.begin(), records.end());
  for (auto& r : out) {
    r.safety_fm = r.safety_f;
    r.mission_fm = r.mission_f;
  }
  return out;
}

}  // namespace safemon

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "safemon/safemon.hpp"

namespace {

namespace fs = std::filesystem;
using namespace safemon;
using Clock = std::chrono::steady_clock;

constexpr std::array<Scheme, 6> kAllSchemes{Scheme::clf_error, Scheme::clf_threat, Scheme::det_error,
                                            Scheme::episodic,  Scheme::landing_e1, Scheme::landing_e2};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

EvaluateOptions options(Scheme s) {
  EvaluateOptions o;
  o.scheme = s;
  return o;
}

Outcome decomposition_identity() {
  const auto t0 = Clock::now();
  testing::Rng rng(20240601);
  double worst = 0.0;
  std::size_t sets = 0;
  for (auto s : kAllSchemes) {
    for (int i = 0; i < 1000; ++i) {
      // Episode sets run the simulator, so keep those smaller.
      const std::size_t n = s == Scheme::episodic ? 1 + i % 4 : 1 + i % 40;
      const auto triples = returns_for(testing::random_record_set(rng, s, n), s, {});
      worst = std::max(worst, decomposition_residual(summarize(triples)));
      ++sets;
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-12 && secs < 5.0,
          fmt::format("{} sets, max residual {:.3g}, {:.2f} s", sets, worst, secs)};
}

Outcome null_monitor() {
  testing::Rng rng(77);
  std::size_t checked = 0;
  bool ok = true;
  for (auto s : kAllSchemes) {
    for (int i = 0; i < 50; ++i) {
      const auto set = with_null_monitor(testing::random_record_set(rng, s, s == Scheme::episodic ? 3 : 30));
      const auto r = evaluate(set, options(s));
      ok = ok && r.sg == 0.0 && r.ac == 0.0;
      ++checked;
    }
  }
  return {ok, fmt::format("{} remapped sets, SG and AC exactly 0", checked)};
}

Outcome classifier_correspondence() {
  double worst = 0.0;
  std::size_t configs = 0;
  for (std::size_t n : {100, 1000}) {
    for (std::size_t errors : {n / 10, n / 4, n / 2}) {
      for (std::size_t ta : {std::size_t{0}, errors / 3, errors}) {
        for (std::size_t fa : {std::size_t{0}, (n - errors) / 5, (n - errors) / 2}) {
          const auto r = evaluate(RecordSet{gen::synth_classification(n, errors, ta, fa)},
                                  options(Scheme::clf_error));
          const double err_frac = static_cast<double>(errors) / static_cast<double>(n);
          const double ok_frac = 1.0 - err_frac;
          const double recall = static_cast<double>(ta) / static_cast<double>(errors);
          const double fpr = static_cast<double>(fa) / static_cast<double>(n - errors);
          worst = std::max({worst, std::abs(r.sg / err_frac - recall),
                            std::abs(r.rh / err_frac - (1.0 - recall)), std::abs(r.ac / ok_frac - fpr)});
          ++configs;
        }
      }
    }
  }
  return {worst <= 1e-12 && configs >= 50,
          fmt::format("{} count configurations, max deviation {:.3g}", configs, worst)};
}

Outcome table_one() {
  const auto r = evaluate(RecordSet{gen::table1_reconstruction()}, options(Scheme::clf_error));
  const auto a = evaluate(RecordSet{gen::synth_threat(1000, 500, 344, 144)}, options(Scheme::clf_threat));
  const auto b = evaluate(RecordSet{gen::synth_threat(1000, 500, 86, 142)}, options(Scheme::clf_threat));
  const bool ok = r.sg == 0.184 && r.rh == 0.140 && r.ac == 0.304 && r.hazard_f == 0.324 &&
                  std::abs(a.hazard_f - 0.5) < 1e-12 && std::abs(b.hazard_f - 0.5) < 1e-12 &&
                  std::abs(a.sg - 0.344) < 1e-12 && std::abs(b.rh - 0.414) < 1e-12;
  return {ok, fmt::format("SG {} RH {} AC {} hazard {}; threat rows hazard {} / {}", format_real(r.sg),
                          format_real(r.rh), format_real(r.ac), format_real(r.hazard_f),
                          format_real(a.hazard_f), format_real(b.hazard_f))};
}

Outcome episodic_suite() {
  const auto t0 = Clock::now();
  const auto result = sim::run_suite(sim::desk_suite());
  std::vector<EpisodeTrace> all = result.f;
  all.insert(all.end(), result.f_with_monitor.begin(), result.f_with_monitor.end());
  all.insert(all.end(), result.f_star.begin(), result.f_star.end());
  const auto r = evaluate(RecordSet{std::move(all)}, options(Scheme::episodic));
  const double secs = seconds_since(t0);
  // Running-frame deficits of the monitored car: 59 + 39 + 75 + 15 over 20 runs of 220 frames.
  const double expected_ac = 188.0 / 4400.0;
  const bool ok = r.n == 20 && r.sg == 0.10 && r.rh == 0.05 && std::abs(r.ac - expected_ac) < 1e-15 &&
                  result.summary.f.collisions == 3 && result.summary.f_with_monitor.collisions == 1 &&
                  secs < 2.0;
  return {ok, fmt::format("SG {} RH {} AC {} (expected {}), {:.3f} s", format_real(r.sg), format_real(r.rh),
                          format_real(r.ac), format_real(expected_ac), secs)};
}

Outcome detection_oracle() {
  testing::Rng rng(4242);
  std::size_t agree = 0;
  constexpr std::size_t kFrames = 10000;
  for (std::size_t i = 0; i < kFrames; ++i) {
    const auto frame = testing::random_detection_frame(rng, 5);
    const bool got = detection_error_flag(frame.ground_truth, frame.predictions, SchemeParams{});
    agree += got == testing::oracle_detection_flag(frame.ground_truth, frame.predictions, 0.5, 0.5);
  }
  return {agree == kFrames, fmt::format("{}/{} frames agree", agree, kFrames)};
}

Outcome landing_gap() {
  testing::Rng rng(808);
  std::size_t violations = 0;
  for (double kappa : {0.0, 0.25, 0.5, 0.9}) {
    for (int i = 0; i < 10000; ++i) {
      const double s = landing_candidate_score(testing::coin(rng, 0.3), testing::uniform(rng), kappa);
      if (!(s == 0.0 || s >= kappa)) ++violations;
    }
  }
  LandingImageRecord img;
  img.image_id = "sole-safe";
  img.candidates.push_back({"a", false, 0.0, true});
  img.selected_f = "a";
  img.selected_fm = std::string(kDefaultAction);
  img.selected_fstar = "a";
  const auto r = landing_e2_returns(img, SchemeParams{});
  const double sg = r.safety_fm - r.safety_f;
  return {violations == 0 && sg < 0.0,
          fmt::format("{} gap violations in 40000 scores; rejected safe site SG {}", violations, format_real(sg))};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "safemon_acceptance";
  fs::remove_all(root);
  bool ok = true;

  auto suite = sim::default_suite();
  sim::reseed(suite, 12345);
  sim::write_suite(sim::run_suite(suite), root / "a");
  sim::write_suite(sim::run_suite(suite), root / "b");
  for (const auto name : sim::kTraceFileNames) ok = ok && slurp(root / "a" / name) == slurp(root / "b" / name);

  testing::Rng rng(31337);
  std::size_t round_trips = 0;
  for (auto s : kAllSchemes) {
    for (int i = 0; i < 20; ++i) {
      const auto set = testing::random_record_set(rng, s, s == Scheme::episodic ? 3 : 25);
      const std::string text = to_string(set);
      std::istringstream in(text);
      const auto back = parse_traces(in, family_of(set));
      ok = ok && back == set && to_string(back) == text;
      ++round_trips;
    }
  }

  std::vector<fs::path> inputs;
  for (const auto name : sim::kTraceFileNames) inputs.push_back(root / "a" / name);
  write_report(evaluate_files(inputs, options(Scheme::episodic)), root / "r1.json");
  write_report(evaluate_files(inputs, options(Scheme::episodic)), root / "r2.json");
  ok = ok && slurp(root / "r1.json") == slurp(root / "r2.json");
  fs::remove_all(root);
  return {ok, fmt::format("identical simulator output, {} record round trips, identical reports", round_trips)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"decomposition identity", decomposition_identity},
      {"null-monitor identities", null_monitor},
      {"classifier recall/FNR/FPR correspondence", classifier_correspondence},
      {"classifier table reconstruction", table_one},
      {"episodic desk suite", episodic_suite},
      {"detection matching oracle", detection_oracle},
      {"landing score gap", landing_gap},
      {"determinism and round trip", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << fmt::format("[{}] {}. {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
  }
  return failures == 0 ? 0 : 1;
}

#pragma once

// Line-delimited trace files. Line 1 is a header object
//   {"schema_version":1,"scheme":"<family>"}
// and every following non-blank line holds one record. Bits are written as
// 0/1, reals with round-trip precision.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "safemon/errors.hpp"
#include "safemon/params.hpp"
#include "safemon/records.hpp"

namespace safemon {

inline constexpr int kSchemaVersion = 1;

/// The record type a trace file holds. Several schemes share a family, so one
/// file can be evaluated under competing assumptions.
enum class RecordFamily { classification, detection, episodic, landing };

inline std::string_view family_name(RecordFamily f) {
  switch (f) {
    case RecordFamily::classification: return "classification";
    case RecordFamily::detection: return "detection";
    case RecordFamily::episodic: return "episodic";
    case RecordFamily::landing: return "landing";
  }
  return "unknown";
}

inline std::optional<RecordFamily> parse_family(std::string_view name) {
  for (auto f : {RecordFamily::classification, RecordFamily::detection, RecordFamily::episodic,
                 RecordFamily::landing})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

inline RecordFamily family_of(Scheme s) {
  switch (s) {
    case Scheme::clf_error:
    case Scheme::clf_threat: return RecordFamily::classification;
    case Scheme::det_error: return RecordFamily::detection;
    case Scheme::episodic: return RecordFamily::episodic;
    case Scheme::landing_e1:
    case Scheme::landing_e2: return RecordFamily::landing;
  }
  return RecordFamily::classification;
}

using RecordSet = std::variant<std::vector<ClassificationRecord>, std::vector<DetectionFrameRecord>,
                               std::vector<EpisodeTrace>, std::vector<LandingImageRecord>>;

using AnyRecord = std::variant<ClassificationRecord, DetectionFrameRecord, EpisodeTrace, LandingImageRecord>;

inline RecordFamily family_of(const RecordSet& set) {
  return static_cast<RecordFamily>(set.index());
}

inline std::size_t record_count(const RecordSet& set) {
  return std::visit([](const auto& v) { return v.size(); }, set);
}

// ---------------------------------------------------------------------------
// JSON encoding
// ---------------------------------------------------------------------------

namespace detail {

using ojson = nlohmann::ordered_json;

// Decoding failures surface as ParseError at the caller's line.
struct FieldError {
  std::string what;
};

inline const nlohmann::json& field(const nlohmann::json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw FieldError{std::string("missing field \"") + name + "\""};
  return *it;
}

inline std::string get_string(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_string()) throw FieldError{std::string("field \"") + name + "\" must be a string"};
  return v.get<std::string>();
}

inline std::int64_t get_int(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_number_integer()) throw FieldError{std::string("field \"") + name + "\" must be an integer"};
  return v.get<std::int64_t>();
}

inline double get_real(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_number()) throw FieldError{std::string("field \"") + name + "\" must be a number"};
  return v.get<double>();
}

inline double get_real_or(const nlohmann::json& obj, const char* name, double fallback) {
  return obj.contains(name) ? get_real(obj, name) : fallback;
}

inline bool get_bit(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_number_integer() || (v.get<std::int64_t>() != 0 && v.get<std::int64_t>() != 1))
    throw FieldError{std::string("field \"") + name + "\" must be 0 or 1"};
  return v.get<std::int64_t>() == 1;
}

inline const nlohmann::json& get_array(const nlohmann::json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_array()) throw FieldError{std::string("field \"") + name + "\" must be an array"};
  return v;
}

inline void require_object(const nlohmann::json& v, const char* what) {
  if (!v.is_object()) throw FieldError{std::string(what) + " must be an object"};
}

inline void put_weight(ojson& j, double w) {
  if (w != 1.0) j["weight"] = w;
}

inline ojson to_json(const Box& b) {
  ojson j;
  j["x_min"] = b.x_min;
  j["y_min"] = b.y_min;
  j["x_max"] = b.x_max;
  j["y_max"] = b.y_max;
  j["label"] = b.label;
  j["score"] = b.score;
  return j;
}

inline Box box_from_json(const nlohmann::json& j) {
  require_object(j, "box");
  Box b;
  b.x_min = get_real(j, "x_min");
  b.y_min = get_real(j, "y_min");
  b.x_max = get_real(j, "x_max");
  b.y_max = get_real(j, "y_max");
  b.label = get_int(j, "label");
  b.score = get_real_or(j, "score", 1.0);
  return b;
}

inline ojson to_json(const ClassificationRecord& r) {
  ojson j;
  j["example_id"] = r.example_id;
  j["true_label"] = r.true_label;
  j["predicted_label"] = r.predicted_label;
  j["monitor_flag"] = r.monitor_flag ? 1 : 0;
  if (r.threat_flag) j["threat_flag"] = *r.threat_flag ? 1 : 0;
  put_weight(j, r.weight);
  return j;
}

inline ClassificationRecord classification_from_json(const nlohmann::json& j) {
  ClassificationRecord r;
  r.example_id = get_string(j, "example_id");
  r.true_label = get_int(j, "true_label");
  r.predicted_label = get_int(j, "predicted_label");
  r.monitor_flag = get_bit(j, "monitor_flag");
  if (j.contains("threat_flag")) r.threat_flag = get_bit(j, "threat_flag");
  r.weight = get_real_or(j, "weight", 1.0);
  return r;
}

inline ojson to_json(const DetectionFrameRecord& r) {
  ojson j;
  j["frame_id"] = r.frame_id;
  j["ground_truth"] = ojson::array();
  for (const auto& b : r.ground_truth) j["ground_truth"].push_back(to_json(b));
  j["predictions"] = ojson::array();
  for (const auto& b : r.predictions) j["predictions"].push_back(to_json(b));
  j["monitor_flag"] = r.monitor_flag ? 1 : 0;
  put_weight(j, r.weight);
  return j;
}

inline DetectionFrameRecord detection_from_json(const nlohmann::json& j) {
  DetectionFrameRecord r;
  r.frame_id = get_string(j, "frame_id");
  for (const auto& b : get_array(j, "ground_truth")) r.ground_truth.push_back(box_from_json(b));
  for (const auto& b : get_array(j, "predictions")) r.predictions.push_back(box_from_json(b));
  r.monitor_flag = get_bit(j, "monitor_flag");
  r.weight = get_real_or(j, "weight", 1.0);
  return r;
}

inline ojson to_json(const EpisodeTrace& tr) {
  ojson j;
  j["scenario_id"] = tr.scenario_id;
  j["variant"] = variant_name(tr.variant);
  j["frames"] = ojson::array();
  for (const auto& fs : tr.frames) {
    ojson f;
    f["t"] = fs.t;
    f["running"] = fs.running ? 1 : 0;
    f["collision"] = fs.collision ? 1 : 0;
    f["monitor_flag"] = fs.monitor_flag ? 1 : 0;
    f["braked"] = fs.braked ? 1 : 0;
    j["frames"].push_back(std::move(f));
  }
  return j;
}

inline EpisodeTrace episode_from_json(const nlohmann::json& j) {
  EpisodeTrace tr;
  tr.scenario_id = get_string(j, "scenario_id");
  const std::string variant = get_string(j, "variant");
  auto v = parse_variant(variant);
  if (!v) throw FieldError{"unknown variant \"" + variant + "\""};
  tr.variant = *v;
  for (const auto& f : get_array(j, "frames")) {
    require_object(f, "frame");
    FrameState fs;
    fs.t = get_int(f, "t");
    fs.running = get_bit(f, "running");
    fs.collision = get_bit(f, "collision");
    fs.monitor_flag = get_bit(f, "monitor_flag");
    fs.braked = get_bit(f, "braked");
    tr.frames.push_back(fs);
  }
  return tr;
}

inline ojson to_json(const LandingImageRecord& r) {
  ojson j;
  j["image_id"] = r.image_id;
  j["candidates"] = ojson::array();
  for (const auto& c : r.candidates) {
    ojson cj;
    cj["candidate_id"] = c.candidate_id;
    cj["has_forbidden_pixel"] = c.has_forbidden_pixel ? 1 : 0;
    cj["mean_hazard"] = c.mean_hazard;
    cj["monitor_flag"] = c.monitor_flag ? 1 : 0;
    j["candidates"].push_back(std::move(cj));
  }
  j["selected_f"] = r.selected_f;
  j["selected_fm"] = r.selected_fm;
  j["selected_fstar"] = r.selected_fstar;
  put_weight(j, r.weight);
  return j;
}

inline LandingImageRecord landing_from_json(const nlohmann::json& j) {
  LandingImageRecord r;
  r.image_id = get_string(j, "image_id");
  for (const auto& c : get_array(j, "candidates")) {
    require_object(c, "candidate");
    LandingCandidate cand;
    cand.candidate_id = get_string(c, "candidate_id");
    cand.has_forbidden_pixel = get_bit(c, "has_forbidden_pixel");
    cand.mean_hazard = get_real(c, "mean_hazard");
    cand.monitor_flag = get_bit(c, "monitor_flag");
    r.candidates.push_back(std::move(cand));
  }
  r.selected_f = get_string(j, "selected_f");
  r.selected_fm = get_string(j, "selected_fm");
  r.selected_fstar = get_string(j, "selected_fstar");
  r.weight = get_real_or(j, "weight", 1.0);
  return r;
}

inline std::string header_line(RecordFamily family) {
  ojson h;
  h["schema_version"] = kSchemaVersion;
  h["scheme"] = family_name(family);
  return h.dump();
}

inline bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

/// Parses a trace stream. `family` is what the caller expects; `scheme`, when
/// given, adds the scheme's own requirements (threat flags, nonempty candidates).
inline RecordSet parse_traces(std::istream& in, RecordFamily family,
                              std::optional<Scheme> scheme = std::nullopt) {
  std::string line;
  std::size_t lineno = 0;

  // Header.
  nlohmann::json header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::blank(line)) break;
  }
  if (lineno == 0 || detail::blank(line)) throw ValidationError("records", "no records");
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(lineno, std::string("malformed header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("schema_version"))
    throw VersionError("line " + std::to_string(lineno) + ": header lacks schema_version");
  if (!header["schema_version"].is_number_integer() || header["schema_version"].get<int>() != kSchemaVersion)
    throw VersionError("line " + std::to_string(lineno) + ": unsupported schema_version " +
                       header["schema_version"].dump() + " (expected " +
                       std::to_string(kSchemaVersion) + ")");
  if (!header.contains("scheme") || !header["scheme"].is_string())
    throw ParseError(lineno, "header lacks scheme");
  const auto file_family = parse_family(header["scheme"].get<std::string>());
  if (!file_family)
    throw ValidationError("scheme", "unknown record family \"" + header["scheme"].get<std::string>() + "\"",
                          lineno);
  if (*file_family != family)
    throw ValidationError("scheme",
                          "file holds " + std::string(family_name(*file_family)) + " records, expected " +
                              std::string(family_name(family)),
                          lineno);

  const bool need_threat = scheme == Scheme::clf_threat;
  const bool need_candidates = scheme == Scheme::landing_e1;

  RecordSet out;
  switch (family) {
    case RecordFamily::classification: out = std::vector<ClassificationRecord>{}; break;
    case RecordFamily::detection: out = std::vector<DetectionFrameRecord>{}; break;
    case RecordFamily::episodic: out = std::vector<EpisodeTrace>{}; break;
    case RecordFamily::landing: out = std::vector<LandingImageRecord>{}; break;
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(lineno, std::string("malformed record: ") + e.what());
    }
    try {
      detail::require_object(j, "record");
      std::visit(
          [&](auto& vec) {
            using R = typename std::decay_t<decltype(vec)>::value_type;
            if constexpr (std::is_same_v<R, ClassificationRecord>) {
              auto r = detail::classification_from_json(j);
              validate(r, need_threat, lineno);
              vec.push_back(std::move(r));
            } else if constexpr (std::is_same_v<R, DetectionFrameRecord>) {
              auto r = detail::detection_from_json(j);
              validate(r, lineno);
              vec.push_back(std::move(r));
            } else if constexpr (std::is_same_v<R, EpisodeTrace>) {
              auto r = detail::episode_from_json(j);
              validate(r, lineno);
              vec.push_back(std::move(r));
            } else {
              auto r = detail::landing_from_json(j);
              validate(r, need_candidates, lineno);
              vec.push_back(std::move(r));
            }
          },
          out);
    } catch (const detail::FieldError& e) {
      throw ParseError(lineno, e.what);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (record_count(out) == 0) throw ValidationError("records", "no records");
  return out;
}

inline RecordSet parse_traces(std::istream& in, Scheme scheme) {
  return parse_traces(in, family_of(scheme), scheme);
}

inline RecordSet load_traces(const std::filesystem::path& path, Scheme scheme) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open trace file");
  return parse_traces(in, scheme);
}

inline RecordSet load_traces(const std::filesystem::path& path, RecordFamily family) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open trace file");
  return parse_traces(in, family);
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

inline void write_traces(const RecordSet& records, std::ostream& out) {
  out << detail::header_line(family_of(records)) << '\n';
  std::visit(
      [&](const auto& vec) {
        for (const auto& r : vec) out << detail::to_json(r).dump() << '\n';
      },
      records);
}

inline std::string to_string(const RecordSet& records) {
  std::ostringstream os;
  write_traces(records, os);
  return os.str();
}

inline void save_traces(const RecordSet& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  write_traces(records, out);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

/// Collects loosely typed records into one family; mixed types are rejected.
inline RecordSet homogeneous(const std::vector<AnyRecord>& records) {
  if (records.empty()) throw InvalidInput("cannot infer the record family of an empty sequence");
  const std::size_t kind = records.front().index();
  RecordSet out;
  switch (kind) {
    case 0: out = std::vector<ClassificationRecord>{}; break;
    case 1: out = std::vector<DetectionFrameRecord>{}; break;
    case 2: out = std::vector<EpisodeTrace>{}; break;
    default: out = std::vector<LandingImageRecord>{}; break;
  }
  for (const auto& r : records) {
    if (r.index() != kind) throw InvalidInput("trace files hold a single record type; got a mix");
    std::visit(
        [&](auto& vec) {
          using R = typename std::decay_t<decltype(vec)>::value_type;
          vec.push_back(std::get<R>(r));
        },
        out);
  }
  return out;
}

inline void save_traces(const std::vector<AnyRecord>& records, const std::filesystem::path& path) {
  save_traces(homogeneous(records), path);
}

}  // namespace safemon

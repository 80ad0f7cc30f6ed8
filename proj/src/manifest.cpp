#include "corpusforge/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/textnorm.hpp"

namespace corpusforge {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Gender g) noexcept { return g == Gender::F ? "F" : "M"; }

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

std::string_view to_string(Origin o) noexcept {
  switch (o) {
    case Origin::real: return "real";
    case Origin::synthetic: return "synthetic";
    case Origin::generated_text: return "generated_text";
  }
  return "?";
}

std::string_view to_string(GenerationStatus s) noexcept {
  switch (s) {
    case GenerationStatus::accepted: return "accepted";
    case GenerationStatus::rejected: return "rejected";
    case GenerationStatus::error: return "error";
  }
  return "?";
}

Gender parse_gender(std::string_view s) {
  if (s == "F") return Gender::F;
  if (s == "M") return Gender::M;
  throw InvalidArgument("invalid gender '" + std::string(s) + "' (expected F or M)");
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  throw InvalidArgument("invalid split '" + std::string(s) + "' (expected train, dev or test)");
}

Origin parse_origin(std::string_view s) {
  if (s == "real") return Origin::real;
  if (s == "synthetic") return Origin::synthetic;
  if (s == "generated_text") return Origin::generated_text;
  throw InvalidArgument("invalid origin '" + std::string(s) + "'");
}

static GenerationStatus parse_status(std::string_view s) {
  if (s == "accepted") return GenerationStatus::accepted;
  if (s == "rejected") return GenerationStatus::rejected;
  if (s == "error") return GenerationStatus::error;
  throw InvalidArgument("invalid status '" + std::string(s) + "'");
}

void validate(const Utterance& u) {
  auto fail = [&](std::string_view field, std::string_view why) {
    throw InvariantError("utterance '" + u.id + "': field '" + std::string(field) + "' " +
                         std::string(why));
  };
  if (u.id.empty()) fail("id", "must be non-empty");
  if (u.speaker_id.empty()) fail("speaker_id", "must be non-empty");
  if (!(u.duration_s > 0.0) || !std::isfinite(u.duration_s)) fail("duration_s", "must be > 0");
  if (trim(u.text).empty()) fail("text", "must be non-empty after trimming");
  if (u.utmos && !(*u.utmos >= 1.0 && *u.utmos <= 5.0)) fail("utmos", "must lie in [1, 5]");
}

void validate(const Manifest& m) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(m.entries.size());
  std::unordered_map<std::string_view, Split> speaker_split;
  for (const auto& u : m.entries) {
    validate(u);
    if (!ids.insert(u.id).second) {
      throw InvariantError("manifest '" + m.name + "': duplicate utterance id '" + u.id + "'");
    }
    auto [it, inserted] = speaker_split.emplace(u.speaker_id, u.split);
    if (!inserted && it->second != u.split) {
      throw InvariantError("manifest '" + m.name + "': speaker '" + u.speaker_id +
                           "' appears in both " + std::string(to_string(it->second)) + " and " +
                           std::string(to_string(u.split)) + " (utterance '" + u.id + "')");
    }
  }
}

double total_seconds(std::span<const Utterance> entries) noexcept {
  // Summed in id order so the result does not depend on entry order.
  std::vector<const Utterance*> sorted;
  sorted.reserve(entries.size());
  for (const auto& u : entries) sorted.push_back(&u);
  std::sort(sorted.begin(), sorted.end(),
            [](const Utterance* a, const Utterance* b) { return a->id < b->id; });
  double sum = 0.0;
  for (const auto* u : sorted) sum += u->duration_s;
  return sum;
}

double total_hours(const Manifest& m) noexcept { return total_seconds(m.entries) / 3600.0; }

// ---------------------------------------------------------------------------
// JSON mapping

static ordered_json utterance_to_json(const Utterance& u) {
  ordered_json j;
  j["id"] = u.id;
  j["speaker_id"] = u.speaker_id;
  j["gender"] = to_string(u.gender);
  j["split"] = to_string(u.split);
  j["text"] = u.text;
  j["audio_ref"] = u.audio_ref;
  j["duration_s"] = u.duration_s;
  j["origin"] = to_string(u.origin);
  if (u.utmos) j["utmos"] = *u.utmos;
  return j;
}

namespace {

class FieldReader {
 public:
  FieldReader(const json& obj, const std::string& source, std::size_t line)
      : obj_(obj), source_(source), line_(line) {
    if (!obj_.is_object()) throw ParseError(source_, line_, "record is not a JSON object");
  }

  const json& required(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      throw ParseError(source_, line_, std::string("missing field '") + key + "'");
    }
    return *it;
  }

  std::string str(const char* key) const {
    const auto& v = required(key);
    if (!v.is_string()) throw type_error(key, "a string");
    return v.get<std::string>();
  }

  double number(const char* key) const {
    const auto& v = required(key);
    if (!v.is_number()) throw type_error(key, "a number");
    return v.get<double>();
  }

  long long integer(const char* key) const {
    const auto& v = required(key);
    if (!v.is_number_integer()) throw type_error(key, "an integer");
    return v.get<long long>();
  }

  bool boolean(const char* key) const {
    const auto& v = required(key);
    if (!v.is_boolean()) throw type_error(key, "a boolean");
    return v.get<bool>();
  }

  bool has(const char* key) const { return obj_.contains(key); }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
        throw ParseError(source_, line_, "unknown field '" + it.key() + "'");
      }
    }
  }

  template <typename F>
  auto enumerated(const char* key, F parse) const {
    try {
      return parse(str(key));
    } catch (const InvalidArgument& e) {
      throw ParseError(source_, line_, std::string("field '") + key + "': " + e.what());
    }
  }

 private:
  ParseError type_error(const char* key, const char* expected) const {
    return ParseError(source_, line_, std::string("field '") + key + "' must be " + expected);
  }

  const json& obj_;
  const std::string& source_;
  std::size_t line_;
};

json parse_json_line(std::string_view line, const std::string& source, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
  }
}

// Calls fn(line, line_no) for each non-empty line. A final line without LF is
// accepted; blank lines in the middle are rejected.
template <typename F>
void for_each_line(std::string_view contents, const std::string& source, F fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    ++line_no;
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    auto line = contents.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) throw ParseError(source, line_no, "blank line");
    fn(line, line_no);
    pos = end + 1;
  }
}

Utterance utterance_from_json(const json& j, const std::string& source, std::size_t line_no) {
  FieldReader r(j, source, line_no);
  r.allow_only({"id", "speaker_id", "gender", "split", "text", "audio_ref", "duration_s",
                "origin", "utmos"});
  Utterance u;
  u.id = r.str("id");
  u.speaker_id = r.str("speaker_id");
  u.gender = r.enumerated("gender", parse_gender);
  u.split = r.enumerated("split", parse_split);
  u.text = r.str("text");
  u.audio_ref = r.str("audio_ref");
  u.duration_s = r.number("duration_s");
  u.origin = r.enumerated("origin", parse_origin);
  if (r.has("utmos") && !j.at("utmos").is_null()) u.utmos = r.number("utmos");
  return u;
}

}  // namespace

std::string to_jsonl_line(const Utterance& u) { return utterance_to_json(u).dump(); }

Utterance utterance_from_json_text(std::string_view line, const std::string& source,
                                   std::size_t line_no) {
  return utterance_from_json(parse_json_line(line, source, line_no), source, line_no);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

namespace {

Manifest parse_manifest_from(std::string_view contents, std::string name, const std::string& source) {
  Manifest m;
  m.name = std::move(name);
  for_each_line(contents, source, [&](std::string_view line, std::size_t line_no) {
    auto u = utterance_from_json_text(line, source, line_no);
    try {
      validate(u);
    } catch (const InvariantError& e) {
      throw ParseError(source, line_no, e.what());
    }
    m.entries.push_back(std::move(u));
  });
  try {
    validate(m);
  } catch (const InvariantError& e) {
    throw InvariantError(source + ": " + e.what());
  }
  return m;
}

}  // namespace

Manifest parse_manifest(std::string_view contents, std::string name) {
  const std::string source = name;
  return parse_manifest_from(contents, std::move(name), source);
}

std::string serialize_manifest(const Manifest& m) {
  std::string out;
  for (const auto& u : m.entries) {
    out += to_jsonl_line(u);
    out += '\n';
  }
  return out;
}

Manifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest_from(read_file(path), path.stem().string(), path.string());
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  validate(m);
  write_file(path, serialize_manifest(m));
}

// ---------------------------------------------------------------------------
// Voice catalog

std::string serialize_catalog(const VoiceCatalog& c) {
  std::string out;
  for (const auto& [speaker, entry] : c.voices) {
    ordered_json j;
    j["speaker_id"] = speaker;
    j["fallback"] = entry.fallback;
    j["utterance"] = utterance_to_json(entry.utterance);
    out += j.dump();
    out += '\n';
  }
  return out;
}

VoiceCatalog parse_catalog(std::string_view contents, const std::string& source) {
  VoiceCatalog c;
  for_each_line(contents, source, [&](std::string_view line, std::size_t line_no) {
    auto j = parse_json_line(line, source, line_no);
    FieldReader r(j, source, line_no);
    r.allow_only({"speaker_id", "fallback", "utterance"});
    VoiceEntry e;
    auto speaker = r.str("speaker_id");
    e.fallback = r.boolean("fallback");
    e.utterance = utterance_from_json(r.required("utterance"), source, line_no);
    if (e.utterance.speaker_id != speaker) {
      throw ParseError(source, line_no, "speaker_id does not match the utterance's speaker");
    }
    if (!c.voices.emplace(speaker, std::move(e)).second) {
      throw ParseError(source, line_no, "duplicate speaker '" + speaker + "'");
    }
  });
  return c;
}

VoiceCatalog read_catalog(const std::filesystem::path& path) {
  return parse_catalog(read_file(path), path.string());
}

void write_catalog(const VoiceCatalog& c, const std::filesystem::path& path) {
  write_file(path, serialize_catalog(c));
}

// ---------------------------------------------------------------------------
// Generation records

const Attempt* GenerationRecord::chosen() const noexcept {
  for (const auto& a : attempts) {
    if (a.attempt_index == chosen_attempt) return &a;
  }
  return nullptr;
}

void validate(const GenerationRecord& r, int max_attempts, double wer_threshold) {
  auto fail = [&](const std::string& why) {
    throw InvariantError("generation record '" + r.utterance_id + "': " + why);
  };
  if (static_cast<int>(r.attempts.size()) > max_attempts) {
    fail("has " + std::to_string(r.attempts.size()) + " attempts, limit is " +
         std::to_string(max_attempts));
  }
  for (std::size_t i = 0; i < r.attempts.size(); ++i) {
    if (r.attempts[i].attempt_index != static_cast<int>(i) + 1) fail("attempt indices not 1..n");
    if (r.attempts[i].wer < 0.0) fail("negative wer");
  }
  if (r.status == GenerationStatus::error) return;
  if (r.attempts.empty()) fail("no attempts");
  const auto* chosen = r.chosen();
  if (!chosen) fail("chosen_attempt does not name a recorded attempt");
  if (r.accepted()) {
    if (chosen->wer > wer_threshold) fail("accepted attempt exceeds the threshold");
    if (r.chosen_attempt != static_cast<int>(r.attempts.size())) {
      fail("attempts recorded after the accepted one");
    }
  } else {
    for (const auto& a : r.attempts) {
      if (a.wer <= wer_threshold) fail("rejected record has an attempt within the threshold");
    }
  }
}

std::string to_jsonl_line(const GenerationRecord& r) {
  ordered_json j;
  j["utterance_id"] = r.utterance_id;
  j["text_id"] = r.text_id;
  j["voice_speaker_id"] = r.voice_speaker_id;
  j["status"] = to_string(r.status);
  j["accepted"] = r.accepted();
  j["chosen_attempt"] = r.chosen_attempt;
  auto attempts = ordered_json::array();
  for (const auto& a : r.attempts) {
    ordered_json aj;
    aj["attempt_index"] = a.attempt_index;
    aj["transcript"] = a.transcript;
    aj["wer"] = a.wer;
    aj["audio_ref"] = a.audio_ref;
    aj["duration_s"] = a.duration_s;
    attempts.push_back(std::move(aj));
  }
  j["attempts"] = std::move(attempts);
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

std::vector<GenerationRecord> parse_records(std::string_view contents, const std::string& source) {
  std::vector<GenerationRecord> out;
  for_each_line(contents, source, [&](std::string_view line, std::size_t line_no) {
    auto j = parse_json_line(line, source, line_no);
    FieldReader r(j, source, line_no);
    r.allow_only({"utterance_id", "text_id", "voice_speaker_id", "status", "accepted",
                  "chosen_attempt", "attempts", "error"});
    GenerationRecord rec;
    rec.utterance_id = r.str("utterance_id");
    rec.text_id = r.str("text_id");
    rec.voice_speaker_id = r.str("voice_speaker_id");
    rec.status = r.enumerated("status", parse_status);
    if (r.boolean("accepted") != rec.accepted()) {
      throw ParseError(source, line_no, "field 'accepted' disagrees with 'status'");
    }
    rec.chosen_attempt = static_cast<int>(r.integer("chosen_attempt"));
    const auto& attempts = r.required("attempts");
    if (!attempts.is_array()) throw ParseError(source, line_no, "field 'attempts' must be an array");
    for (const auto& aj : attempts) {
      FieldReader ar(aj, source, line_no);
      ar.allow_only({"attempt_index", "transcript", "wer", "audio_ref", "duration_s"});
      Attempt a;
      a.attempt_index = static_cast<int>(ar.integer("attempt_index"));
      a.transcript = ar.str("transcript");
      a.wer = ar.number("wer");
      a.audio_ref = ar.str("audio_ref");
      a.duration_s = ar.number("duration_s");
      rec.attempts.push_back(std::move(a));
    }
    if (r.has("error")) rec.error = r.str("error");
    out.push_back(std::move(rec));
  });
  return out;
}

std::string serialize_records(std::span<const GenerationRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_jsonl_line(r);
    out += '\n';
  }
  return out;
}

std::vector<GenerationRecord> read_records(const std::filesystem::path& path) {
  return parse_records(read_file(path), path.string());
}

void write_records(std::span<const GenerationRecord> records, const std::filesystem::path& path) {
  write_file(path, serialize_records(records));
}

}  // namespace corpusforge

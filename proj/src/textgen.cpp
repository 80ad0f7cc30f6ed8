#include "corpusforge/textgen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/textnorm.hpp"

namespace corpusforge {

using nlohmann::json;
using nlohmann::ordered_json;

void validate(const PromptSchedule& s) {
  if (s.batch_size < 1) throw InvalidArgument("prompt schedule: batch size must be >= 1");
  if (trim(s.base_prompt).empty()) throw InvalidArgument("prompt schedule: empty base prompt");
  for (std::size_t i = 0; i < s.sub_prompts.size(); ++i) {
    if (trim(s.sub_prompts[i]).empty()) {
      throw InvalidArgument("prompt schedule: sub-prompt " + std::to_string(i + 1) + " is empty");
    }
  }
}

PromptSchedule load_schedule(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) {
    throw Error("prompt directory '" + dir.string() + "' does not exist");
  }
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() != 6) {
    throw Error("prompt directory '" + dir.string() + "' must hold exactly 6 .txt files, found " +
                std::to_string(files.size()));
  }
  PromptSchedule s;
  s.base_prompt = read_file(files[0]);
  for (std::size_t i = 0; i < 5; ++i) s.sub_prompts[i] = read_file(files[i + 1]);
  validate(s);
  return s;
}

LlmRequest schedule_messages(std::size_t batch_index, const PromptSchedule& sched) {
  LlmRequest req;
  req.messages.push_back({Role::system, sched.base_prompt});
  if (batch_index >= 1) {
    req.messages.push_back({Role::user, sched.sub_prompts[(batch_index - 1) % sched.sub_prompts.size()]});
  }
  return req;
}

// ---------------------------------------------------------------------------
// Dialogue parsing

namespace {

constexpr std::string_view kOpenQuotes[] = {"«", "“", "\"", "\xC2\xA0", "\xE2\x80\xAF", " ", "\t"};
constexpr std::string_view kCloseQuotes[] = {"»", "”", "\"", "\xC2\xA0", "\xE2\x80\xAF", " ", "\t"};

std::string_view strip_quotes(std::string_view s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto q : kOpenQuotes) {
      if (s.starts_with(q)) {
        s.remove_prefix(q.size());
        changed = true;
      }
    }
    for (auto q : kCloseQuotes) {
      if (s.ends_with(q)) {
        s.remove_suffix(q.size());
        changed = true;
      }
    }
  }
  return s;
}

std::string strip_emphasis(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != '*' && c != '_') out += c;
  }
  return std::string(trim(out));
}

bool plausible_label(std::string_view label) {
  if (label.empty() || utf8_length(label) > 40) return false;
  for (std::string_view bad : {".", "?", "!", "«", "»", "“", "”", "\"", ",", ";"}) {
    if (label.find(bad) != std::string_view::npos) return false;
  }
  std::size_t words = 1;
  for (char c : label) words += c == ' ';
  if (words > 5) return false;
  const auto first = static_cast<unsigned char>(label[0]);
  return (first >= 'A' && first <= 'Z') || first >= 0x80;
}

}  // namespace

ParsedDialogue parse_dialogue(std::string_view raw) {
  ParsedDialogue out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= raw.size() && !raw.empty()) {
    auto end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    auto line = trim(raw.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == raw.size()) break;
      continue;
    }

    std::optional<std::string> label;
    std::string_view rest = line;
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      auto candidate = strip_emphasis(line.substr(0, colon));
      if (plausible_label(candidate)) {
        label = std::move(candidate);
        rest = line.substr(colon + 1);
        // "**Président :**" leaves emphasis after the colon.
        while (!rest.empty() && (rest.front() == '*' || rest.front() == '_')) rest.remove_prefix(1);
      }
    }
    auto text = strip_quotes(trim(rest));

    if (label) {
      out.turns.push_back({*label, std::string(text)});
    } else if (!out.turns.empty()) {
      auto& prev = out.turns.back().text;
      if (!prev.empty() && !text.empty()) prev += ' ';
      prev += text;
    } else {
      out.diagnostics.push_back("line " + std::to_string(line_no) + ": text before any speaker label dropped");
    }
    if (end == raw.size()) break;
  }

  std::vector<DialogueTurn> kept;
  for (auto& t : out.turns) {
    if (normalize(t.text).empty()) {
      out.diagnostics.push_back("turn by '" + t.speaker_label + "' has no words; dropped");
    } else {
      kept.push_back(std::move(t));
    }
  }
  out.turns = std::move(kept);
  if (out.turns.empty() && !trim(raw).empty()) out.diagnostics.push_back("no dialogue turns found");
  return out;
}

// ---------------------------------------------------------------------------
// Generation loop

namespace {

class TextgenState {
 public:
  TextgenState(const PromptSchedule& sched, const TextgenOptions& opts) : sched_(sched), opts_(opts) {
    manifest.name = "generated_text";
  }

  // Turns one LLM response into utterances. Returns the number added.
  std::size_t absorb(std::size_t generation, std::string_view content) {
    auto parsed = parse_dialogue(content);
    std::map<std::string, std::string> speaker_of_label;
    std::map<std::string, Gender> gender_of_label;
    std::size_t added = 0;
    for (std::size_t t = 0; t < parsed.turns.size(); ++t) {
      if (manifest.entries.size() >= sched_.target_utterances) break;
      const auto& turn = parsed.turns[t];
      auto it = speaker_of_label.find(turn.speaker_label);
      if (it == speaker_of_label.end()) {
        const auto k = speaker_of_label.size();
        const Gender g = (generation + k) % 2 == 0 ? Gender::F : Gender::M;
        auto& counter = g == Gender::F ? next_f_ : next_m_;
        char id[48];
        std::snprintf(id, sizeof id, "gen-%s-%03zu", g == Gender::F ? "F" : "M",
                      counter++ % static_cast<std::size_t>(opts_.speakers_per_gender));
        it = speaker_of_label.emplace(turn.speaker_label, id).first;
        gender_of_label[turn.speaker_label] = g;
      }
      Utterance u;
      char uid[48];
      std::snprintf(uid, sizeof uid, "gen-%06zu-%03zu", generation, t);
      u.id = uid;
      u.speaker_id = it->second;
      u.gender = gender_of_label[turn.speaker_label];
      u.split = Split::train;
      u.text = turn.text;
      u.duration_s = static_cast<double>(std::max<std::size_t>(normalized_length(turn.text), 1)) /
                     opts_.chars_per_second;
      u.origin = Origin::generated_text;
      manifest.entries.push_back(std::move(u));
      ++added;
    }
    return added;
  }

  Manifest manifest;

 private:
  const PromptSchedule& sched_;
  const TextgenOptions& opts_;
  std::size_t next_f_ = 0;
  std::size_t next_m_ = 0;
};

// Complete checkpoint entries, in generation order. A torn final line (no
// trailing LF or bad JSON) is ignored.
std::vector<std::string> load_checkpoint(const std::filesystem::path& path) {
  std::vector<std::string> contents;
  if (!std::filesystem::exists(path)) return contents;
  const auto data = read_file(path);
  std::size_t pos = 0;
  while (pos < data.size()) {
    const auto end = data.find('\n', pos);
    if (end == std::string::npos) break;
    json j;
    try {
      j = json::parse(std::string_view(data).substr(pos, end - pos));
    } catch (const json::parse_error&) {
      break;
    }
    if (!j.is_object() || j.value("generation", -1) != static_cast<long long>(contents.size()) ||
        !j.contains("content") || !j.at("content").is_string()) {
      throw ParseError(path.string(), contents.size() + 1, "checkpoint entry out of sequence");
    }
    contents.push_back(j.at("content").get<std::string>());
    pos = end + 1;
  }
  return contents;
}

}  // namespace

Manifest run_textgen(const PromptSchedule& sched, LlmBackend& llm, const TextgenOptions& opts) {
  validate(sched);
  if (opts.speakers_per_gender < 1) throw InvalidArgument("textgen: speakers per gender must be >= 1");
  if (!(opts.chars_per_second > 0.0)) throw InvalidArgument("textgen: chars per second must be > 0");

  TextgenState state(sched, opts);
  std::size_t generation = 0;
  std::ofstream ckpt;
  if (opts.checkpoint) {
    const auto done = load_checkpoint(*opts.checkpoint);
    std::string valid;
    for (const auto& content : done) {
      state.absorb(generation, content);
      ordered_json j;
      j["generation"] = generation;
      j["content"] = content;
      valid += j.dump() + "\n";
      ++generation;
    }
    write_file(*opts.checkpoint, valid);
    ckpt.open(*opts.checkpoint, std::ios::binary | std::ios::app);
    if (!ckpt) throw Error("cannot open checkpoint '" + opts.checkpoint->string() + "'");
  }

  constexpr int kMaxBarrenCalls = 25;
  int barren = 0;
  while (state.manifest.entries.size() < sched.target_utterances) {
    auto req = schedule_messages(schedule_step(generation, sched), sched);
    req.request_id = "textgen-" + std::to_string(generation);
    req.seed = derive_seed(opts.seed, req.request_id);
    const auto res = llm.generate_text(req);
    if (ckpt.is_open()) {
      ordered_json j;
      j["generation"] = generation;
      j["content"] = res.content;
      ckpt << j.dump() << '\n';
      ckpt.flush();
    }
    if (state.absorb(generation, res.content) == 0) {
      if (++barren >= kMaxBarrenCalls) {
        throw Error("textgen: " + std::to_string(kMaxBarrenCalls) +
                    " consecutive generations produced no dialogue turns");
      }
    } else {
      barren = 0;
    }
    ++generation;
  }
  return std::move(state.manifest);
}

}  // namespace corpusforge

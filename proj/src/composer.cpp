#include "corpusforge/composer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/selection.hpp"

namespace corpusforge {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kPlanFormat = "corpusforge.pairing_plan/1";

std::string cell_name(Gender g, Split s) {
  return std::string(to_string(g)) + "/" + std::string(to_string(s));
}

std::string pair_key(std::string_view text_id, std::string_view speaker_id) {
  std::string k(text_id);
  k += '\x1f';
  k += speaker_id;
  return k;
}

}  // namespace

double PairingPlan::planned_hours() const noexcept {
  double s = 0.0;
  for (const auto& p : pairs) s += p.planned_duration_s;
  return s / 3600.0;
}

void validate(const PairingPlan& plan, const Manifest& texts, const VoiceCatalog& catalog) {
  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const auto& u : texts.entries) by_id.emplace(u.id, &u);
  std::unordered_set<std::string> seen;
  for (const auto& p : plan.pairs) {
    auto t = by_id.find(p.text_id);
    if (t == by_id.end()) throw InvariantError("pairing plan: unknown text id '" + p.text_id + "'");
    auto v = catalog.voices.find(p.voice_speaker_id);
    if (v == catalog.voices.end()) {
      throw InvariantError("pairing plan: unknown voice speaker '" + p.voice_speaker_id + "'");
    }
    const auto& voice = v->second.utterance;
    if (voice.gender != t->second->gender || voice.split != t->second->split) {
      throw InvariantError("pairing plan: text '" + p.text_id + "' (" +
                           cell_name(t->second->gender, t->second->split) + ") paired with speaker '" +
                           p.voice_speaker_id + "' (" + cell_name(voice.gender, voice.split) + ")");
    }
    if (!seen.insert(pair_key(p.text_id, p.voice_speaker_id)).second) {
      throw InvariantError("pairing plan: duplicate pair (" + p.text_id + ", " + p.voice_speaker_id + ")");
    }
  }
}

std::string serialize_plan(const PairingPlan& plan) {
  ordered_json header;
  header["format"] = kPlanFormat;
  header["seed"] = plan.seed;
  std::string out = header.dump() + "\n";
  for (const auto& p : plan.pairs) {
    ordered_json j;
    j["text_id"] = p.text_id;
    j["voice_speaker_id"] = p.voice_speaker_id;
    j["planned_duration_s"] = p.planned_duration_s;
    out += j.dump();
    out += '\n';
  }
  return out;
}

PairingPlan parse_plan(std::string_view contents, const std::string& source) {
  PairingPlan plan;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < contents.size()) {
    ++line_no;
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const auto line = contents.substr(pos, end - pos);
    pos = end + 1;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    try {
      if (!have_header) {
        if (j.value("format", "") != kPlanFormat) {
          throw ParseError(source, line_no, "missing pairing plan header");
        }
        plan.seed = j.at("seed").get<std::uint64_t>();
        have_header = true;
        continue;
      }
      Pairing p;
      p.text_id = j.at("text_id").get<std::string>();
      p.voice_speaker_id = j.at("voice_speaker_id").get<std::string>();
      p.planned_duration_s = j.at("planned_duration_s").get<double>();
      plan.pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(source, 1, "missing pairing plan header");
  return plan;
}

PairingPlan read_plan(const std::filesystem::path& path) {
  return parse_plan(read_file(path), path.string());
}

void write_plan(const PairingPlan& plan, const std::filesystem::path& path) {
  write_file(path, serialize_plan(plan));
}

PairingPlan plan_pairings(const Manifest& texts, const VoiceCatalog& catalog, double target_hours,
                          std::uint64_t seed) {
  if (!(target_hours >= 0.0)) throw InvalidArgument("plan-pairings: target hours must be >= 0");

  std::map<std::pair<Gender, Split>, std::vector<std::string_view>> cells;
  for (const auto& [speaker, entry] : catalog.voices) {
    cells[{entry.utterance.gender, entry.utterance.split}].push_back(speaker);
  }
  std::size_t total_pairs = 0;
  std::vector<const std::vector<std::string_view>*> text_cell(texts.entries.size());
  for (std::size_t i = 0; i < texts.entries.size(); ++i) {
    const auto& u = texts.entries[i];
    auto it = cells.find({u.gender, u.split});
    if (it == cells.end() || it->second.empty()) {
      throw InvalidArgument("plan-pairings: no catalog voice for cell " + cell_name(u.gender, u.split) +
                            " (needed by text '" + u.id + "')");
    }
    text_cell[i] = &it->second;
    total_pairs += it->second.size();
  }

  PairingPlan plan;
  plan.seed = seed;
  const double target_s = target_hours * 3600.0;
  double planned_s = 0.0;
  std::unordered_set<std::string> used;
  Rng rng(derive_seed(seed, "plan-pairings"));
  // Relative slack so a target equal to the summed durations is reachable.
  const double stop_s = target_s * (1.0 - 1e-12);
  while (planned_s < stop_s) {
    if (used.size() == total_pairs) {
      throw InvalidArgument("plan-pairings: all " + std::to_string(total_pairs) +
                            " distinct text/voice pairs used before reaching " +
                            std::to_string(target_hours) + " h");
    }
    const auto t = static_cast<std::size_t>(rng.below(texts.entries.size()));
    const auto& cell = *text_cell[t];
    const auto speaker = cell[rng.below(cell.size())];
    const auto& text = texts.entries[t];
    if (!used.insert(pair_key(text.id, speaker)).second) continue;
    plan.pairs.push_back({text.id, std::string(speaker), text.duration_s});
    planned_s += text.duration_s;
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Recipes

void validate(const Recipe& r) {
  if (!(r.synth_hours >= 0.0) || !(r.real_hours >= 0.0)) {
    throw InvalidArgument("recipe '" + r.name + "': hour targets must be >= 0");
  }
  if (!(r.synth_hours + r.real_hours > 0.0)) {
    throw InvalidArgument("recipe '" + r.name + "': synth_hours + real_hours must be > 0");
  }
}

Recipe parse_recipe(std::string_view json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": invalid JSON: " + e.what());
  }
  Recipe r;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& k = it.key();
      if (k != "name" && k != "synth_hours" && k != "real_hours" && k != "synth_source" &&
          k != "real_source" && k != "split" && k != "seed") {
        throw ParseError(source + ": unknown recipe field '" + k + "'");
      }
    }
    r.name = j.value("name", std::string("recipe"));
    r.synth_hours = j.value("synth_hours", 0.0);
    r.real_hours = j.value("real_hours", 0.0);
    r.synth_source = j.value("synth_source", std::string());
    r.real_source = j.value("real_source", std::string());
    if (j.contains("split") && !j.at("split").is_null()) r.split = parse_split(j.at("split").get<std::string>());
    r.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  validate(r);
  return r;
}

Recipe read_recipe(const std::filesystem::path& path) {
  return parse_recipe(read_file(path), path.string());
}

std::string serialize_recipe(const Recipe& r) {
  ordered_json j;
  j["name"] = r.name;
  j["synth_hours"] = r.synth_hours;
  j["real_hours"] = r.real_hours;
  j["synth_source"] = r.synth_source;
  j["real_source"] = r.real_source;
  if (r.split) j["split"] = to_string(*r.split);
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

namespace {
constexpr std::string_view kRecipePresets[] = {"mix-350-10", "mix-330-30", "mix-300-60",
                                               "mix-710-10", "mix-710-60"};
}

std::span<const std::string_view> recipe_preset_names() noexcept { return kRecipePresets; }

Recipe recipe_preset(std::string_view name) {
  auto make = [&](double s, double r) {
    Recipe rec;
    rec.name = std::string(name);
    rec.synth_hours = s;
    rec.real_hours = r;
    rec.split = Split::train;
    return rec;
  };
  if (name == "mix-350-10") return make(350, 10);
  if (name == "mix-330-30") return make(330, 30);
  if (name == "mix-300-60") return make(300, 60);
  if (name == "mix-710-10") return make(710, 10);
  if (name == "mix-710-60") return make(710, 60);
  throw InvalidArgument("unknown recipe preset '" + std::string(name) + "'");
}

namespace {

Manifest take_component(const Manifest& source, const std::optional<Split>& split, double hours,
                        std::uint64_t seed, std::string_view what) {
  std::vector<Utterance> pool;
  for (const auto& u : source.entries) {
    if (!split || u.split == *split) pool.push_back(u);
  }
  if (hours <= 0.0) return {};
  auto r = take_round_robin(pool, hours, seed);
  if (r.exhausted) {
    const double have = total_seconds(pool) / 3600.0;
    throw InvalidArgument("compose: insufficient " + std::string(what) + " material: need " +
                          std::to_string(hours) + " h, source '" + source.name + "' has " +
                          std::to_string(have) + " h (shortfall " + std::to_string(hours - have) + " h)");
  }
  return std::move(r.selected);
}

}  // namespace

ComposeResult compose_hybrid(const Recipe& recipe, const Manifest& synth, const Manifest& real) {
  validate(recipe);
  auto s = take_component(synth, recipe.split, recipe.synth_hours, derive_seed(recipe.seed, "synth"),
                          "synthetic");
  auto r = take_component(real, recipe.split, recipe.real_hours, derive_seed(recipe.seed, "real"), "real");

  ComposeResult out;
  out.manifest.name = recipe.name;
  out.synth_hours = total_hours(s);
  out.real_hours = total_hours(r);
  out.manifest.entries = std::move(s.entries);
  out.manifest.entries.insert(out.manifest.entries.end(), std::make_move_iterator(r.entries.begin()),
                              std::make_move_iterator(r.entries.end()));
  validate(out.manifest);
  return out;
}

bool verify_nesting(const Manifest& smaller, const Manifest& larger) {
  std::set<std::string_view> big;
  for (const auto& u : larger.entries) big.insert(u.id);
  std::set<std::string_view> small;
  for (const auto& u : smaller.entries) {
    if (!big.count(u.id)) return false;
    small.insert(u.id);
  }
  return small.size() < big.size();
}

}  // namespace corpusforge

#include "corpusforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "corpusforge/backends.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/report.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/textgen.hpp"

namespace corpusforge {

using nlohmann::json;

std::uint64_t stage_seed(std::uint64_t global_seed, std::string_view stage) {
  return derive_seed(global_seed, stage);
}

// ---------------------------------------------------------------------------
// Config file

namespace {

template <typename T>
void read_into(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "': " + e.what());
  }
}

const json& section(const json& root, const char* key, const std::string& where) {
  static const json empty = json::object();
  if (!root.contains(key)) return empty;
  const auto& s = root.at(key);
  if (!s.is_object()) throw ParseError(where + ": '" + key + "' must be an object");
  return s;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      throw ParseError(where + ": unknown config field '" + it.key() + "'");
    }
  }
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  const auto where = path.string();
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": invalid JSON: " + e.what());
  }
  if (!root.is_object()) throw ParseError(where + ": config must be a JSON object");
  check_keys(root, {"seed", "workers", "backends", "gv", "duration_filter", "finetune", "voices", "textgen"},
             where);

  PipelineConfig c;
  read_into(root, "seed", c.seed, where);
  read_into(root, "workers", c.workers, where);

  const auto& b = section(root, "backends", where);
  check_keys(b, {"tts", "asr", "llm", "max_in_flight", "retries"}, where + " backends");
  read_into(b, "tts", c.tts_backend, where);
  read_into(b, "asr", c.asr_backend, where);
  read_into(b, "llm", c.llm_backend, where);
  read_into(b, "max_in_flight", c.max_in_flight, where);
  read_into(b, "retries", c.retries, where);

  const auto& gv = section(root, "gv", where);
  check_keys(gv, {"threshold", "max_attempts", "temperature"}, where + " gv");
  read_into(gv, "threshold", c.gv.wer_threshold, where);
  read_into(gv, "max_attempts", c.gv.max_attempts, where);
  read_into(gv, "temperature", c.gv.temperature, where);

  const auto& df = section(root, "duration_filter", where);
  check_keys(df, {"lower", "upper", "preset"}, where + " duration_filter");
  if (df.contains("preset")) c.duration_filter = duration_preset(df.at("preset").get<std::string>());
  read_into(df, "lower", c.duration_filter.lower, where);
  read_into(df, "upper", c.duration_filter.upper, where);

  const auto& ft = section(root, "finetune", where);
  check_keys(ft, {"hours", "min_dur", "max_dur", "trim", "bin_width"}, where + " finetune");
  read_into(ft, "hours", c.finetune.target_hours, where);
  read_into(ft, "min_dur", c.finetune.duration.min_s, where);
  read_into(ft, "max_dur", c.finetune.duration.max_s, where);
  read_into(ft, "trim", c.finetune.rate_trim_fraction, where);
  read_into(ft, "bin_width", c.finetune.duration_bin_width_s, where);

  const auto& vs = section(root, "voices", where);
  check_keys(vs, {"min_dur", "max_dur", "pct_lo", "pct_hi"}, where + " voices");
  read_into(vs, "min_dur", c.voices.duration.min_s, where);
  read_into(vs, "max_dur", c.voices.duration.max_s, where);
  read_into(vs, "pct_lo", c.voices.pct_lo, where);
  read_into(vs, "pct_hi", c.voices.pct_hi, where);

  const auto& tg = section(root, "textgen", where);
  check_keys(tg, {"prompts", "batch", "target"}, where + " textgen");
  if (tg.contains("prompts")) {
    std::filesystem::path p = tg.at("prompts").get<std::string>();
    c.prompts_dir = p.is_relative() ? path.parent_path() / p : p;
    if (!std::filesystem::is_directory(c.prompts_dir)) {
      throw InvalidArgument(where + ": prompts directory '" + c.prompts_dir.string() + "' does not exist");
    }
  }
  read_into(tg, "batch", c.batch_size, where);
  read_into(tg, "target", c.target_utterances, where);

  if (c.workers < 1) throw InvalidArgument(where + ": workers must be >= 1");
  if (c.max_in_flight < 1) throw InvalidArgument(where + ": backends.max_in_flight must be >= 1");
  if (c.retries < 0) throw InvalidArgument(where + ": backends.retries must be >= 0");
  if (c.batch_size < 1) throw InvalidArgument(where + ": textgen.batch must be >= 1");
  validate(c.gv);
  validate(c.duration_filter);
  validate(c.finetune);
  validate(c.voices);
  return c;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e, out_, err_);
      return code == 0 ? 0 : 2;
    }
    try {
      apply_config();
      action_();
      return exit_code_;
    } catch (const CLI::ParseError& e) {
      app_.exit(e, out_, err_);
      return 2;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return 1;
    }
  }

 private:
  // Registers a config-overridable option: when the flag is absent the
  // config file value is copied in.
  template <typename T, typename Get>
  CLI::Option* conf(CLI::App* sub, const std::string& name, T& target, Get get, const std::string& help) {
    auto* opt = sub->add_option(name, target, help)->capture_default_str();
    overrides_.push_back([opt, &target, get](const PipelineConfig& file) {
      if (opt->count() == 0) target = get(file);
    });
    return opt;
  }

  void build() {
    app_.name("corpusforge");
    app_.description("Synthetic speech corpus pipeline: selection, generator-verifier filtering, composition, reporting.");
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.set_version_flag("--version", "corpusforge 0.1.0");

    app_.add_option("--config", config_path_, "JSON config file; flags override it")->check(CLI::ExistingFile);
    auto* seed = app_.add_option("--seed", cfg_.seed, "Global seed; each stage derives its own")->capture_default_str();
    overrides_.push_back([seed, this](const PipelineConfig& f) { if (seed->count() == 0) cfg_.seed = f.seed; });
    auto* workers = app_.add_option("--workers", cfg_.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    overrides_.push_back([workers, this](const PipelineConfig& f) { if (workers->count() == 0) cfg_.workers = f.workers; });
    app_.add_option("--backend", backend_all_, "Default backend for tts/asr/llm: http:// URL or mock[:params]");

    build_select_finetune();
    build_pick_voices();
    build_plan_pairings();
    build_synthesize();
    build_filter_duration();
    build_compose();
    build_verify_nesting();
    build_gen_text();
    build_evaluate();
    build_summary();
    build_gv_report();
  }

  void apply_config() {
    if (config_path_.empty()) return;
    const auto file = load_config(config_path_);
    for (auto& f : overrides_) f(file);
  }

  std::string backend_spec(const std::string& flag, const char* env, const char* what) const {
    if (!flag.empty()) return flag;
    if (const char* v = std::getenv(env); v && *v) return v;
    if (!backend_all_.empty()) return backend_all_;
    throw InvalidArgument(std::string("no ") + what + " backend configured (use --" + what + ", --backend or " + env + ")");
  }

  HttpOptions http_options() const {
    HttpOptions o;
    o.max_in_flight = cfg_.max_in_flight;
    o.retry.max_retries = cfg_.retries;
    o.inline_reference_audio = inline_audio_;
    o.audio_dir = audio_dir_;
    return o;
  }

  void build_select_finetune() {
    auto* sub = app_.add_subcommand("select-finetune", "Select the TTS finetuning subset");
    sub->add_option("--manifest", in_, "Input manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "Output manifest")->required();
    conf(sub, "--hours", cfg_.finetune.target_hours, [](auto& f) { return f.finetune.target_hours; }, "Target hours");
    conf(sub, "--min-dur", cfg_.finetune.duration.min_s, [](auto& f) { return f.finetune.duration.min_s; }, "Minimum duration (s)");
    conf(sub, "--max-dur", cfg_.finetune.duration.max_s, [](auto& f) { return f.finetune.duration.max_s; }, "Maximum duration (s)");
    conf(sub, "--trim", cfg_.finetune.rate_trim_fraction, [](auto& f) { return f.finetune.rate_trim_fraction; }, "Text-length trim fraction per duration bin");
    conf(sub, "--bin-width", cfg_.finetune.duration_bin_width_s, [](auto& f) { return f.finetune.duration_bin_width_s; }, "Duration bin width (s)");
    sub->callback([this] { action_ = [this] { select_finetune(); }; });
  }

  void select_finetune() {
    auto m = read_manifest(in_);
    auto c = cfg_.finetune;
    c.seed = stage_seed(cfg_.seed, "select-finetune");
    auto r = select_finetune_subset(m, c);
    write_manifest(r.selected, out_path_);
    out_ << "selected " << r.selected.entries.size() << " utterances, " << total_hours(r.selected) << " h\n";
    if (r.exhausted) err_ << "warning: pool exhausted before reaching " << c.target_hours << " h\n";
  }

  void build_pick_voices() {
    auto* sub = app_.add_subcommand("pick-voices", "Pick one reference utterance per speaker");
    sub->add_option("--manifest", in_, "Input manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "Output voice catalog (JSONL)")->required();
    conf(sub, "--min-dur", cfg_.voices.duration.min_s, [](auto& f) { return f.voices.duration.min_s; }, "Minimum duration (s)");
    conf(sub, "--max-dur", cfg_.voices.duration.max_s, [](auto& f) { return f.voices.duration.max_s; }, "Maximum duration (s)");
    conf(sub, "--pct-lo", cfg_.voices.pct_lo, [](auto& f) { return f.voices.pct_lo; }, "Lower text-length percentile");
    conf(sub, "--pct-hi", cfg_.voices.pct_hi, [](auto& f) { return f.voices.pct_hi; }, "Upper text-length percentile");
    sub->callback([this] { action_ = [this] { pick_voices(); }; });
  }

  void pick_voices() {
    auto m = read_manifest(in_);
    auto c = cfg_.voices;
    c.seed = stage_seed(cfg_.seed, "pick-voices");
    auto catalog = select_reference_voices(m, c);
    write_catalog(catalog, out_path_);
    std::size_t fallback = 0;
    for (const auto& [_, v] : catalog.voices) fallback += v.fallback;
    out_ << "speakers " << catalog.voices.size() << "  matched " << catalog.voices.size() - fallback
         << "  fallback " << fallback << "\n";
  }

  void build_plan_pairings() {
    auto* sub = app_.add_subcommand("plan-pairings", "Plan text/voice pairings for synthesis");
    sub->add_option("--texts", in_, "Text manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--voices", voices_path_, "Voice catalog")->required()->check(CLI::ExistingFile);
    sub->add_option("--hours", hours_, "Target planned hours")->required();
    sub->add_option("--out", out_path_, "Output plan (JSONL)")->required();
    sub->callback([this] { action_ = [this] { plan(); }; });
  }

  void plan() {
    auto texts = read_manifest(in_);
    auto catalog = read_catalog(voices_path_);
    auto p = plan_pairings(texts, catalog, hours_, stage_seed(cfg_.seed, "plan-pairings"));
    write_plan(p, out_path_);
    out_ << "planned " << p.pairs.size() << " pairs, " << p.planned_hours() << " h\n";
  }

  void build_synthesize() {
    auto* sub = app_.add_subcommand("synthesize", "Generator-verifier synthesis of a pairing plan");
    sub->add_option("--texts", in_, "Text manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--voices", voices_path_, "Voice catalog")->required()->check(CLI::ExistingFile);
    sub->add_option("--pairing", plan_path_, "Pairing plan")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "Output synthetic manifest")->required();
    sub->add_option("--records", records_path_, "Output generation records")->required();
    conf(sub, "--threshold", cfg_.gv.wer_threshold, [](auto& f) { return f.gv.wer_threshold; }, "WER rejection threshold");
    conf(sub, "--max-attempts", cfg_.gv.max_attempts, [](auto& f) { return f.gv.max_attempts; }, "Generation attempts per utterance");
    conf(sub, "--temperature", cfg_.gv.temperature, [](auto& f) { return f.gv.temperature; }, "TTS sampling temperature");
    conf(sub, "--tts", tts_, [](auto& f) { return f.tts_backend; }, "TTS backend: http:// URL or mock[:rate=..,jitter=..,fail=..,seed=..]");
    conf(sub, "--asr", asr_, [](auto& f) { return f.asr_backend; }, "Verifier backend: http:// URL or mock[:echo|corrupt|flaky|silence|fail,...]");
    conf(sub, "--max-in-flight", cfg_.max_in_flight, [](auto& f) { return f.max_in_flight; }, "Concurrent requests per backend");
    conf(sub, "--retries", cfg_.retries, [](auto& f) { return f.retries; }, "Transport retries per request");
    sub->add_flag("--keep-rejected", keep_rejected_, "Include best rejected attempts in the output");
    sub->add_flag("--inline-audio", inline_audio_, "Send reference audio inline (base64)");
    sub->add_option("--audio-dir", audio_dir_, "Where inline audio returned by the TTS is stored");
    sub->callback([this] { action_ = [this] { synthesize(); }; });
  }

  void synthesize() {
    auto texts = read_manifest(in_);
    auto catalog = read_catalog(voices_path_);
    auto plan = read_plan(plan_path_);
    auto tts = make_tts_backend(backend_spec(tts_, "CORPUSFORGE_TTS_URL", "tts"), http_options());
    auto asr = make_asr_backend(backend_spec(asr_, "CORPUSFORGE_ASR_URL", "asr"), http_options());
    auto gv = cfg_.gv;
    gv.seed = stage_seed(cfg_.seed, "synthesize");
    auto r = run_gv_pipeline(texts, catalog, plan, gv, *tts, *asr, {cfg_.workers, keep_rejected_});
    write_manifest(r.output, out_path_);
    write_records(r.records, records_path_);
    out_ << "accepted " << r.summary.accepted << "  rejected " << r.summary.rejected << "  errored "
         << r.summary.errored << "  planned " << plan.planned_hours() << " h  realized "
         << total_hours(r.output) << " h\n";
  }

  void build_filter_duration() {
    auto* sub = app_.add_subcommand("filter-duration", "Keep synthetic utterances whose duration ratio is in band");
    sub->add_option("--synth", in_, "Synthetic manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--texts", texts_path_, "Source text manifest (reference durations)")->required()->check(CLI::ExistingFile);
    sub->add_option("--records", records_path_, "Generation records linking synthetic ids to texts")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "Output manifest")->required();
    sub->add_option("--preset", preset_, "Bounds preset: loose, medium or strict");
    conf(sub, "--lower", cfg_.duration_filter.lower, [](auto& f) { return f.duration_filter.lower; }, "Lower ratio bound");
    conf(sub, "--upper", cfg_.duration_filter.upper, [](auto& f) { return f.duration_filter.upper; }, "Upper ratio bound");
    sub->callback([this] { action_ = [this] { filter_duration(); }; });
  }

  void filter_duration() {
    auto bounds = cfg_.duration_filter;
    if (!preset_.empty()) bounds = duration_preset(preset_);
    auto synth = read_manifest(in_);
    auto texts = read_manifest(texts_path_);
    auto records = read_records(records_path_);
    std::unordered_map<std::string_view, std::string_view> text_of;
    for (const auto& r : records) text_of.emplace(r.utterance_id, r.text_id);
    std::unordered_map<std::string_view, double> ref_dur;
    for (const auto& u : texts.entries) ref_dur.emplace(u.id, u.duration_s);

    std::vector<DurationSample> samples;
    for (const auto& u : synth.entries) {
      auto t = text_of.find(u.id);
      if (t == text_of.end()) throw InvalidArgument("no generation record for '" + u.id + "'");
      auto d = ref_dur.find(t->second);
      if (d == ref_dur.end()) throw InvalidArgument("text '" + std::string(t->second) + "' not in text manifest");
      samples.push_back({u.duration_s, d->second});
    }
    Manifest kept;
    kept.name = synth.name + ".dur";
    for (auto i : duration_filter(samples, bounds, cfg_.workers)) kept.entries.push_back(synth.entries[i]);
    write_manifest(kept, out_path_);
    out_ << "kept " << kept.entries.size() << " of " << synth.entries.size() << " (ratio in [" << bounds.lower
         << ", " << bounds.upper << "])\n";
  }

  void build_compose() {
    auto* sub = app_.add_subcommand("compose", "Compose a synthetic/real hybrid training set");
    auto* recipe = sub->add_option("--recipe", recipe_path_, "Recipe JSON")->check(CLI::ExistingFile);
    sub->add_option("--preset", preset_, "Recipe preset (mix-350-10, mix-330-30, mix-300-60, mix-710-10, mix-710-60)")
        ->excludes(recipe);
    sub->add_option("--synth", synth_path_, "Synthetic source manifest (overrides the recipe)");
    sub->add_option("--real", real_path_, "Real source manifest (overrides the recipe)");
    sub->add_option("--synth-hours", synth_hours_, "Override synthetic hours");
    sub->add_option("--real-hours", real_hours_, "Override real hours");
    sub->add_option("--out", out_path_, "Output manifest")->required();
    sub->callback([this] { action_ = [this] { compose(); }; });
  }

  Manifest load_or_empty(const std::string& path) {
    if (path.empty()) return {};
    return read_manifest(path);
  }

  void compose() {
    Recipe r;
    if (!recipe_path_.empty()) {
      r = read_recipe(recipe_path_);
    } else if (!preset_.empty()) {
      r = recipe_preset(preset_);
    } else if (!synth_hours_ && !real_hours_) {
      throw CLI::RequiredError("--recipe, --preset or --synth-hours/--real-hours");
    }
    if (synth_hours_) r.synth_hours = *synth_hours_;
    if (real_hours_) r.real_hours = *real_hours_;
    if (r.name.empty()) r.name = std::filesystem::path(out_path_).stem().string();
    if (!synth_path_.empty()) r.synth_source = synth_path_;
    if (!real_path_.empty()) r.real_source = real_path_;
    const bool seed_from_flags = !config_path_.empty() || app_.get_option("--seed")->count() > 0;
    r.seed = stage_seed(seed_from_flags ? cfg_.seed : r.seed, "compose");
    auto synth = r.synth_hours > 0 ? read_manifest(r.synth_source) : load_or_empty(r.synth_source);
    auto real = r.real_hours > 0 ? read_manifest(r.real_source) : load_or_empty(r.real_source);
    auto result = compose_hybrid(r, synth, real);
    write_manifest(result.manifest, out_path_);
    out_ << r.name << ": " << result.manifest.entries.size() << " utterances, synthetic " << result.synth_hours
         << " h, real " << result.real_hours << " h\n";
  }

  void build_verify_nesting() {
    auto* sub = app_.add_subcommand("verify-nesting", "Check that the first manifest is a strict subset of the second");
    sub->add_option("smaller", in_, "Smaller manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("larger", texts_path_, "Larger manifest")->required()->check(CLI::ExistingFile);
    sub->callback([this] { action_ = [this] { nesting(); }; });
  }

  void nesting() {
    const bool nested = verify_nesting(read_manifest(in_), read_manifest(texts_path_));
    out_ << (nested ? "nested" : "not nested") << "\n";
    exit_code_ = nested ? 0 : 1;
  }

  void build_gen_text() {
    auto* sub = app_.add_subcommand("gen-text", "Generate dialogue texts with the rotating prompt schedule");
    conf(sub, "--schedule", prompts_dir_, [](auto& f) { return f.prompts_dir.string(); }, "Prompt directory");
    conf(sub, "--target", cfg_.target_utterances, [](auto& f) { return f.target_utterances; }, "Utterances to generate");
    conf(sub, "--batch", cfg_.batch_size, [](auto& f) { return f.batch_size; }, "Generations per schedule step");
    conf(sub, "--llm", llm_, [](auto& f) { return f.llm_backend; }, "LLM backend: http:// URL or mock[:template,turns=..,seed=..]");
    sub->add_option("--out", out_path_, "Output manifest")->required();
    sub->add_option("--checkpoint", checkpoint_, "Checkpoint file for resuming");
    sub->add_option("--speakers-per-gender", speakers_per_gender_, "Synthetic speaker pool per gender")->capture_default_str();
    sub->callback([this] { action_ = [this] { gen_text(); }; });
  }

  void gen_text() {
    auto sched = load_schedule(prompts_dir_);
    sched.batch_size = cfg_.batch_size;
    sched.target_utterances = cfg_.target_utterances;
    auto llm = make_llm_backend(backend_spec(llm_, "CORPUSFORGE_LLM_URL", "llm"), http_options());
    TextgenOptions opts;
    opts.seed = stage_seed(cfg_.seed, "gen-text");
    opts.speakers_per_gender = speakers_per_gender_;
    if (!checkpoint_.empty()) opts.checkpoint = checkpoint_;
    auto m = run_textgen(sched, *llm, opts);
    write_manifest(m, out_path_);
    out_ << "generated " << m.entries.size() << " utterances, estimated " << total_hours(m) << " h\n";
  }

  void build_evaluate() {
    auto* sub = app_.add_subcommand("evaluate", "WER table by split and gender from an id/text hypothesis file");
    sub->add_option("--manifest", in_, "Reference manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--hyps", hyps_path_, "Hypotheses: '<id> <text>' per line")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "JSON report");
    sub->add_option("--label", label_, "Row label for the rendered table");
    sub->callback([this] { action_ = [this] { evaluate_cmd(); }; });
  }

  void evaluate_cmd() {
    auto m = read_manifest(in_);
    auto pairs = make_eval_pairs(read_hypotheses(hyps_path_), m);
    auto table = evaluate(pairs, m, cfg_.workers);
    const auto label = label_.empty() ? m.name : label_;
    const auto rendered = render_wer_table(table, label);
    out_ << rendered;
    if (!out_path_.empty()) {
      nlohmann::ordered_json j;
      j["label"] = label;
      j["pairs"] = pairs.size();
      j["table"] = to_json(table);
      j["rendered"] = rendered;
      write_file(out_path_, j.dump(2) + "\n");
    }
  }

  void build_summary() {
    auto* sub = app_.add_subcommand("summary", "Per-split corpus statistics");
    sub->add_option("--manifest", in_, "Manifest")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "JSON output");
    sub->callback([this] { action_ = [this] { summary(); }; });
  }

  void summary() {
    auto s = corpus_summary(read_manifest(in_));
    out_ << render_summary(s);
    if (!out_path_.empty()) write_file(out_path_, to_json(s).dump(2) + "\n");
  }

  void build_gv_report() {
    auto* sub = app_.add_subcommand("gv-report", "Generator-verifier acceptance statistics");
    sub->add_option("--records", records_path_, "Generation records")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path_, "JSON output");
    conf(sub, "--max-attempts", cfg_.gv.max_attempts, [](auto& f) { return f.gv.max_attempts; }, "Histogram width");
    sub->callback([this] { action_ = [this] { gv_report_cmd(); }; });
  }

  void gv_report_cmd() {
    auto records = read_records(records_path_);
    auto stats = gv_report(records, cfg_.gv.max_attempts);
    out_ << render_gv_report(stats);
    if (!out_path_.empty()) write_file(out_path_, to_json(stats).dump(2) + "\n");
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_;
  std::function<void()> action_ = [] {};
  std::vector<std::function<void(const PipelineConfig&)>> overrides_;
  int exit_code_ = 0;

  PipelineConfig cfg_;
  std::string config_path_;
  std::string backend_all_;
  std::string tts_, asr_, llm_;
  std::string in_, out_path_, voices_path_, plan_path_, records_path_, texts_path_, hyps_path_;
  std::string recipe_path_, synth_path_, real_path_, preset_, label_, checkpoint_, audio_dir_ = ".";
  std::string prompts_dir_ = CORPUSFORGE_DEFAULT_PROMPTS;
  std::optional<double> synth_hours_, real_hours_;
  double hours_ = 0.0;
  bool keep_rejected_ = false;
  bool inline_audio_ = false;
  int speakers_per_gender_ = 50;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace corpusforge

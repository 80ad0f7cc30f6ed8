#include "corpusforge/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_map>

#include <omp.h>

#include "corpusforge/error.hpp"
#include "corpusforge/textnorm.hpp"
#include "corpusforge/wer.hpp"

namespace corpusforge {

using nlohmann::ordered_json;

double WerCounts::wer() const noexcept {
  return static_cast<double>(edits()) / static_cast<double>(std::max<std::size_t>(ref_words, 1));
}

WerCounts& WerCounts::operator+=(const WerCounts& o) noexcept {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_words += o.ref_words;
  utterances += o.utterances;
  return *this;
}

std::map<std::string, std::string> parse_hypotheses(std::string_view contents, const std::string& source) {
  std::map<std::string, std::string> hyps;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    ++line_no;
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    auto line = trim(contents.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    const auto sep = line.find_first_of(" \t");
    std::string id(line.substr(0, sep));
    std::string text(sep == std::string_view::npos ? std::string_view{} : trim(line.substr(sep)));
    if (!hyps.emplace(id, std::move(text)).second) {
      throw ParseError(source, line_no, "duplicate hypothesis for '" + id + "'");
    }
  }
  return hyps;
}

std::map<std::string, std::string> read_hypotheses(const std::filesystem::path& path) {
  return parse_hypotheses(read_file(path), path.string());
}

std::vector<EvalPair> make_eval_pairs(const std::map<std::string, std::string>& hyps, const Manifest& m) {
  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const auto& u : m.entries) by_id.emplace(u.id, &u);
  std::vector<EvalPair> pairs;
  pairs.reserve(hyps.size());
  for (const auto& [id, text] : hyps) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw InvalidArgument("hypothesis id '" + id + "' is not in manifest '" + m.name + "'");
    pairs.push_back({id, it->second->text, text});
  }
  return pairs;
}

namespace {

struct PairResult {
  Split split;
  Gender gender;
  WerCounts counts;
};

std::vector<const Utterance*> resolve(std::span<const EvalPair> pairs, const Manifest& m) {
  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const auto& u : m.entries) by_id.emplace(u.id, &u);
  std::vector<const Utterance*> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    auto it = by_id.find(p.utterance_id);
    if (it == by_id.end()) {
      throw InvalidArgument("evaluation pair '" + p.utterance_id + "' does not resolve in manifest '" + m.name + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

PairResult score(const EvalPair& p, const Utterance& u) {
  const auto b = wer_text(p.ref_text, p.hyp_text);
  return {u.split, u.gender, {b.substitutions, b.deletions, b.insertions, b.ref_len, 1}};
}

WerTable reduce(std::span<const PairResult> results) {
  WerTable t;
  for (const auto& r : results) {
    t.cells[{r.split, r.gender}] += r.counts;
    t.overall[r.split] += r.counts;
  }
  return t;
}

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string pad_right(std::string s, std::size_t width) {
  const auto len = utf8_length(s);
  if (len < width) s.append(width - len, ' ');
  return s;
}

}  // namespace

WerTable evaluate_serial(std::span<const EvalPair> pairs, const Manifest& m) {
  const auto utts = resolve(pairs, m);
  std::vector<PairResult> results;
  results.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) results.push_back(score(pairs[i], *utts[i]));
  return reduce(results);
}

WerTable evaluate(std::span<const EvalPair> pairs, const Manifest& m, int workers) {
  const auto utts = resolve(pairs, m);
  std::vector<PairResult> results(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = score(pairs[i], *utts[i]);
  return reduce(results);
}

std::string render_wer_table(const WerTable& t, std::string_view row_label) {
  const std::size_t label_w = std::max<std::size_t>(utf8_length(row_label), 12) + 2;
  constexpr std::size_t col_w = 8;
  std::string out = pad_right("%WER", label_w);
  for (auto h : {"dev_F", "dev_M", "test_F", "test_M", "dev", "test"}) out += pad_left(h, col_w);
  out += '\n';
  out += pad_right(std::string(row_label), label_w);
  auto cell = [&](const WerCounts* c) {
    out += pad_left(c && c->utterances ? fmt1(100.0 * c->wer()) : std::string("-"), col_w);
  };
  for (auto split : {Split::dev, Split::test}) {
    for (auto g : kAllGenders) {
      auto it = t.cells.find({split, g});
      cell(it == t.cells.end() ? nullptr : &it->second);
    }
  }
  for (auto split : {Split::dev, Split::test}) {
    auto it = t.overall.find(split);
    cell(it == t.overall.end() ? nullptr : &it->second);
  }
  out += '\n';
  return out;
}

static ordered_json counts_json(const WerCounts& c) {
  ordered_json j;
  j["utterances"] = c.utterances;
  j["ref_words"] = c.ref_words;
  j["substitutions"] = c.substitutions;
  j["deletions"] = c.deletions;
  j["insertions"] = c.insertions;
  j["wer"] = c.wer();
  return j;
}

ordered_json to_json(const WerTable& t) {
  ordered_json j;
  ordered_json cells = ordered_json::object();
  for (const auto& [key, c] : t.cells) {
    cells[std::string(to_string(key.first)) + "_" + std::string(to_string(key.second))] = counts_json(c);
  }
  ordered_json overall = ordered_json::object();
  for (const auto& [split, c] : t.overall) overall[std::string(to_string(split))] = counts_json(c);
  j["cells"] = std::move(cells);
  j["overall"] = std::move(overall);
  return j;
}

// ---------------------------------------------------------------------------
// Corpus summary

CorpusSummary corpus_summary(const Manifest& m) {
  CorpusSummary s;
  s.name = m.name;
  struct Acc {
    std::vector<const Utterance*> utts;
    std::map<std::string_view, Gender> speakers;
    double utmos_sum = 0.0;
    std::size_t utmos_n = 0;
  };
  std::map<Split, Acc> acc;
  for (auto split : kAllSplits) acc[split];
  for (const auto& u : m.entries) {
    auto& a = acc[u.split];
    a.utts.push_back(&u);
    a.speakers.emplace(u.speaker_id, u.gender);
    if (u.utmos) {
      a.utmos_sum += *u.utmos;
      ++a.utmos_n;
    }
  }
  for (auto& [split, a] : acc) {
    std::sort(a.utts.begin(), a.utts.end(), [](auto* x, auto* y) { return x->id < y->id; });
    SplitSummary row;
    double total_s = 0.0;
    double female_s = 0.0;
    for (const auto* u : a.utts) {
      total_s += u->duration_s;
      if (u->gender == Gender::F) female_s += u->duration_s;
      row.words += normalize(u->text).tokens.size();
    }
    row.utterances = a.utts.size();
    row.hours = total_s / 3600.0;
    row.speakers = a.speakers.size();
    const auto female_speakers = static_cast<std::size_t>(
        std::count_if(a.speakers.begin(), a.speakers.end(), [](const auto& kv) { return kv.second == Gender::F; }));
    row.female_speaker_pct = row.speakers ? 100.0 * static_cast<double>(female_speakers) / static_cast<double>(row.speakers) : 0.0;
    row.female_duration_pct = total_s > 0.0 ? 100.0 * female_s / total_s : 0.0;
    if (a.utmos_n) row.utmos_mean = a.utmos_sum / static_cast<double>(a.utmos_n);
    s.splits[split] = row;
  }
  return s;
}

std::string render_summary(const CorpusSummary& s) {
  std::string out;
  const char* headers[] = {"Dur.(h)", "N.utt", "N.words", "N.spk", "Fem.spk(%)", "Fem.dur(%)", "utMOS"};
  constexpr std::size_t widths[] = {9, 9, 10, 7, 12, 12, 7};
  out += pad_right("Split", 7);
  for (std::size_t i = 0; i < std::size(headers); ++i) out += pad_left(headers[i], widths[i]);
  out += '\n';
  for (auto split : {Split::dev, Split::test, Split::train}) {
    const auto& r = s.splits.at(split);
    out += pad_right(std::string(to_string(split)), 7);
    out += pad_left(fmt1(r.hours), widths[0]);
    out += pad_left(std::to_string(r.utterances), widths[1]);
    out += pad_left(std::to_string(r.words), widths[2]);
    out += pad_left(std::to_string(r.speakers), widths[3]);
    out += pad_left(fmt1(r.female_speaker_pct), widths[4]);
    out += pad_left(fmt1(r.female_duration_pct), widths[5]);
    char utmos[16] = "-";
    if (r.utmos_mean) std::snprintf(utmos, sizeof utmos, "%.2f", *r.utmos_mean);
    out += pad_left(utmos, widths[6]);
    out += '\n';
  }
  return out;
}

ordered_json to_json(const CorpusSummary& s) {
  ordered_json j;
  j["name"] = s.name;
  ordered_json splits = ordered_json::object();
  for (auto split : {Split::dev, Split::test, Split::train}) {
    const auto& r = s.splits.at(split);
    ordered_json row;
    row["hours"] = r.hours;
    row["utterances"] = r.utterances;
    row["words"] = r.words;
    row["speakers"] = r.speakers;
    row["female_speaker_pct"] = r.female_speaker_pct;
    row["female_duration_pct"] = r.female_duration_pct;
    row["utmos_mean"] = r.utmos_mean ? ordered_json(*r.utmos_mean) : ordered_json(nullptr);
    splits[std::string(to_string(split))] = std::move(row);
  }
  j["splits"] = std::move(splits);
  return j;
}

// ---------------------------------------------------------------------------
// Generator-verifier audit

namespace {

WerDistribution distribution(std::vector<double> v) {
  WerDistribution d;
  d.count = v.size();
  if (v.empty()) return d;
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  d.mean = sum / static_cast<double>(v.size());
  d.min = v.front();
  d.max = v.back();
  const auto n = v.size();
  d.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return d;
}

ordered_json dist_json(const WerDistribution& d) {
  ordered_json j;
  j["count"] = d.count;
  j["mean"] = d.mean;
  j["min"] = d.min;
  j["median"] = d.median;
  j["max"] = d.max;
  return j;
}

}  // namespace

GvStats gv_report(std::span<const GenerationRecord> records, int max_attempts) {
  GvStats s;
  std::size_t longest = static_cast<std::size_t>(std::max(max_attempts, 1));
  for (const auto& r : records) longest = std::max(longest, r.attempts.size());
  s.attempts_histogram.assign(longest, 0);
  std::vector<double> acc_wer;
  std::vector<double> rej_wer;
  for (const auto& r : records) {
    ++s.total;
    switch (r.status) {
      case GenerationStatus::accepted: ++s.accepted; break;
      case GenerationStatus::rejected: ++s.rejected; break;
      case GenerationStatus::error: ++s.errored; continue;
    }
    if (!r.attempts.empty()) ++s.attempts_histogram[r.attempts.size() - 1];
    if (const auto* c = r.chosen()) (r.accepted() ? acc_wer : rej_wer).push_back(c->wer);
  }
  s.acceptance_rate = s.total ? static_cast<double>(s.accepted) / static_cast<double>(s.total) : 0.0;
  s.accepted_wer = distribution(std::move(acc_wer));
  s.rejected_wer = distribution(std::move(rej_wer));
  return s;
}

std::string render_gv_report(const GvStats& s) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "records %zu  accepted %zu  rejected %zu  errored %zu  acceptance %.1f%%\n",
                s.total, s.accepted, s.rejected, s.errored, 100.0 * s.acceptance_rate);
  out += buf;
  out += "attempts  records\n";
  for (std::size_t k = 0; k < s.attempts_histogram.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%8zu  %7zu\n", k + 1, s.attempts_histogram[k]);
    out += buf;
  }
  auto line = [&](const char* name, const WerDistribution& d) {
    std::snprintf(buf, sizeof buf, "%s %%WER  n=%zu  mean %.1f  min %.1f  median %.1f  max %.1f\n", name,
                  d.count, 100.0 * d.mean, 100.0 * d.min, 100.0 * d.median, 100.0 * d.max);
    out += buf;
  };
  line("accepted", s.accepted_wer);
  line("rejected", s.rejected_wer);
  return out;
}

ordered_json to_json(const GvStats& s) {
  ordered_json j;
  j["total"] = s.total;
  j["accepted"] = s.accepted;
  j["rejected"] = s.rejected;
  j["errored"] = s.errored;
  j["acceptance_rate"] = s.acceptance_rate;
  j["attempts_histogram"] = s.attempts_histogram;
  j["accepted_wer"] = dist_json(s.accepted_wer);
  j["rejected_wer"] = dist_json(s.rejected_wer);
  return j;
}

}  // namespace corpusforge

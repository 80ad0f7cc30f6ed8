#include "corpusforge/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>

#include "corpusforge/error.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/textnorm.hpp"

namespace corpusforge {

void validate(const FinetuneSelectionConfig& cfg) {
  if (!(cfg.duration.min_s < cfg.duration.max_s)) {
    throw InvalidArgument("finetune selection: min duration must be < max duration");
  }
  if (!(cfg.rate_trim_fraction >= 0.0 && cfg.rate_trim_fraction < 0.5)) {
    throw InvalidArgument("finetune selection: trim fraction must lie in [0, 0.5)");
  }
  if (!(cfg.duration_bin_width_s > 0.0)) {
    throw InvalidArgument("finetune selection: duration bin width must be > 0");
  }
  if (!(cfg.target_hours >= 0.0)) throw InvalidArgument("finetune selection: negative target hours");
}

void validate(const VoiceSelectionConfig& cfg) {
  if (!(cfg.duration.min_s > 0.0 && cfg.duration.min_s < cfg.duration.max_s)) {
    throw InvalidArgument("voice selection: need 0 < min duration < max duration");
  }
  if (!(cfg.pct_lo >= 0.0 && cfg.pct_lo < cfg.pct_hi && cfg.pct_hi <= 100.0)) {
    throw InvalidArgument("voice selection: need 0 <= pct-lo < pct-hi <= 100");
  }
}

std::vector<std::size_t> round_robin_order(std::span<const Utterance> entries, std::uint64_t seed) {
  std::map<std::string_view, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < entries.size(); ++i) by_speaker[entries[i].speaker_id].push_back(i);

  std::vector<std::string_view> speakers;
  speakers.reserve(by_speaker.size());
  for (auto& [speaker, idx] : by_speaker) {
    speakers.push_back(speaker);
    Rng rng(derive_seed(seed, speaker));
    rng.shuffle(std::span(idx));
  }
  Rng speaker_rng(derive_seed(seed, "speaker-order"));
  speaker_rng.shuffle(std::span(speakers));

  std::vector<std::size_t> order;
  order.reserve(entries.size());
  for (std::size_t pass = 0; order.size() < entries.size(); ++pass) {
    for (auto speaker : speakers) {
      const auto& idx = by_speaker[speaker];
      if (pass < idx.size()) order.push_back(idx[pass]);
    }
  }
  return order;
}

SelectionResult take_round_robin(std::span<const Utterance> entries, double target_hours,
                                 std::uint64_t seed) {
  SelectionResult r;
  const double target_s = target_hours * 3600.0;
  double total_s = 0.0;
  if (target_s <= 0.0) return r;
  for (auto i : round_robin_order(entries, seed)) {
    r.selected.entries.push_back(entries[i]);
    total_s += entries[i].duration_s;
    if (total_s >= target_s) return r;
  }
  r.exhausted = true;
  return r;
}

std::vector<Utterance> finetune_candidates(const Manifest& m, const FinetuneSelectionConfig& cfg) {
  validate(cfg);
  struct Item {
    std::size_t index;
    std::size_t text_len;
  };
  std::map<long long, std::vector<Item>> bins;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const auto& u = m.entries[i];
    if (!cfg.duration.contains(u.duration_s)) continue;
    const auto bin = static_cast<long long>(std::floor(u.duration_s / cfg.duration_bin_width_s));
    bins[bin].push_back({i, normalized_length(u.text)});
  }

  std::vector<std::size_t> keep;
  for (auto& [bin, items] : bins) {
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
      if (a.text_len != b.text_len) return a.text_len < b.text_len;
      return m.entries[a.index].id < m.entries[b.index].id;
    });
    const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(items.size()) *
                                                       cfg.rate_trim_fraction));
    for (std::size_t j = k; j + k < items.size(); ++j) keep.push_back(items[j].index);
  }
  std::sort(keep.begin(), keep.end());

  std::vector<Utterance> out;
  out.reserve(keep.size());
  for (auto i : keep) out.push_back(m.entries[i]);
  return out;
}

SelectionResult select_finetune_subset(const Manifest& m, const FinetuneSelectionConfig& cfg) {
  const auto pool = finetune_candidates(m, cfg);
  auto r = take_round_robin(pool, cfg.target_hours, cfg.seed);
  r.selected.name = m.name + ".finetune";
  return r;
}

// ---------------------------------------------------------------------------
// Reference voices

std::size_t nearest_rank_value(std::span<const std::size_t> sorted, double pct) {
  if (sorted.empty()) throw InvalidArgument("percentile of an empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

TextLengthDistribution::TextLengthDistribution(std::vector<std::size_t> lengths)
    : sorted(std::move(lengths)) {
  std::sort(sorted.begin(), sorted.end());
}

double TextLengthDistribution::percentile_rank(std::size_t len) const {
  if (sorted.empty()) return 0.0;
  const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), len) - sorted.begin();
  return 100.0 * static_cast<double>(at_or_below) / static_cast<double>(sorted.size());
}

double violation_score(double duration_s, std::size_t text_len, const TextLengthDistribution& dist,
                       const VoiceSelectionConfig& cfg) {
  const double dmin = cfg.duration.min_s;
  const double dmax = cfg.duration.max_s;
  const double dur_term = std::max({0.0, (dmin - duration_s) / dmin, (duration_s - dmax) / dmax});

  double pct_term = 0.0;
  const auto lo_value = dist.value_at(cfg.pct_lo);
  const auto hi_value = dist.value_at(cfg.pct_hi);
  if (text_len < lo_value || text_len > hi_value) {
    const double p = dist.percentile_rank(text_len);
    pct_term = std::max({0.0, (cfg.pct_lo - p) / 100.0, (p - cfg.pct_hi) / 100.0});
  }
  return dur_term + pct_term;
}

VoiceCatalog select_reference_voices(const Manifest& m, const VoiceSelectionConfig& cfg) {
  validate(cfg);
  VoiceCatalog catalog;
  if (m.entries.empty()) return catalog;

  std::vector<std::size_t> lengths;
  lengths.reserve(m.entries.size());
  for (const auto& u : m.entries) lengths.push_back(normalized_length(u.text));
  const TextLengthDistribution dist(lengths);
  const auto lo_value = dist.value_at(cfg.pct_lo);
  const auto hi_value = dist.value_at(cfg.pct_hi);

  std::map<std::string_view, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < m.entries.size(); ++i) by_speaker[m.entries[i].speaker_id].push_back(i);

  for (auto& [speaker, idx] : by_speaker) {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return m.entries[a].id < m.entries[b].id; });
    std::vector<std::size_t> candidates;
    for (auto i : idx) {
      const auto& u = m.entries[i];
      if (cfg.duration.contains(u.duration_s) && lengths[i] >= lo_value && lengths[i] <= hi_value) {
        candidates.push_back(i);
      }
    }

    VoiceEntry entry;
    if (!candidates.empty()) {
      Rng rng(derive_seed(cfg.seed, speaker));
      entry.utterance = m.entries[candidates[rng.below(candidates.size())]];
    } else {
      std::size_t best = idx.front();
      double best_score = violation_score(m.entries[best].duration_s, lengths[best], dist, cfg);
      for (auto i : idx) {
        const double s = violation_score(m.entries[i].duration_s, lengths[i], dist, cfg);
        if (s < best_score) {  // idx is id-sorted, so ties keep the smaller id
          best = i;
          best_score = s;
        }
      }
      entry.utterance = m.entries[best];
      entry.fallback = true;
    }
    catalog.voices.emplace(std::string(speaker), std::move(entry));
  }
  return catalog;
}

}  // namespace corpusforge

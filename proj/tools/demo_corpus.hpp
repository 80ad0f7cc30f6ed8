#pragma once

// Deterministic toy corpora with the shape of a hearings corpus: speakers
// confined to one split, mixed genders, 2-20 s utterances whose text length
// tracks duration. Used by the demo tool and the test suites.

#include <cstdio>
#include <string>

#include "corpusforge/manifest.hpp"
#include "corpusforge/rng.hpp"

namespace corpusforge::demo {

struct CorpusShape {
  std::string prefix = "spk";
  int train_speakers = 20;
  int dev_speakers = 4;
  int test_speakers = 4;
  int utterances_per_speaker = 20;
  double min_duration_s = 2.0;
  double max_duration_s = 20.0;
  std::uint64_t seed = 1;
};

inline constexpr const char* kVocabulary[] = {
    "le",        "président", "de",        "la",        "commission", "madame",     "monsieur",
    "juge",      "nomination", "processus", "tribunal", "administratif", "québec",  "témoin",
    "oui",       "non",       "exactement", "dossier",  "ministre",   "comité",     "sélection",
    "critères",  "influence", "politique", "candidat",  "avocat",     "bâtonnier",  "l'avocat",
    "aujourd'hui", "peut-être", "deux",    "mille",     "douze",      "article",    "loi",
    "document",  "déposé",    "ville",     "montréal",  "parti",      "financement", "éthique",
    "transparence", "responsabilité", "je", "crois",    "que",        "c'est",      "vrai"};

inline std::string make_text(Rng& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kVocabulary[rng.below(std::size(kVocabulary))];
  }
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s += '.';
  return s;
}

inline Manifest make_corpus(const CorpusShape& shape) {
  Manifest m;
  m.name = shape.prefix;
  Rng rng(shape.seed);
  int speaker_index = 0;
  auto add_split = [&](Split split, int speakers) {
    for (int s = 0; s < speakers; ++s, ++speaker_index) {
      char sid[64];
      std::snprintf(sid, sizeof sid, "%s-%s-%03d", shape.prefix.c_str(), std::string(to_string(split)).c_str(), s);
      const Gender g = speaker_index % 2 == 0 ? Gender::F : Gender::M;
      for (int k = 0; k < shape.utterances_per_speaker; ++k) {
        Utterance u;
        char uid[96];
        std::snprintf(uid, sizeof uid, "%s-u%04d", sid, k);
        u.id = uid;
        u.speaker_id = sid;
        u.gender = g;
        u.split = split;
        u.duration_s = shape.min_duration_s + (shape.max_duration_s - shape.min_duration_s) * rng.uniform();
        u.duration_s = static_cast<double>(static_cast<long long>(u.duration_s * 100.0)) / 100.0;
        const double words_per_s = 2.0 + 1.5 * rng.uniform();
        u.text = make_text(rng, static_cast<std::size_t>(u.duration_s * words_per_s) + 1);
        u.audio_ref = std::string("audio/") + uid + ".wav";
        u.origin = Origin::real;
        m.entries.push_back(std::move(u));
      }
    }
  };
  add_split(Split::train, shape.train_speakers);
  add_split(Split::dev, shape.dev_speakers);
  add_split(Split::test, shape.test_speakers);
  return m;
}

}  // namespace corpusforge::demo

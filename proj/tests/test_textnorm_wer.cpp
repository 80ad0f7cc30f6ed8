#include <doctest.h>

#include "corpusforge/textnorm.hpp"
#include "corpusforge/wer.hpp"
#include "corpusforge/rng.hpp"
#include "oracle.hpp"

using namespace corpusforge;

static std::vector<std::string> toks(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

TEST_CASE("normalization examples") {
  CHECK(normalize("Président : Bonjour, Madame.").joined() == "président bonjour madame");
  CHECK(normalize("L'avocat, oui.").tokens == toks({"l'avocat", "oui"}));
  CHECK(normalize("L’avocat").tokens == toks({"l'avocat"}));
  CHECK(normalize("peut-être -- non").tokens == toks({"peut-être", "non"}));
  CHECK(normalize("« Oui »   ' - '").tokens == toks({"oui"}));
  CHECK(normalize("ÉCOLE").joined() == "école");
  CHECK(normalize("école").joined() == "école");
  CHECK(normalize("en 2012").tokens == toks({"en", "2012"}));
  CHECK(normalize("").empty());
  CHECK(normalize(" ... ").empty());
}

TEST_CASE("normalized length counts code points") {
  CHECK(normalized_length("Été !") == 3);
  CHECK(normalized_length("a b") == 3);
  CHECK(utf8_length("é") == 1);
}

TEST_CASE("normalization is idempotent") {
  const char* samples[] = {"Président : «Bonjour» !", "L'AVOCAT—peut-être…", "  x  y  ", "Ça va? Oui; non.",
                           "d’accord - fin", "12,5 % des votes", "Œuvre ÇA", "'quote' -dash-"};
  for (const char* s : samples) {
    auto once = normalize(s).joined();
    CHECK(normalize(once).joined() == once);
  }
}

TEST_CASE("wer worked example") {
  auto b = wer(toks({"le", "juge", "est", "nommé"}), toks({"le", "juges", "nommé"}));
  CHECK(b.substitutions == 1);
  CHECK(b.deletions == 1);
  CHECK(b.insertions == 0);
  CHECK(b.ref_len == 4);
  CHECK(b.wer == doctest::Approx(0.5));
}

TEST_CASE("wer on the single-letter example") {
  auto b = wer(toks({"a", "b", "c", "d"}), toks({"a", "x", "c"}));
  CHECK(b.substitutions == 1);
  CHECK(b.deletions == 1);
  CHECK(b.insertions == 0);
  CHECK(b.wer == doctest::Approx(0.5));
  CHECK(wer(toks({"a", "b"}), toks({"a", "b"})).wer == 0.0);
}

TEST_CASE("normalization is idempotent on random strings") {
  const char* pieces[] = {"a", "É", "é", "e\xCC\x81", "'", "’", "-", "‐", " ", "\t", ",", ".", "«", "»", "ß", "Œ", "7",
                          "?", "ﬁ", "İ", "ǅ", "—", "…", "\xC2\xA0", "x", "Ç", "_", "\"", "ʼ"};
  corpusforge::Rng r(12);
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const auto len = r.below(20);
    for (std::uint64_t k = 0; k < len; ++k) s += pieces[r.below(std::size(pieces))];
    const auto once = normalize(s);
    REQUIRE(normalize(once.joined()) == once);
    for (const auto& t : once.tokens) {
      REQUIRE(!t.empty());
      REQUIRE(t.find(' ') == std::string::npos);
    }
  }
}

TEST_CASE("wer edge cases") {
  CHECK(wer(toks({}), toks({})).wer == 0.0);
  auto ins = wer(toks({}), toks({"a", "b"}));
  CHECK(ins.insertions == 2);
  CHECK(ins.wer == doctest::Approx(2.0));
  auto over = wer(toks({"a"}), toks({"b", "c", "d"}));
  CHECK(over.wer == doctest::Approx(3.0));
  CHECK(wer(toks({"a", "b"}), toks({})).deletions == 2);
  CHECK(wer_text("Le juge.", "le JUGE").wer == 0.0);
}

TEST_CASE("wer tie-breaking prefers substitution over deletion plus insertion") {
  auto b = wer(toks({"a", "b"}), toks({"b", "a"}));
  CHECK(b.edits() == 2);
  CHECK(b.substitutions == 2);
}

TEST_CASE("wer agrees with the oracle on a small exhaustive set") {
  auto seqs = oracle::all_sequences(3, 3);
  CHECK(seqs.size() == 40);
  for (const auto& r : seqs)
    for (const auto& h : seqs) {
      auto b = wer(r, h);
      REQUIRE(b.substitutions + b.deletions <= r.size());
      REQUIRE(b.edits() == oracle::edit_distance(r, h));
      REQUIRE(r.size() - b.substitutions - b.deletions == h.size() - b.substitutions - b.insertions);  // same hit count
    }
}

// Writes two toy corpora for trying the pipeline without real data:
// a small in-domain text corpus and a larger out-of-domain voice corpus.

#include <iostream>

#include <CLI11.hpp>

#include "demo_corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app("Write toy corpora for the corpusforge demo");
  std::string out_dir = "data/demo";
  std::uint64_t seed = 1;
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  using namespace corpusforge;
  try {
    std::filesystem::create_directories(out_dir);
    demo::CorpusShape texts{"bast", 12, 3, 3, 25, 2.0, 20.0, seed};
    demo::CorpusShape voices{"charb", 30, 6, 6, 20, 2.0, 20.0, seed + 1};
    auto t = demo::make_corpus(texts);
    auto v = demo::make_corpus(voices);
    write_manifest(t, std::filesystem::path(out_dir) / "bast.jsonl");
    write_manifest(v, std::filesystem::path(out_dir) / "charb.jsonl");
    std::cout << "bast: " << t.entries.size() << " utterances, " << total_hours(t) << " h\n"
              << "charb: " << v.entries.size() << " utterances, " << total_hours(v) << " h\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

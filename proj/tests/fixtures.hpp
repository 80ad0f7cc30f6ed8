#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "corpusforge/manifest.hpp"
#include "corpusforge/rng.hpp"

namespace fixtures {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("corpusforge-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline corpusforge::Utterance utt(std::string id, std::string speaker, corpusforge::Gender g,
                                  corpusforge::Split s, double dur, std::string text = "bonjour") {
  corpusforge::Utterance u;
  u.id = std::move(id);
  u.speaker_id = std::move(speaker);
  u.gender = g;
  u.split = s;
  u.duration_s = dur;
  u.text = std::move(text);
  u.audio_ref = "audio/" + u.id + ".wav";
  return u;
}

}  // namespace fixtures

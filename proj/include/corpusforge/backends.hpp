#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace corpusforge {

// Audio travels by locator (shared filesystem or object path) unless
// `inline_bytes` is set, in which case it is sent base64-encoded.
struct AudioPayload {
  std::string locator;
  std::string inline_bytes;
  bool is_inline = false;

  static AudioPayload from_locator(std::string loc) { return {std::move(loc), {}, false}; }
  static AudioPayload from_bytes(std::string bytes) { return {{}, std::move(bytes), true}; }

  friend bool operator==(const AudioPayload&, const AudioPayload&) = default;
};

struct TtsRequest {
  std::string request_id;
  std::string text;
  AudioPayload reference_audio;
  double temperature = 0.65;
  std::uint64_t seed = 0;  // sampling seed; differs per attempt
};

struct TtsResponse {
  AudioPayload audio;
  double duration_s = 0.0;
};

struct AsrRequest {
  std::string request_id;
  AudioPayload audio;
};

struct AsrResponse {
  std::string transcript;  // may be empty
};

enum class Role { system, user, assistant };
std::string_view to_string(Role r) noexcept;
Role parse_role(std::string_view s);

struct ChatMessage {
  Role role = Role::user;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct LlmRequest {
  std::string request_id;
  std::vector<ChatMessage> messages;
  std::uint64_t seed = 0;

  friend bool operator==(const LlmRequest&, const LlmRequest&) = default;
};

struct LlmResponse {
  std::string content;
};

// Client-side precondition checks; throw InvalidArgument.
void validate(const TtsRequest& r);
void validate(const AsrRequest& r);
void validate(const LlmRequest& r);

class TtsBackend {
 public:
  virtual ~TtsBackend() = default;
  virtual TtsResponse synthesize(const TtsRequest& req) = 0;
};

class AsrBackend {
 public:
  virtual ~AsrBackend() = default;
  virtual AsrResponse transcribe(const AsrRequest& req) = 0;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual LlmResponse generate_text(const LlmRequest& req) = 0;
};

// Wire format. Endpoints: POST /synthesize, POST /transcribe, POST /generate.
namespace wire {
using Json = nlohmann::ordered_json;

Json to_json(const AudioPayload& a);
AudioPayload audio_from_json(const nlohmann::json& j);

Json to_json(const TtsRequest& r);
Json to_json(const TtsResponse& r);
Json to_json(const AsrRequest& r);
Json to_json(const AsrResponse& r);
Json to_json(const LlmRequest& r);
Json to_json(const LlmResponse& r);

// All parsers throw SchemaError on a shape mismatch.
TtsRequest tts_request_from_json(const nlohmann::json& j);
TtsResponse tts_response_from_json(const nlohmann::json& j);
AsrRequest asr_request_from_json(const nlohmann::json& j);
AsrResponse asr_response_from_json(const nlohmann::json& j);
LlmRequest llm_request_from_json(const nlohmann::json& j);
LlmResponse llm_response_from_json(const nlohmann::json& j);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);
}  // namespace wire

// Caps the number of concurrent calls through one backend instance.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(int window);

  class Slot {
   public:
    explicit Slot(InFlightLimiter& l) : limiter_(l) { limiter_.acquire(); }
    ~Slot() { limiter_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    InFlightLimiter& limiter_;
  };

  int window() const noexcept { return window_; }
  int peak() const noexcept { return peak_.load(); }

 private:
  void acquire();
  void release();

  int window_;
  int in_flight_ = 0;
  std::atomic<int> peak_{0};
  std::mutex mu_;
  std::condition_variable cv_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{200};
  double multiplier = 2.0;
};

struct HttpOptions {
  std::string base_url;  // e.g. http://127.0.0.1:8080
  RetryPolicy retry;
  int max_in_flight = 4;
  std::chrono::seconds timeout{120};
  // TTS only: read the reference audio file and send it inline.
  bool inline_reference_audio = false;
  // TTS only: where inline audio returned by the server is written.
  std::filesystem::path audio_dir = ".";
};

// JSON-over-HTTP POST with bounded retries. Connection failures and
// 408/429/5xx statuses are retried with exponential backoff; other statuses
// and malformed bodies raise SchemaError immediately.
class HttpJsonClient {
 public:
  explicit HttpJsonClient(HttpOptions opts);

  nlohmann::json post(const std::string& path, const std::string& body);
  const HttpOptions& options() const noexcept { return opts_; }
  int attempts_made() const noexcept { return attempts_.load(); }

 private:
  HttpOptions opts_;
  InFlightLimiter limiter_;
  std::atomic<int> attempts_{0};
};

class HttpTtsClient final : public TtsBackend {
 public:
  explicit HttpTtsClient(HttpOptions opts) : client_(std::move(opts)) {}
  TtsResponse synthesize(const TtsRequest& req) override;
  HttpJsonClient& client() noexcept { return client_; }

 private:
  HttpJsonClient client_;
};

class HttpAsrClient final : public AsrBackend {
 public:
  explicit HttpAsrClient(HttpOptions opts) : client_(std::move(opts)) {}
  AsrResponse transcribe(const AsrRequest& req) override;
  HttpJsonClient& client() noexcept { return client_; }

 private:
  HttpJsonClient client_;
};

class HttpLlmClient final : public LlmBackend {
 public:
  explicit HttpLlmClient(HttpOptions opts) : client_(std::move(opts)) {}
  LlmResponse generate_text(const LlmRequest& req) override;
  HttpJsonClient& client() noexcept { return client_; }

 private:
  HttpJsonClient client_;
};

// ---------------------------------------------------------------------------
// Deterministic mocks. Randomness is a pure function of (mock seed, request),
// so identical requests always get identical responses.

// Mock audio is a locator that carries its source text:
//   mock-audio:<request_id>?text=<percent-encoded text>
std::string make_mock_audio_locator(std::string_view request_id, std::string_view text);
// Returns the embedded text, or nullopt for a foreign locator.
std::optional<std::string> mock_audio_text(std::string_view locator);

struct MockTtsParams {
  double chars_per_second = 15.0;
  double jitter = 0.0;       // duration scaled by (1 + jitter * u), u ~ U[-1, 1)
  double fail_rate = 0.0;    // fraction of texts that always raise TransportError
  std::uint64_t seed = 0;
};

// duration = normalized_length(text) / rate * (1 + jitter)
class MockTts final : public TtsBackend {
 public:
  explicit MockTts(MockTtsParams p = {}) : p_(p) {}
  TtsResponse synthesize(const TtsRequest& req) override;
  bool hard_fails(std::string_view text) const noexcept;
  const MockTtsParams& params() const noexcept { return p_; }

 private:
  MockTtsParams p_;
};

enum class MockAsrMode { echo, corrupt, flaky, silence, fail };

struct MockAsrParams {
  MockAsrMode mode = MockAsrMode::echo;
  // corrupt: i.i.d. per-word rates
  double substitution = 0.0;
  double deletion = 0.0;
  double insertion = 0.0;
  // flaky: probability the transcript is exact; otherwise one word is inserted
  double success_probability = 0.5;
  std::uint64_t seed = 0;
};

class MockAsr final : public AsrBackend {
 public:
  explicit MockAsr(MockAsrParams p = {}) : p_(p) {}
  AsrResponse transcribe(const AsrRequest& req) override;
  const MockAsrParams& params() const noexcept { return p_; }

 private:
  MockAsrParams p_;
};

struct MockLlmParams {
  int turns_per_call = 4;
  std::uint64_t seed = 0;
  bool fixed_template = false;  // same two-speaker dialogue for every request
};

// Emits a labeled two-speaker dialogue in the "Label : «text»" layout. When
// a user message asks for very short answers ("réponses très courtes"),
// every turn has at most five words. System messages are not inspected.
class MockLlm final : public LlmBackend {
 public:
  explicit MockLlm(MockLlmParams p = {}) : p_(p) {}
  LlmResponse generate_text(const LlmRequest& req) override;
  int calls() const noexcept { return calls_.load(); }

 private:
  MockLlmParams p_;
  std::atomic<int> calls_{0};
};

inline constexpr std::string_view kShortAnswersMarker = "réponses très courtes";

// Backend factories. `spec` is either an http:// URL or "mock[:k=v,...]";
// for the ASR mock the first item may name the mode, e.g. "mock:corrupt,sub=0.1".
std::unique_ptr<TtsBackend> make_tts_backend(std::string_view spec, const HttpOptions& base = {});
std::unique_ptr<AsrBackend> make_asr_backend(std::string_view spec, const HttpOptions& base = {});
std::unique_ptr<LlmBackend> make_llm_backend(std::string_view spec, const HttpOptions& base = {});

MockTtsParams parse_mock_tts(std::string_view params);
MockAsrParams parse_mock_asr(std::string_view params);
MockLlmParams parse_mock_llm(std::string_view params);

}  // namespace corpusforge

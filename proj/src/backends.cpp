#include "corpusforge/backends.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include <boost/beast/core/detail/base64.hpp>
#include <httplib.h>

#include "corpusforge/error.hpp"
#include "corpusforge/manifest.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/textnorm.hpp"

namespace corpusforge {

using nlohmann::json;

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "?";
}

Role parse_role(std::string_view s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw InvalidArgument("invalid role '" + std::string(s) + "'");
}

void validate(const TtsRequest& r) {
  if (trim(r.text).empty()) throw InvalidArgument("tts request '" + r.request_id + "': empty text");
  if (!(r.temperature > 0.0)) {
    throw InvalidArgument("tts request '" + r.request_id + "': temperature must be > 0");
  }
  if (!r.reference_audio.is_inline && r.reference_audio.locator.empty()) {
    throw InvalidArgument("tts request '" + r.request_id + "': no reference audio");
  }
}

void validate(const AsrRequest& r) {
  if (!r.audio.is_inline && r.audio.locator.empty()) {
    throw InvalidArgument("asr request '" + r.request_id + "': no audio");
  }
}

void validate(const LlmRequest& r) {
  if (r.messages.empty()) throw InvalidArgument("llm request '" + r.request_id + "': no messages");
}

// ---------------------------------------------------------------------------
// Wire format

namespace wire {

std::string base64_encode(std::string_view bytes) {
  namespace b64 = boost::beast::detail::base64;
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::string base64_decode(std::string_view text) {
  namespace b64 = boost::beast::detail::base64;
  std::size_t body = text.size();
  while (body > 0 && text.size() - body < 2 && text[body - 1] == '=') --body;
  std::string out(b64::decoded_size(text.size()) + 3, '\0');
  auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  if (read < body) throw SchemaError("invalid base64 payload");
  out.resize(written);
  return out;
}

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": body is not a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key, const char* what) {
  const auto& v = field(j, key, what);
  if (!v.is_string()) throw SchemaError(std::string(what) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

double number_field(const json& j, const char* key, const char* what) {
  const auto& v = field(j, key, what);
  if (!v.is_number()) throw SchemaError(std::string(what) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t seed_field(const json& j, const char* what) {
  if (!j.contains("seed")) return 0;
  const auto& v = j.at("seed");
  if (!v.is_number_unsigned() && !v.is_number_integer()) {
    throw SchemaError(std::string(what) + ": field 'seed' must be an integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

Json to_json(const AudioPayload& a) {
  Json j;
  if (a.is_inline) {
    j["base64"] = base64_encode(a.inline_bytes);
  } else {
    j["locator"] = a.locator;
  }
  return j;
}

AudioPayload audio_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("audio: expected an object");
  if (j.contains("locator") && j.contains("base64")) {
    throw SchemaError("audio: exactly one of 'locator' or 'base64' is allowed");
  }
  if (j.contains("locator")) return AudioPayload::from_locator(string_field(j, "locator", "audio"));
  if (j.contains("base64")) {
    return AudioPayload::from_bytes(base64_decode(string_field(j, "base64", "audio")));
  }
  throw SchemaError("audio: needs 'locator' or 'base64'");
}

Json to_json(const TtsRequest& r) {
  Json j;
  j["request_id"] = r.request_id;
  j["text"] = r.text;
  j["reference_audio"] = to_json(r.reference_audio);
  j["temperature"] = r.temperature;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const TtsResponse& r) {
  Json j;
  j["audio"] = to_json(r.audio);
  j["duration_s"] = r.duration_s;
  return j;
}

Json to_json(const AsrRequest& r) {
  Json j;
  j["request_id"] = r.request_id;
  j["audio"] = to_json(r.audio);
  return j;
}

Json to_json(const AsrResponse& r) {
  Json j;
  j["transcript"] = r.transcript;
  return j;
}

Json to_json(const LlmRequest& r) {
  Json j;
  j["request_id"] = r.request_id;
  auto msgs = Json::array();
  for (const auto& m : r.messages) {
    Json mj;
    mj["role"] = to_string(m.role);
    mj["content"] = m.content;
    msgs.push_back(std::move(mj));
  }
  j["messages"] = std::move(msgs);
  j["seed"] = r.seed;
  return j;
}

Json to_json(const LlmResponse& r) {
  Json j;
  j["content"] = r.content;
  return j;
}

TtsRequest tts_request_from_json(const json& j) {
  TtsRequest r;
  r.request_id = string_field(j, "request_id", "synthesize request");
  r.text = string_field(j, "text", "synthesize request");
  r.reference_audio = audio_from_json(field(j, "reference_audio", "synthesize request"));
  r.temperature = number_field(j, "temperature", "synthesize request");
  r.seed = seed_field(j, "synthesize request");
  return r;
}

TtsResponse tts_response_from_json(const json& j) {
  TtsResponse r;
  r.audio = audio_from_json(field(j, "audio", "synthesize response"));
  r.duration_s = number_field(j, "duration_s", "synthesize response");
  if (!(r.duration_s > 0.0) || !std::isfinite(r.duration_s)) {
    throw SchemaError("synthesize response: duration_s must be > 0");
  }
  return r;
}

AsrRequest asr_request_from_json(const json& j) {
  AsrRequest r;
  r.request_id = string_field(j, "request_id", "transcribe request");
  r.audio = audio_from_json(field(j, "audio", "transcribe request"));
  return r;
}

AsrResponse asr_response_from_json(const json& j) {
  return AsrResponse{string_field(j, "transcript", "transcribe response")};
}

LlmRequest llm_request_from_json(const json& j) {
  LlmRequest r;
  r.request_id = string_field(j, "request_id", "generate request");
  const auto& msgs = field(j, "messages", "generate request");
  if (!msgs.is_array() || msgs.empty()) {
    throw SchemaError("generate request: 'messages' must be a non-empty array");
  }
  for (const auto& mj : msgs) {
    ChatMessage m;
    try {
      m.role = parse_role(string_field(mj, "role", "message"));
    } catch (const InvalidArgument& e) {
      throw SchemaError(std::string("message: ") + e.what());
    }
    m.content = string_field(mj, "content", "message");
    r.messages.push_back(std::move(m));
  }
  r.seed = seed_field(j, "generate request");
  return r;
}

LlmResponse llm_response_from_json(const json& j) {
  LlmResponse r{string_field(j, "content", "generate response")};
  if (trim(r.content).empty()) throw SchemaError("generate response: empty content");
  return r;
}

}  // namespace wire

// ---------------------------------------------------------------------------
// In-flight window

InFlightLimiter::InFlightLimiter(int window) : window_(window) {
  if (window_ < 1) throw InvalidArgument("in-flight window must be >= 1");
}

void InFlightLimiter::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < window_; });
  ++in_flight_;
  int prev = peak_.load();
  while (prev < in_flight_ && !peak_.compare_exchange_weak(prev, in_flight_)) {
  }
}

void InFlightLimiter::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

// ---------------------------------------------------------------------------
// HTTP clients

HttpJsonClient::HttpJsonClient(HttpOptions opts)
    : opts_(std::move(opts)), limiter_(opts_.max_in_flight) {
  if (opts_.base_url.empty()) throw InvalidArgument("backend URL is empty");
  if (opts_.retry.max_retries < 0) throw InvalidArgument("negative retry budget");
}

json HttpJsonClient::post(const std::string& path, const std::string& body) {
  InFlightLimiter::Slot slot(limiter_);
  std::string last_error;
  auto delay = opts_.retry.base_delay;
  for (int attempt = 0; attempt <= opts_.retry.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(delay.count()) * opts_.retry.multiplier));
    }
    ++attempts_;
    httplib::Client cli(opts_.base_url);
    cli.set_connection_timeout(opts_.timeout);
    cli.set_read_timeout(opts_.timeout);
    cli.set_write_timeout(opts_.timeout);
    auto res = cli.Post(path, body, "application/json");
    if (!res) {
      last_error = "request to " + opts_.base_url + path + " failed: " + httplib::to_string(res.error());
      continue;
    }
    const int status = res->status;
    if (status == 408 || status == 429 || status >= 500) {
      last_error = opts_.base_url + path + " returned HTTP " + std::to_string(status);
      continue;
    }
    if (status != 200) {
      throw SchemaError(opts_.base_url + path + " returned HTTP " + std::to_string(status) + ": " +
                        res->body.substr(0, 200));
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw SchemaError(opts_.base_url + path + " returned invalid JSON: " + e.what());
    }
  }
  throw TransportError(last_error + " (after " + std::to_string(opts_.retry.max_retries) +
                       " retries)");
}

TtsResponse HttpTtsClient::synthesize(const TtsRequest& req) {
  validate(req);
  auto body = wire::to_json(req);
  if (client_.options().inline_reference_audio && !req.reference_audio.is_inline) {
    body["reference_audio"] = wire::to_json(AudioPayload::from_bytes(read_file(req.reference_audio.locator)));
  }
  auto res = wire::tts_response_from_json(client_.post("/synthesize", body.dump()));
  if (res.audio.is_inline) {
    std::string name = req.request_id;
    std::replace(name.begin(), name.end(), '/', '_');
    std::replace(name.begin(), name.end(), '\\', '_');
    auto path = client_.options().audio_dir / (name + ".wav");
    std::filesystem::create_directories(path.parent_path());
    write_file(path, res.audio.inline_bytes);
    res.audio = AudioPayload::from_locator(path.string());
  }
  return res;
}

AsrResponse HttpAsrClient::transcribe(const AsrRequest& req) {
  validate(req);
  return wire::asr_response_from_json(client_.post("/transcribe", wire::to_json(req).dump()));
}

LlmResponse HttpLlmClient::generate_text(const LlmRequest& req) {
  validate(req);
  return wire::llm_response_from_json(client_.post("/generate", wire::to_json(req).dump()));
}

// ---------------------------------------------------------------------------
// Mocks

namespace {

bool unreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
}

std::string percent_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (unreserved(c)) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

std::optional<std::string> percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    unsigned value = 0;
    auto [p, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 3, value, 16);
    if (ec != std::errc{} || p != s.data() + i + 3) return std::nullopt;
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

constexpr std::string_view kMockAudioScheme = "mock-audio:";

std::string_view audio_key(const AudioPayload& a) {
  return a.is_inline ? std::string_view(a.inline_bytes) : std::string_view(a.locator);
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

}  // namespace

std::string make_mock_audio_locator(std::string_view request_id, std::string_view text) {
  return std::string(kMockAudioScheme) + percent_encode(request_id) + "?text=" + percent_encode(text);
}

std::optional<std::string> mock_audio_text(std::string_view locator) {
  if (!locator.starts_with(kMockAudioScheme)) return std::nullopt;
  const auto q = locator.find("?text=");
  if (q == std::string_view::npos) return std::nullopt;
  return percent_decode(locator.substr(q + 6));
}

bool MockTts::hard_fails(std::string_view text) const noexcept {
  if (p_.fail_rate <= 0.0) return false;
  Rng r(mix_seed(p_.seed ^ 0xFA11, stable_hash(text)));
  return r.uniform() < p_.fail_rate;
}

TtsResponse MockTts::synthesize(const TtsRequest& req) {
  validate(req);
  if (hard_fails(req.text)) throw TransportError("mock tts: hard failure for request '" + req.request_id + "'");
  const auto chars = std::max<std::size_t>(normalized_length(req.text), 1);
  double factor = 1.0;
  if (p_.jitter != 0.0) {
    Rng r(mix_seed(mix_seed(p_.seed, req.seed), stable_hash(req.request_id)));
    factor += p_.jitter * (2.0 * r.uniform() - 1.0);
  }
  TtsResponse res;
  res.duration_s = static_cast<double>(chars) / p_.chars_per_second * factor;
  res.audio = AudioPayload::from_locator(
      make_mock_audio_locator(req.request_id + "/" + std::to_string(req.seed), req.text));
  return res;
}

AsrResponse MockAsr::transcribe(const AsrRequest& req) {
  validate(req);
  if (p_.mode == MockAsrMode::fail) {
    throw TransportError("mock asr: unavailable for request '" + req.request_id + "'");
  }
  if (p_.mode == MockAsrMode::silence) return {};
  const auto key = audio_key(req.audio);
  auto text = mock_audio_text(key);
  if (!text) throw SchemaError("mock asr: audio was not produced by the mock tts");
  Rng rng(mix_seed(p_.seed, stable_hash(key)));

  switch (p_.mode) {
    case MockAsrMode::echo:
      return {*text};
    case MockAsrMode::flaky:
      if (rng.bernoulli(p_.success_probability)) return {*text};
      return {*text + " xyzzy"};
    case MockAsrMode::corrupt: {
      std::string out;
      auto emit = [&](std::string_view w) {
        if (!out.empty()) out += ' ';
        out += w;
      };
      for (const auto& w : split_words(*text)) {
        const double u = rng.uniform();
        if (u < p_.substitution) {
          emit("xyzzy");
        } else if (u >= p_.substitution + p_.deletion) {
          emit(w);
        }
        if (rng.bernoulli(p_.insertion)) emit("plugh");
      }
      return {out};
    }
    default:
      break;
  }
  return {};
}

namespace {

constexpr std::string_view kLabels[] = {"Président",      "Madame Tremblay", "Monsieur Giguère",
                                        "Maître Lavoie",  "Madame Côté",     "Monsieur Roy"};
constexpr std::string_view kWords[] = {
    "le",       "processus",   "de",         "nomination", "des",       "juges",     "est",
    "transparent", "selon",    "moi",        "la",         "commission", "a",        "reçu",
    "plusieurs", "documents",  "en",         "deux mille", "douze",     "oui",       "exactement",
    "je",       "crois",       "que",        "ministre",   "comité",    "critères",  "sélection",
    "tribunal", "administratif", "du",       "Québec",     "influence", "politique", "candidats",
    "témoin",   "avocat",      "ben",        "c'est",      "sûr",       "municipale", "article"};

std::string sentence(Rng& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kWords[rng.below(std::size(kWords))];
  }
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s += rng.bernoulli(0.3) ? " ?" : ".";
  return s;
}

}  // namespace

LlmResponse MockLlm::generate_text(const LlmRequest& req) {
  validate(req);
  ++calls_;
  std::uint64_t h = stable_hash(req.request_id);
  bool short_answers = false;
  for (const auto& m : req.messages) {
    h = mix_seed(h, stable_hash(m.content));
    if (m.role == Role::user && m.content.find(kShortAnswersMarker) != std::string::npos) {
      short_answers = true;
    }
  }
  Rng rng(mix_seed(mix_seed(p_.seed, req.seed), h));

  if (p_.fixed_template) {
    static constexpr std::string_view kTemplate[] = {
        "Président : «Pouvez-vous nous expliquer comment le comité a été formé ?»",
        "Madame Gagnon : «Oui. Le comité comptait trois membres, nommés en deux mille douze.»",
        "Président : «Qui les a choisis ?»",
        "Madame Gagnon : «Le ministre, sur recommandation du bâtonnier.»"};
    std::string out;
    for (int t = 0; t < p_.turns_per_call; ++t) {
      out += kTemplate[static_cast<std::size_t>(t) % std::size(kTemplate)];
      out += '\n';
    }
    return {out};
  }

  const auto a = rng.below(std::size(kLabels));
  auto b = rng.below(std::size(kLabels) - 1);
  if (b >= a) ++b;
  std::string out;
  for (int t = 0; t < p_.turns_per_call; ++t) {
    const auto label = kLabels[t % 2 == 0 ? a : b];
    const std::size_t n = short_answers ? 1 + rng.below(5) : 3 + rng.below(12);
    out += std::string(label) + " : «" + sentence(rng, n) + "»\n";
  }
  return {out};
}

// ---------------------------------------------------------------------------
// Factories

namespace {

struct MockSpec {
  std::string head;  // first bare item, e.g. "corrupt"
  std::vector<std::pair<std::string, std::string>> kv;
};

MockSpec split_params(std::string_view params) {
  MockSpec spec;
  std::size_t pos = 0;
  while (pos <= params.size() && !params.empty()) {
    auto end = params.find(',', pos);
    if (end == std::string_view::npos) end = params.size();
    auto item = trim(params.substr(pos, end - pos));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        if (!spec.head.empty() || !spec.kv.empty()) {
          throw InvalidArgument("mock parameter '" + std::string(item) + "' needs a value");
        }
        spec.head = item;
      } else {
        spec.kv.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
      }
    }
    pos = end + 1;
  }
  return spec;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw InvalidArgument("mock parameter '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw InvalidArgument("mock parameter '" + key + "': not an unsigned integer: '" + v + "'");
  }
  return out;
}

[[noreturn]] void unknown(std::string_view kind, const std::string& key) {
  throw InvalidArgument("unknown " + std::string(kind) + " mock parameter '" + key + "'");
}

void check_probability(const std::string& key, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("mock parameter '" + key + "' must lie in [0, 1]");
}

bool is_url(std::string_view spec) {
  return spec.starts_with("http://");
}

std::optional<std::string_view> mock_params(std::string_view spec) {
  if (spec == "mock") return std::string_view{};
  if (spec.starts_with("mock:")) return spec.substr(5);
  return std::nullopt;
}

HttpOptions with_url(const HttpOptions& base, std::string_view url) {
  HttpOptions o = base;
  o.base_url = std::string(url);
  return o;
}

}  // namespace

MockTtsParams parse_mock_tts(std::string_view params) {
  auto spec = split_params(params);
  if (!spec.head.empty()) unknown("tts", spec.head);
  MockTtsParams p;
  for (const auto& [k, v] : spec.kv) {
    if (k == "rate") {
      p.chars_per_second = to_double(k, v);
      if (!(p.chars_per_second > 0.0)) throw InvalidArgument("mock tts rate must be > 0");
    } else if (k == "jitter") {
      p.jitter = to_double(k, v);
      if (!(p.jitter >= 0.0 && p.jitter < 1.0)) throw InvalidArgument("mock tts jitter must lie in [0, 1)");
    } else if (k == "fail") {
      p.fail_rate = to_double(k, v);
      check_probability(k, p.fail_rate);
    } else if (k == "seed") {
      p.seed = to_u64(k, v);
    } else {
      unknown("tts", k);
    }
  }
  return p;
}

MockAsrParams parse_mock_asr(std::string_view params) {
  auto spec = split_params(params);
  MockAsrParams p;
  if (spec.head.empty() || spec.head == "echo") {
    p.mode = MockAsrMode::echo;
  } else if (spec.head == "corrupt") {
    p.mode = MockAsrMode::corrupt;
  } else if (spec.head == "flaky") {
    p.mode = MockAsrMode::flaky;
  } else if (spec.head == "silence") {
    p.mode = MockAsrMode::silence;
  } else if (spec.head == "fail") {
    p.mode = MockAsrMode::fail;
  } else {
    throw InvalidArgument("unknown asr mock mode '" + spec.head + "'");
  }
  for (const auto& [k, v] : spec.kv) {
    if (k == "sub") {
      p.substitution = to_double(k, v);
      check_probability(k, p.substitution);
    } else if (k == "del") {
      p.deletion = to_double(k, v);
      check_probability(k, p.deletion);
    } else if (k == "ins") {
      p.insertion = to_double(k, v);
      check_probability(k, p.insertion);
    } else if (k == "p") {
      p.success_probability = to_double(k, v);
      check_probability(k, p.success_probability);
    } else if (k == "seed") {
      p.seed = to_u64(k, v);
    } else {
      unknown("asr", k);
    }
  }
  if (p.substitution + p.deletion > 1.0) throw InvalidArgument("mock asr: sub + del must be <= 1");
  return p;
}

MockLlmParams parse_mock_llm(std::string_view params) {
  auto spec = split_params(params);
  if (!spec.head.empty() && spec.head != "template") unknown("llm", spec.head);
  MockLlmParams p;
  p.fixed_template = spec.head == "template";
  for (const auto& [k, v] : spec.kv) {
    if (k == "turns") {
      p.turns_per_call = static_cast<int>(to_u64(k, v));
      if (p.turns_per_call < 1) throw InvalidArgument("mock llm turns must be >= 1");
    } else if (k == "seed") {
      p.seed = to_u64(k, v);
    } else {
      unknown("llm", k);
    }
  }
  return p;
}

std::unique_ptr<TtsBackend> make_tts_backend(std::string_view spec, const HttpOptions& base) {
  if (auto params = mock_params(spec)) return std::make_unique<MockTts>(parse_mock_tts(*params));
  if (is_url(spec)) return std::make_unique<HttpTtsClient>(with_url(base, spec));
  throw InvalidArgument("tts backend must be an http:// URL or mock[:params], got '" + std::string(spec) + "'");
}

std::unique_ptr<AsrBackend> make_asr_backend(std::string_view spec, const HttpOptions& base) {
  if (auto params = mock_params(spec)) return std::make_unique<MockAsr>(parse_mock_asr(*params));
  if (is_url(spec)) return std::make_unique<HttpAsrClient>(with_url(base, spec));
  throw InvalidArgument("asr backend must be an http:// URL or mock[:params], got '" + std::string(spec) + "'");
}

std::unique_ptr<LlmBackend> make_llm_backend(std::string_view spec, const HttpOptions& base) {
  if (auto params = mock_params(spec)) return std::make_unique<MockLlm>(parse_mock_llm(*params));
  if (is_url(spec)) return std::make_unique<HttpLlmClient>(with_url(base, spec));
  throw InvalidArgument("llm backend must be an http:// URL or mock[:params], got '" + std::string(spec) + "'");
}

}  // namespace corpusforge

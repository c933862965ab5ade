#pragma once

#include <nlohmann/json.hpp>

#include <atomic>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace modulo {

struct ChatMessage {
    std::string role;  // "system", "user" or "assistant"
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct GenerationRequest {
    std::vector<ChatMessage> messages;
    std::string model;
    double temperature = 0.0;
    std::optional<int> max_tokens;
    /// Routing hint for test backends (e.g. the instance id). Not part of
    /// the cache key.
    std::string tag;
};

struct HttpError : std::runtime_error {
    int status;
    HttpError(int status, const std::string& body)
        : std::runtime_error("HTTP " + std::to_string(status) + ": " + body), status(status) {}
};

struct ScriptExhausted : std::runtime_error {
    ScriptExhausted() : std::runtime_error("scripted backend has no responses left") {}
};

struct CacheMiss : std::runtime_error {
    explicit CacheMiss(const std::string& hash)
        : std::runtime_error("no cached response for request " + hash) {}
};

struct BadConfig : std::runtime_error {
    explicit BadConfig(const std::string& what) : std::runtime_error(what) {}
};

struct MissingApiKey : std::runtime_error {
    explicit MissingApiKey(const std::string& env)
        : std::runtime_error("environment variable " + env + " is not set") {}
};

/// Canonical serialization of the fields that identify a request:
/// (model, messages, temperature, max_tokens), key-sorted.
nlohmann::json request_to_json(const GenerationRequest& req);

/// FNV-1a 64 hex digest of the canonical request JSON. Cache files store the
/// full request, so collisions are detected on replay.
std::string request_hash(const GenerationRequest& req);

class GeneratorBackend {
public:
    virtual ~GeneratorBackend() = default;
    /// Raw completion text for the request.
    virtual std::string complete(const GenerationRequest& req) = 0;
};

/// Deterministic queue of canned responses. A plain queue is single-consumer
/// (enforced); keyed scripts route by request tag and may be shared.
class ScriptedBackend : public GeneratorBackend {
public:
    explicit ScriptedBackend(std::vector<std::string> responses);
    explicit ScriptedBackend(std::map<std::string, std::vector<std::string>> keyed);

    std::string complete(const GenerationRequest& req) override;
    size_t remaining() const;

private:
    std::deque<std::string> queue_;
    std::map<std::string, std::deque<std::string>> keyed_;
    bool is_keyed_ = false;
    std::atomic<std::thread::id> owner_{};
    mutable std::mutex mutex_;
};

/// Answers from a function; the test stand-in for "a model that always ...".
class CallbackBackend : public GeneratorBackend {
public:
    using Fn = std::function<std::string(const GenerationRequest&)>;
    explicit CallbackBackend(Fn fn) : fn_(std::move(fn)) {}
    std::string complete(const GenerationRequest& req) override { return fn_(req); }

private:
    Fn fn_;
};

/// OpenAI-style chat-completions client: POST {base_url}/chat/completions
/// with a bearer token from the environment. Retries 429/5xx with capped
/// exponential backoff; retries never surface more than one response.
class HttpBackend : public GeneratorBackend {
public:
    struct Options {
        std::string base_url;
        std::string api_key_env = "OPENAI_API_KEY";
        int max_retries = 3;
        int timeout_seconds = 120;
    };

    explicit HttpBackend(Options options);
    std::string complete(const GenerationRequest& req) override;

private:
    Options options_;
    std::string api_key_;
};

/// Request-hash keyed record/replay cache. One JSON file per request under
/// the cache directory; writes are write-temp-then-rename. Without an inner
/// backend the cache is read-only and misses raise CacheMiss.
class CacheBackend : public GeneratorBackend {
public:
    CacheBackend(std::filesystem::path dir, std::shared_ptr<GeneratorBackend> inner = nullptr);
    std::string complete(const GenerationRequest& req) override;

private:
    std::filesystem::path dir_;
    std::shared_ptr<GeneratorBackend> inner_;
    std::mutex mutex_;
};

struct TranscriptEntry {
    std::string request_hash;
    nlohmann::json request;
    std::string response;
    long latency_ms = 0;
};

/// Append-only record of every prompt/completion through a backend.
struct GeneratorTranscript {
    std::vector<TranscriptEntry> entries;

    nlohmann::json to_json() const;
};

class TranscriptRecorder : public GeneratorBackend {
public:
    explicit TranscriptRecorder(std::shared_ptr<GeneratorBackend> inner);
    std::string complete(const GenerationRequest& req) override;
    GeneratorTranscript transcript() const;

private:
    std::shared_ptr<GeneratorBackend> inner_;
    GeneratorTranscript transcript_;
    mutable std::mutex mutex_;
};

/// Builds a backend from a config object:
///   {"kind":"http","url":...,"api_key_env":...}
///   {"kind":"scripted","script":<path>} or {"kind":"scripted","responses":[...]}
///   {"kind":"cache","dir":...,"mode":"record"|"replay","inner":{...}}
std::shared_ptr<GeneratorBackend> make_backend(const nlohmann::json& spec);

}  // namespace modulo

#include "modulo/generator.hpp"

#include <fmt/format.h>

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <fstream>

namespace modulo {

nlohmann::json request_to_json(const GenerationRequest& req)
{
    nlohmann::json messages = nlohmann::json::array();
    for (const ChatMessage& m : req.messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
    }
    nlohmann::json j{{"model", req.model},
                     {"messages", std::move(messages)},
                     {"temperature", req.temperature}};
    if (req.max_tokens) {
        j["max_tokens"] = *req.max_tokens;
    }
    return j;
}

std::string request_hash(const GenerationRequest& req)
{
    const std::string canonical = request_to_json(req).dump();
    uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return fmt::format("{:016x}", hash);
}

// ---------------------------------------------------------------------------
// ScriptedBackend
// ---------------------------------------------------------------------------

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses)
    : queue_(responses.begin(), responses.end())
{
}

ScriptedBackend::ScriptedBackend(std::map<std::string, std::vector<std::string>> keyed)
    : is_keyed_(true)
{
    for (auto& [key, responses] : keyed) {
        keyed_.emplace(key, std::deque<std::string>(responses.begin(), responses.end()));
    }
}

std::string ScriptedBackend::complete(const GenerationRequest& req)
{
    if (is_keyed_) {
        std::lock_guard lock(mutex_);
        auto it = keyed_.find(req.tag);
        if (it == keyed_.end() || it->second.empty()) {
            throw ScriptExhausted();
        }
        std::string response = std::move(it->second.front());
        it->second.pop_front();
        return response;
    }

    std::thread::id expected{};
    if (!owner_.compare_exchange_strong(expected, std::this_thread::get_id()) &&
        expected != std::this_thread::get_id()) {
        throw std::logic_error("scripted backend is single-consumer");
    }
    if (queue_.empty()) {
        throw ScriptExhausted();
    }
    std::string response = std::move(queue_.front());
    queue_.pop_front();
    return response;
}

size_t ScriptedBackend::remaining() const
{
    if (is_keyed_) {
        std::lock_guard lock(mutex_);
        size_t n = 0;
        for (const auto& [_, q] : keyed_) {
            n += q.size();
        }
        return n;
    }
    return queue_.size();
}

// ---------------------------------------------------------------------------
// HttpBackend
// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(Options options) : options_(std::move(options))
{
    const char* key = std::getenv(options_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
        throw MissingApiKey(options_.api_key_env);
    }
    api_key_ = key;
}

std::string HttpBackend::complete(const GenerationRequest& req)
{
    // Split "https://host[:port]/prefix" into client target and path prefix.
    std::string url = options_.base_url;
    size_t scheme = url.find("://");
    size_t path_at = scheme == std::string::npos ? url.find('/') : url.find('/', scheme + 3);
    std::string host = path_at == std::string::npos ? url : url.substr(0, path_at);
    std::string prefix = path_at == std::string::npos ? "" : url.substr(path_at);
    if (!prefix.empty() && prefix.back() == '/') {
        prefix.pop_back();
    }

    httplib::Client client(host);
    client.set_connection_timeout(options_.timeout_seconds);
    client.set_read_timeout(options_.timeout_seconds);
    client.set_bearer_token_auth(api_key_);

    const std::string body = request_to_json(req).dump();
    const std::string path = prefix + "/chat/completions";

    int last_status = 0;
    std::string last_body;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(250 << (attempt - 1)));
        }
        httplib::Result res = client.Post(path, body, "application/json");
        if (!res) {
            last_status = 0;
            last_body = "connection error: " + httplib::to_string(res.error());
            continue;
        }
        last_status = res->status;
        last_body = res->body.substr(0, 200);
        if (res->status == 429 || res->status >= 500) {
            continue;
        }
        if (res->status != 200) {
            break;
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("choices") || j["choices"].empty()) {
            throw HttpError(res->status, "malformed chat-completions response");
        }
        return j["choices"][0]["message"]["content"].get<std::string>();
    }
    throw HttpError(last_status, last_body);
}

// ---------------------------------------------------------------------------
// CacheBackend
// ---------------------------------------------------------------------------

CacheBackend::CacheBackend(std::filesystem::path dir, std::shared_ptr<GeneratorBackend> inner)
    : dir_(std::move(dir)), inner_(std::move(inner))
{
    std::filesystem::create_directories(dir_);
}

std::string CacheBackend::complete(const GenerationRequest& req)
{
    const std::string hash = request_hash(req);
    const nlohmann::json request_json = request_to_json(req);
    const std::filesystem::path file = dir_ / (hash + ".json");

    {
        std::lock_guard lock(mutex_);
        std::ifstream in(file);
        if (in) {
            nlohmann::json stored = nlohmann::json::parse(in, nullptr, false);
            if (!stored.is_discarded() && stored.contains("request") &&
                stored.contains("response")) {
                if (stored["request"] != request_json) {
                    throw std::runtime_error("cache hash collision for " + hash);
                }
                return stored["response"].get<std::string>();
            }
        }
    }

    if (inner_ == nullptr) {
        throw CacheMiss(hash);
    }
    std::string response = inner_->complete(req);

    std::lock_guard lock(mutex_);
    const std::filesystem::path tmp = dir_ / (hash + ".tmp");
    {
        std::ofstream out(tmp);
        out << nlohmann::json{{"request", request_json}, {"response", response}}.dump(2);
    }
    std::filesystem::rename(tmp, file);
    return response;
}

// ---------------------------------------------------------------------------
// TranscriptRecorder
// ---------------------------------------------------------------------------

TranscriptRecorder::TranscriptRecorder(std::shared_ptr<GeneratorBackend> inner)
    : inner_(std::move(inner))
{
}

std::string TranscriptRecorder::complete(const GenerationRequest& req)
{
    auto begin = std::chrono::steady_clock::now();
    std::string response = inner_->complete(req);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - begin);

    std::lock_guard lock(mutex_);
    transcript_.entries.push_back(
        TranscriptEntry{request_hash(req), request_to_json(req), response, elapsed.count()});
    return response;
}

GeneratorTranscript TranscriptRecorder::transcript() const
{
    std::lock_guard lock(mutex_);
    return transcript_;
}

nlohmann::json GeneratorTranscript::to_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const TranscriptEntry& e : entries) {
        out.push_back({{"request_hash", e.request_hash},
                       {"request", e.request},
                       {"response", e.response},
                       {"latency_ms", e.latency_ms}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// make_backend
// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::vector<std::string>> keyed_from_json(const nlohmann::json& j)
{
    std::map<std::string, std::vector<std::string>> keyed;
    for (const auto& [key, value] : j.items()) {
        keyed[key] = value.get<std::vector<std::string>>();
    }
    return keyed;
}

}  // namespace

std::shared_ptr<GeneratorBackend> make_backend(const nlohmann::json& spec)
{
    if (!spec.is_object() || !spec.contains("kind")) {
        throw BadConfig("backend spec must be an object with a 'kind' field");
    }
    const std::string kind = spec["kind"].get<std::string>();

    if (kind == "scripted") {
        nlohmann::json script;
        if (spec.contains("responses")) {
            script = spec["responses"];
        } else if (spec.contains("script")) {
            std::ifstream in(spec["script"].get<std::string>());
            if (!in) {
                throw BadConfig("cannot open script file " + spec["script"].get<std::string>());
            }
            script = nlohmann::json::parse(in, nullptr, false);
            if (script.is_discarded()) {
                throw BadConfig("script file is not valid JSON");
            }
        } else {
            throw BadConfig("scripted backend needs 'script' or 'responses'");
        }
        if (script.is_array()) {
            return std::make_shared<ScriptedBackend>(script.get<std::vector<std::string>>());
        }
        if (script.is_object()) {
            return std::make_shared<ScriptedBackend>(keyed_from_json(script));
        }
        throw BadConfig("script must be a JSON array or an object keyed by instance id");
    }

    if (kind == "http") {
        if (!spec.contains("url")) {
            throw BadConfig("http backend needs 'url'");
        }
        HttpBackend::Options options;
        options.base_url = spec["url"].get<std::string>();
        if (spec.contains("api_key_env")) {
            options.api_key_env = spec["api_key_env"].get<std::string>();
        }
        return std::make_shared<HttpBackend>(std::move(options));
    }

    if (kind == "cache") {
        if (!spec.contains("dir")) {
            throw BadConfig("cache backend needs 'dir'");
        }
        const std::string mode = spec.value("mode", "replay");
        std::shared_ptr<GeneratorBackend> inner;
        if (mode == "record") {
            if (!spec.contains("inner")) {
                throw BadConfig("cache record mode needs an 'inner' backend");
            }
            inner = make_backend(spec["inner"]);
        } else if (mode != "replay") {
            throw BadConfig("cache mode must be 'record' or 'replay'");
        }
        return std::make_shared<CacheBackend>(spec["dir"].get<std::string>(), std::move(inner));
    }

    throw BadConfig("unknown backend kind '" + kind + "'");
}

}  // namespace modulo

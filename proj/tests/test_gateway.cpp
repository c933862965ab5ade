#include "modulo/generator.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

using namespace modulo;

TEST_CASE("scripted backend queue semantics")
{
    ScriptedBackend backend(std::vector<std::string>{"a", "b"});
    GenerationRequest req;
    req.messages = {{"user", "hi"}};
    CHECK(backend.complete(req) == "a");
    CHECK(backend.complete(req) == "b");
    CHECK_THROWS_AS(backend.complete(req), ScriptExhausted);
}

TEST_CASE("scripted backend exhausts exactly at its script length")
{
    GenerationRequest req;
    req.messages = {{"user", "hi"}};
    for (size_t n = 0; n <= 20; ++n) {
        ScriptedBackend backend(std::vector<std::string>(n, "x"));
        for (size_t i = 0; i < n; ++i) {
            CHECK(backend.complete(req) == "x");
        }
        CHECK_THROWS_AS(backend.complete(req), ScriptExhausted);
    }
}

TEST_CASE("scripted backend routes keyed scripts by tag")
{
    ScriptedBackend backend(std::map<std::string, std::vector<std::string>>{
        {"one", {"1a", "1b"}}, {"two", {"2a"}}});
    GenerationRequest req;
    req.messages = {{"user", "hi"}};
    req.tag = "two";
    CHECK(backend.complete(req) == "2a");
    req.tag = "one";
    CHECK(backend.complete(req) == "1a");
    CHECK(backend.complete(req) == "1b");
    CHECK_THROWS_AS(backend.complete(req), ScriptExhausted);
    req.tag = "missing";
    CHECK_THROWS_AS(backend.complete(req), ScriptExhausted);
}

TEST_CASE("plain scripted backend is single-consumer")
{
    ScriptedBackend backend(std::vector<std::string>{"a", "b"});
    GenerationRequest req;
    req.messages = {{"user", "hi"}};
    backend.complete(req);

    bool threw = false;
    std::thread other([&] {
        try {
            backend.complete(req);
        } catch (const std::logic_error&) {
            threw = true;
        }
    });
    other.join();
    CHECK(threw);
}

TEST_CASE("request hash covers content but not the routing tag")
{
    GenerationRequest a;
    a.messages = {{"user", "prompt"}};
    a.model = "m";
    GenerationRequest b = a;
    b.tag = "different-tag";
    CHECK(request_hash(a) == request_hash(b));

    b.temperature = 0.5;
    CHECK(request_hash(a) != request_hash(b));
    b = a;
    b.max_tokens = 128;
    CHECK(request_hash(a) != request_hash(b));
    b = a;
    b.messages[0].content = "prompt!";
    CHECK(request_hash(a) != request_hash(b));
}

TEST_CASE("request json carries temperature 0 by default")
{
    GenerationRequest req;
    req.messages = {{"user", "hi"}};
    req.model = "m";
    nlohmann::json j = request_to_json(req);
    CHECK(j["temperature"].get<double>() == 0.0);
    CHECK(j["messages"][0]["role"] == "user");
    CHECK_FALSE(j.contains("max_tokens"));
}

TEST_CASE("cache backend records then replays byte-identically")
{
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "modulo_cache_test";
    std::filesystem::remove_all(dir);

    GenerationRequest req;
    req.messages = {{"user", "question"}};
    req.model = "m";

    {
        auto inner = std::make_shared<ScriptedBackend>(std::vector<std::string>{"answer"});
        CacheBackend recorder(dir, inner);
        CHECK(recorder.complete(req) == "answer");
        CHECK(recorder.complete(req) == "answer");  // hit, inner untouched
        CHECK(inner->remaining() == 0);
    }
    {
        CacheBackend replay(dir);  // read-only
        CHECK(replay.complete(req) == "answer");
        GenerationRequest miss = req;
        miss.messages[0].content = "another question";
        CHECK_THROWS_AS(replay.complete(miss), CacheMiss);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("transcript recorder keeps every exchange")
{
    auto inner = std::make_shared<ScriptedBackend>(std::vector<std::string>{"x", "y"});
    TranscriptRecorder recorder(inner);
    GenerationRequest req;
    req.messages = {{"user", "q"}};
    recorder.complete(req);
    recorder.complete(req);
    GeneratorTranscript transcript = recorder.transcript();
    REQUIRE(transcript.entries.size() == 2);
    CHECK(transcript.entries[0].response == "x");
    CHECK(transcript.entries[1].response == "y");
    CHECK(transcript.entries[0].request_hash == transcript.entries[1].request_hash);
}

TEST_CASE("make_backend configurations")
{
    CHECK_THROWS_AS(make_backend(nlohmann::json{{"kind", "warp-drive"}}), BadConfig);
    CHECK_THROWS_AS(make_backend(nlohmann::json::array()), BadConfig);
    CHECK_THROWS_AS(make_backend(nlohmann::json{{"kind", "scripted"}}), BadConfig);
    CHECK_THROWS_AS(make_backend(nlohmann::json{{"kind", "http"}}), BadConfig);
    CHECK_THROWS_AS(
        make_backend(nlohmann::json{{"kind", "cache"}, {"dir", "/tmp/x"}, {"mode", "record"}}),
        BadConfig);

    auto scripted = make_backend(
        nlohmann::json{{"kind", "scripted"}, {"responses", nlohmann::json::array({"one"})}});
    GenerationRequest req;
    req.messages = {{"user", "q"}};
    CHECK(scripted->complete(req) == "one");

    std::filesystem::path script =
        std::filesystem::temp_directory_path() / "modulo_script_test.json";
    {
        std::ofstream out(script);
        out << R"(["from file"])";
    }
    auto from_file =
        make_backend(nlohmann::json{{"kind", "scripted"}, {"script", script.string()}});
    CHECK(from_file->complete(req) == "from file");
    std::filesystem::remove(script);
}

TEST_CASE("http backend demands its API key")
{
    unsetenv("MODULO_TEST_MISSING_KEY");
    HttpBackend::Options options;
    options.base_url = "https://example.invalid/v1";
    options.api_key_env = "MODULO_TEST_MISSING_KEY";
    CHECK_THROWS_AS(HttpBackend{options}, MissingApiKey);
}

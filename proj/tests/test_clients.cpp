#include "meso/clients.hpp"

#include "meso/hash.hpp"
#include "meso/io.hpp"

#include <cstdlib>
#include <doctest.h>
#include <httplib.h>
#include <json.hpp>
#include <thread>

using namespace meso;

TEST_CASE("mock completion client replays canned responses by prompt hash") {
    auto dir = std::filesystem::temp_directory_path() / "meso_mock_client_test";
    std::filesystem::create_directories(dir);
    std::string prompt = "the exact prompt";
    atomic_write_file(dir / (fnv1a64_hex(prompt) + ".txt"), "canned output");

    MockCompletionClient client(dir);
    CHECK(client.complete(prompt) == "canned output");
    CHECK(client.complete(prompt) == "canned output");
    CHECK(client.model_id() == "mock");
    CHECK_THROWS_AS(client.complete("some other prompt"), ClientError);
    std::filesystem::remove_all(dir);
}

namespace {

struct TestServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    TestServer() {
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~TestServer() {
        server.stop();
        thread.join();
    }
    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

} // namespace

TEST_CASE("http completion client") {
    TestServer ts;
    std::string seen_auth, seen_model;
    ts.server.Post("/v1/complete", [&](const httplib::Request& req, httplib::Response& res) {
        seen_auth = req.get_header_value("Authorization");
        auto body = nlohmann::json::parse(req.body);
        seen_model = body["model"].get<std::string>();
        nlohmann::json reply = {{"completion", "echo: " + body["prompt"].get<std::string>()}};
        res.set_content(reply.dump(), "application/json");
    });
    ts.server.Post("/v1/broken", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
    });
    ts.server.Post("/v1/garbled", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("not json", "text/plain");
    });

    SUBCASE("round trip with bearer auth from the configured env var") {
        setenv("MESO_TEST_TOKEN", "sekrit", 1);
        HttpCompletionClient client({ts.url("/v1/complete"), "test-model", "MESO_TEST_TOKEN", 5});
        CHECK(client.complete("hello") == "echo: hello");
        CHECK(client.model_id() == "test-model");
        CHECK(seen_auth == "Bearer sekrit");
        CHECK(seen_model == "test-model");
        unsetenv("MESO_TEST_TOKEN");
    }
    SUBCASE("no auth header when the env var is unset") {
        unsetenv("MESO_UNSET_TOKEN");
        HttpCompletionClient client({ts.url("/v1/complete"), "m", "MESO_UNSET_TOKEN", 5});
        client.complete("x");
        CHECK(seen_auth.empty());
    }
    SUBCASE("non-200 status raises ClientError") {
        HttpCompletionClient client({ts.url("/v1/broken"), "m", "", 5});
        CHECK_THROWS_AS(client.complete("x"), ClientError);
    }
    SUBCASE("malformed reply raises ClientError") {
        HttpCompletionClient client({ts.url("/v1/garbled"), "m", "", 5});
        CHECK_THROWS_AS(client.complete("x"), ClientError);
    }
    SUBCASE("unreachable endpoint raises ClientError") {
        HttpCompletionClient client({"http://127.0.0.1:1/v1/complete", "m", "", 1});
        CHECK_THROWS_AS(client.complete("x"), ClientError);
    }
}

TEST_CASE("http embedder") {
    TestServer ts;
    ts.server.Post("/v1/embed", [](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        // Tiny deterministic embedding: text length and model-name length.
        nlohmann::json reply = {
            {"embedding", {body["input"].get<std::string>().size() * 1.0,
                           body["model"].get<std::string>().size() * 1.0}}};
        res.set_content(reply.dump(), "application/json");
    });
    HttpEmbedder embedder({ts.url("/v1/embed"), "embed-model", "", 5});
    EmbeddingVector v = embedder.embed("abc");
    CHECK(v == EmbeddingVector{3.0, 11.0});
    CHECK(embedder.embedder_id() == "embed-model");
}

TEST_CASE("malformed endpoint URL") {
    HttpCompletionClient client({"no scheme here", "m", "", 5});
    CHECK_THROWS_AS(client.complete("x"), ClientError);
}

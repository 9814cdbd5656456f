#include <doctest.h>

#include <aprgauntlet/error.hpp>
#include <aprgauntlet/gateway/gateway.hpp>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <thread>

using namespace aprgauntlet;
using namespace aprgauntlet::gateway;

namespace {

ModelSpec mock_model(const std::string& name = "mock-model") {
    ModelSpec m;
    m.name = name;
    m.provider = Provider::mock;
    return m;
}

ChatRequest user_request(const std::string& text, ModelSpec model = mock_model()) {
    ChatRequest r;
    r.model = std::move(model);
    r.messages.push_back({Role::user, text});
    return r;
}

// Counting fake remote: scripted per-attempt outcomes.
class FakeRemote : public RemoteGateway {
public:
    struct Attempt {
        bool transport_failed = false;
        int status = 200;
        std::string body;
    };

    explicit FakeRemote(std::vector<Attempt> attempts)
        : RemoteGateway(RetryPolicy{3, 0, 2.0}), attempts_(std::move(attempts)) {}

    int calls = 0;

protected:
    RawResult send_once(const ChatRequest&, const std::string&) override {
        const Attempt& a = attempts_[std::min<std::size_t>(calls, attempts_.size() - 1)];
        ++calls;
        RawResult r;
        r.transport_failed = a.transport_failed;
        r.error = a.transport_failed ? "connection refused" : "";
        r.status = a.status;
        r.body = a.body;
        return r;
    }

private:
    std::vector<Attempt> attempts_;
};

std::string ok_payload(const std::string& text, bool with_usage = true) {
    nlohmann::json j;
    j["choices"] = {{{"message", {{"content", text}}}, {"finish_reason", "stop"}}};
    if (with_usage) j["usage"] = {{"prompt_tokens", 11}, {"completion_tokens", 5}};
    return j.dump();
}

ModelSpec remote_model(const std::string& endpoint) {
    ModelSpec m;
    m.name = "remote-x";
    m.provider = Provider::remote_api;
    m.endpoint = endpoint;
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("gateway");

TEST_CASE("echo mock returns the last user message") {
    auto gw = MockGateway::echo();
    auto completion = gw.complete(user_request("hello"));
    CHECK(completion.text == "hello");
    CHECK(completion.finish_reason == FinishReason::stop);
    CHECK(completion.usage.estimated);
    CHECK(completion.usage.model_name == "mock-model");
}

TEST_CASE("scripted sequence plays in order then exhausts") {
    auto gw = MockGateway::with_sequence({MockGateway::ScriptEntry::text_entry("a"),
                                          MockGateway::ScriptEntry::text_entry("b")});
    CHECK(gw.complete(user_request("x")).text == "a");
    CHECK(gw.complete(user_request("x")).text == "b");
    CHECK_THROWS_AS(gw.complete(user_request("x")), Error);
}

TEST_CASE("map mode keys responses by request digest") {
    ChatRequest req = user_request("what is up");
    auto gw = MockGateway::with_map(
        {{req.digest(), MockGateway::ScriptEntry::text_entry("scripted answer")}});
    CHECK(gw.complete(req).text == "scripted answer");
    CHECK_THROWS_AS(gw.complete(user_request("unknown")), Error);
}

TEST_CASE("scripted faults raise typed errors") {
    auto gw = MockGateway::with_sequence({MockGateway::ScriptEntry::transport_error_entry(),
                                          MockGateway::ScriptEntry::refusal_error_entry("nope")});
    CHECK_THROWS_WITH_AS(gw.complete(user_request("x")), "transport: scripted fault", Error);
    try {
        gw.complete(user_request("x"));
        FAIL("expected refusal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::refusal);
    }
}

TEST_CASE("mock script files parse all three modes") {
    auto echo = MockGateway::from_script(R"({"mode": "echo"})");
    CHECK(echo.complete(user_request("ping")).text == "ping");

    auto seq = MockGateway::from_script(
        R"({"mode": "sequence", "responses": ["one", {"error": "transport"}]})");
    CHECK(seq.complete(user_request("x")).text == "one");
    CHECK_THROWS_AS(seq.complete(user_request("x")), Error);

    CHECK_THROWS_AS(MockGateway::from_script(R"({"mode": "bogus"})"), Error);
    CHECK_THROWS_AS(MockGateway::from_script("not json"), Error);
}

TEST_CASE("mock determinism: identical requests, identical completions") {
    auto gw = MockGateway::echo();
    auto a = gw.complete(user_request("same input"));
    auto b = gw.complete(user_request("same input"));
    CHECK(a.text == b.text);
    CHECK(a.usage.prompt_tokens == b.usage.prompt_tokens);
    CHECK(a.usage.completion_tokens == b.usage.completion_tokens);
}

TEST_CASE("completions truncate at max_output_chars") {
    auto gw = MockGateway::echo();
    ChatRequest req = user_request(std::string(100, 'z'));
    req.max_output_chars = 10;
    auto completion = gw.complete(req);
    CHECK(completion.text == std::string(10, 'z'));
    CHECK(completion.finish_reason == FinishReason::length);
}

TEST_CASE("request validation") {
    ChatRequest empty;
    empty.model = mock_model();
    CHECK_THROWS_AS(empty.validate(), Error);

    ModelSpec bad_mock = mock_model();
    bad_mock.endpoint = "http://x";
    CHECK_THROWS_AS(bad_mock.validate(), Error);

    ModelSpec structured = mock_model();
    structured.output_mode = OutputMode::structured;
    CHECK_THROWS_AS(structured.validate(), Error);
    structured.response_schema = "verdict";
    CHECK_NOTHROW(structured.validate());
}

TEST_CASE("retry bound: exactly max_retries + 1 transport attempts") {
    FakeRemote gw({{true, 0, ""}});
    try {
        gw.complete(user_request("x", remote_model("http://example.invalid/v1/chat")));
        FAIL("expected transport error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::transport);
        CHECK(std::string(e.what()).find("4 attempts") != std::string::npos);
    }
    CHECK(gw.calls == 4);
}

TEST_CASE("malformed payloads retry until exhausted") {
    FakeRemote gw({{false, 200, "{\"weird\": true}"}});
    CHECK_THROWS_AS(gw.complete(user_request("x", remote_model("http://h/p"))), Error);
    CHECK(gw.calls == 4);
}

TEST_CASE("client errors are refusals, not retried") {
    FakeRemote gw({{false, 403, "forbidden"}});
    try {
        gw.complete(user_request("x", remote_model("http://h/p")));
        FAIL("expected refusal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::refusal);
    }
    CHECK(gw.calls == 1);
}

TEST_CASE("transient failure then success") {
    FakeRemote gw({{true, 0, ""}, {false, 200, ok_payload("recovered")}});
    auto completion = gw.complete(user_request("x", remote_model("http://h/p")));
    CHECK(completion.text == "recovered");
    CHECK(gw.calls == 2);
    CHECK_FALSE(completion.usage.estimated);
    CHECK(completion.usage.prompt_tokens == 11);
    CHECK(completion.usage.completion_tokens == 5);
}

TEST_CASE("missing provider usage falls back to the chars/4 estimate") {
    FakeRemote gw({{false, 200, ok_payload("four", false)}});
    auto completion = gw.complete(user_request("abcdefgh", remote_model("http://h/p")));
    CHECK(completion.usage.estimated);
    CHECK(completion.usage.completion_tokens == 1);  // 4 chars / 4
}

TEST_CASE("remote gateway against a live local http server") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        auto body = nlohmann::json::parse(req.body);
        CHECK(body["model"] == "remote-x");
        res.set_content(ok_payload("live response"), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread run([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    RemoteGateway gw(RetryPolicy{1, 0, 2.0});
    auto completion = gw.complete(user_request(
        "hi", remote_model("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions")));
    CHECK(completion.text == "live response");
    CHECK(hits == 1);

    server.stop();
    run.join();
}

TEST_CASE("split_endpoint") {
    auto [base, path] = split_endpoint("http://host:8080/v1/chat");
    CHECK(base == "http://host:8080");
    CHECK(path == "/v1/chat");
    CHECK(split_endpoint("https://host").second == "/");
    CHECK_THROWS_AS(split_endpoint("host/path"), Error);
}

TEST_SUITE_END();

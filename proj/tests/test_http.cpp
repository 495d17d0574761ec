// Copyright 2026 The steprag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "steprag/detection.hpp"
#include "steprag/http_backend.hpp"

using namespace steprag;
using nlohmann::json;

namespace {

// Local server that fails the first `failures` requests with `fail_status`.
class StubServer {
 public:
  StubServer(int failures, int fail_status, std::string reply_body)
      : failures_(failures),
        fail_status_(fail_status),
        reply_(std::move(reply_body)) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard lock(mu_);
        bodies.push_back(req.body);
        auth.push_back(req.get_header_value("Authorization"));
      }
      if (hits_++ < failures_) {
        res.status = fail_status_;
        return;
      }
      res.set_content(reply_, "application/json");
    };
    server_.Post("/v1/chat/completions", handler);
    server_.Post("/v1/completions", handler);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  JudgeEndpointConfig config(const std::string& path) const {
    JudgeEndpointConfig c;
    c.endpoint_url = "http://127.0.0.1:" + std::to_string(port_) + path;
    c.model_name = "judge-model";
    c.max_retries = 2;
    c.timeout = std::chrono::milliseconds(5000);
    return c;
  }
  int hits() const { return hits_.load(); }

  std::vector<std::string> bodies;
  std::vector<std::string> auth;

 private:
  httplib::Server server_;
  std::thread thread_;
  std::mutex mu_;
  std::atomic<int> hits_{0};
  int failures_;
  int fail_status_;
  std::string reply_;
  int port_ = 0;
};

std::string chat_reply(const std::string& content) {
  return json{{"choices",
               {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

}  // namespace

TEST_SUITE("http") {
  TEST_CASE("endpoint urls") {
    const ParsedUrl u =
        parse_endpoint_url("https://api.example.com:8443/v1/chat");
    CHECK(u.scheme_host_port == "https://api.example.com:8443");
    CHECK(u.path == "/v1/chat");
    CHECK(parse_endpoint_url("http://h").path == "/");
    CHECK_THROWS_AS(parse_endpoint_url("ftp://h/x"), ConfigError);
    CHECK_THROWS_AS(parse_endpoint_url("localhost/x"), ConfigError);
    CHECK_THROWS_AS(parse_endpoint_url("http:///x"), ConfigError);
  }

  TEST_CASE("chat bodies") {
    const json with = json::parse(chat_request_body("m", "sys", "user"));
    CHECK(with["model"] == "m");
    CHECK(with["temperature"] == 0);
    REQUIRE(with["messages"].size() == 2);
    CHECK(with["messages"][0]["role"] == "system");
    CHECK(with["messages"][1]["content"] == "user");
    const json without = json::parse(chat_request_body("m", "", "user"));
    CHECK(without["messages"].size() == 1);
    CHECK(chat_response_text(chat_reply("hi")) == "hi");
    CHECK_THROWS_AS(chat_response_text("{}"), BackendUnavailable);
    CHECK_THROWS_AS(chat_response_text("not json"), BackendUnavailable);
  }

  TEST_CASE("judge round trip with bearer from the environment") {
    StubServer server(0, 500, chat_reply("<answer>True</answer>"));
    ::setenv("STEPRAG_TEST_JUDGE_KEY", "sk-test", 1);
    JudgeEndpointConfig c = server.config("/v1/chat/completions");
    c.api_key_env = "STEPRAG_TEST_JUDGE_KEY";
    ChatCompletionBackend backend(c);
    const StepLabel l =
        detect_under_search(Step::non_search(1, "r", "o"), backend);
    CHECK(l.verdict == Verdict::kOptimal);
    REQUIRE(server.bodies.size() == 1);
    CHECK(server.auth[0] == "Bearer sk-test");
    const json body = json::parse(server.bodies[0]);
    CHECK(body["model"] == "judge-model");
    CHECK(body["messages"][1]["content"] ==
          "<reasoning>r</reasoning>\n<conclusion>o</conclusion>");
    ::unsetenv("STEPRAG_TEST_JUDGE_KEY");
  }

  TEST_CASE("no credential means no header") {
    StubServer server(0, 500, chat_reply("x"));
    ChatCompletionBackend backend(server.config("/v1/chat/completions"),
                                  "be brief");
    CHECK(backend.answer_standalone("q") == "x");
    CHECK(server.auth[0].empty());
    const json body = json::parse(server.bodies[0]);
    CHECK(body["messages"][0]["content"] == "be brief");
  }

  TEST_CASE("transient statuses are retried") {
    for (int status : {429, 503}) {
      StubServer server(2, status, chat_reply("ok"));
      ChatCompletionBackend backend(server.config("/v1/chat/completions"));
      CHECK(backend.answer_standalone("q") == "ok");
      CHECK(server.hits() == 3);
    }
    StubServer down(10, 500, chat_reply("ok"));
    ChatCompletionBackend backend(down.config("/v1/chat/completions"));
    CHECK_THROWS_AS(backend.answer_standalone("q"), BackendUnavailable);
    CHECK(down.hits() == 3);
  }

  TEST_CASE("client errors are not retried") {
    StubServer server(10, 401, chat_reply("ok"));
    ChatCompletionBackend backend(server.config("/v1/chat/completions"));
    try {
      backend.answer_standalone("q");
      FAIL("expected BackendUnavailable");
    } catch (const BackendUnavailable& e) {
      CHECK(std::string(e.what()).find("HTTP 401") != std::string::npos);
    }
    CHECK(server.hits() == 1);
  }

  TEST_CASE("unreachable endpoints are unavailable") {
    JudgeEndpointConfig c;
    c.endpoint_url = "http://127.0.0.1:1/v1/chat/completions";
    c.model_name = "m";
    c.max_retries = 0;
    c.timeout = std::chrono::milliseconds(500);
    ChatCompletionBackend backend(c);
    CHECK_THROWS_AS(backend.answer_standalone("q"), BackendUnavailable);
    const StepLabel l =
        detect_under_search(Step::non_search(1, "r", "o"), backend,
                            DetectionOptions{0, 1, "{query}"});
    CHECK(l.verdict == Verdict::kUnjudged);
    CHECK(l.reason->rfind("judge unavailable: ", 0) == 0);
  }

  TEST_CASE("completion generator re-appends stop strings") {
    const json reply = {{"choices",
                         {{{"text", "look it up</reasoning><search>q"},
                           {"stop_reason", "</search>"}}}}};
    StubServer server(0, 500, reply.dump());
    CompletionGenerator gen(server.config("/v1/completions"));
    const std::vector<std::string_view> stops = {"</search>", "</answer>"};
    GenerationRequest req;
    req.system_prompt = "sys";
    req.question = "Q?";
    req.transcript = "<think>";
    req.stop_markers = stops;
    req.mode = SamplingMode::kDeterministic;
    CHECK(gen.generate(req) == "look it up</reasoning><search>q</search>");
    const json body = json::parse(server.bodies[0]);
    CHECK(body["temperature"] == 0.0);
    CHECK(body["stop"] == json({"</search>", "</answer>"}));
    CHECK(body["prompt"].get<std::string>().find("Question: Q?") !=
          std::string::npos);
  }

  TEST_CASE("invalid endpoint configs") {
    JudgeEndpointConfig c;
    c.model_name = "m";
    CHECK_THROWS_AS(ChatCompletionBackend{c}, ConfigError);
    c.endpoint_url = "gopher://x";
    CHECK_THROWS_AS(ChatCompletionBackend{c}, ConfigError);
  }
}

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

#include "steprag/http_backend.hpp"

#include <httplib.h>

#include <cstdlib>
#include <json.hpp>
#include <thread>

namespace steprag {
namespace {

using json = nlohmann::json;

std::string read_api_key(const std::string& env_name) {
  if (env_name.empty()) return {};
  const char* value = std::getenv(env_name.c_str());
  return value ? std::string(value) : std::string();
}

httplib::Headers auth_headers(const std::string& api_key) {
  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
  return headers;
}

// One POST with transport-level retries. Non-2xx responses other than 429
// and 5xx are not retried.
std::string post_json(const JudgeEndpointConfig& config, const ParsedUrl& url,
                      const std::string& api_key, std::string_view body) {
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
    }
    httplib::Client client(url.scheme_host_port);
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        config.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    auto res = client.Post(url.path, auth_headers(api_key), std::string(body),
                           "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) break;
  }
  throw BackendUnavailable(url.scheme_host_port + url.path + ": " + last_error);
}

}  // namespace

ParsedUrl parse_endpoint_url(std::string_view url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ConfigError("endpoint url lacks a scheme: " + std::string(url));
  }
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported endpoint scheme: " + std::string(scheme));
  }
  const std::size_t host_begin = scheme_end + 3;
  const std::size_t path_begin = url.find('/', host_begin);
  ParsedUrl out;
  const std::string_view authority =
      url.substr(host_begin, path_begin == std::string_view::npos
                                 ? std::string_view::npos
                                 : path_begin - host_begin);
  if (authority.empty()) {
    throw ConfigError("endpoint url lacks a host: " + std::string(url));
  }
  out.scheme_host_port = std::string(scheme) + "://" + std::string(authority);
  out.path = path_begin == std::string_view::npos
                 ? std::string("/")
                 : std::string(url.substr(path_begin));
  return out;
}

std::string chat_request_body(std::string_view model,
                              std::string_view system_prompt,
                              std::string_view user_message) {
  json messages = json::array();
  if (!system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", user_message}});
  json body = {{"model", model}, {"messages", messages}, {"temperature", 0}};
  return body.dump();
}

std::string chat_response_text(std::string_view body) {
  try {
    const json doc = json::parse(body);
    return doc.at("choices")
        .at(0)
        .at("message")
        .at("content")
        .get<std::string>();
  } catch (const json::exception& e) {
    throw BackendUnavailable(std::string("malformed chat response: ") +
                             e.what());
  }
}

ChatCompletionBackend::ChatCompletionBackend(JudgeEndpointConfig config,
                                             std::string policy_system_prompt)
    : config_(std::move(config)),
      policy_system_prompt_(std::move(policy_system_prompt)) {
  config_.validate();
  url_ = parse_endpoint_url(config_.endpoint_url);
  api_key_ = read_api_key(config_.api_key_env);
}

std::string ChatCompletionBackend::post(std::string_view body) {
  return post_json(config_, url_, api_key_, body);
}

std::string ChatCompletionBackend::complete(const ChatRequest& request) {
  return chat_response_text(post(chat_request_body(
      config_.model_name, request.system_prompt, request.user_message)));
}

std::string ChatCompletionBackend::answer_standalone(
    std::string_view question) {
  return chat_response_text(post(
      chat_request_body(config_.model_name, policy_system_prompt_, question)));
}

CompletionGenerator::CompletionGenerator(JudgeEndpointConfig config)
    : config_(std::move(config)) {
  config_.validate();
  url_ = parse_endpoint_url(config_.endpoint_url);
  api_key_ = read_api_key(config_.api_key_env);
}

std::string CompletionGenerator::generate(const GenerationRequest& request) {
  std::string prompt(request.system_prompt);
  prompt += "\n\nQuestion: ";
  prompt += request.question;
  prompt += "\n";
  prompt += request.transcript;

  json stops = json::array();
  for (auto marker : request.stop_markers) stops.push_back(marker);
  json body = {
      {"model", config_.model_name},
      {"prompt", prompt},
      {"stop", stops},
      {"include_stop_str_in_output", true},
      // Four characters per token is a loose upper bound on the char cap.
      {"max_tokens", request.max_chars / 4 + 1},
      {"temperature", request.mode == SamplingMode::kExploratory ? 1.0 : 0.0},
      {"top_p", 1.0},
  };
  const std::string response = post_json(config_, url_, api_key_, body.dump());
  try {
    const json doc = json::parse(response);
    const json& choice = doc.at("choices").at(0);
    std::string text = choice.at("text").get<std::string>();
    // Servers that strip the stop string report it separately.
    if (choice.contains("stop_reason") && choice["stop_reason"].is_string()) {
      const std::string stop = choice["stop_reason"].get<std::string>();
      if (text.size() < stop.size() ||
          text.compare(text.size() - stop.size(), stop.size(), stop) != 0) {
        text += stop;
      }
    }
    if (text.size() > request.max_chars) text.resize(request.max_chars);
    return text;
  } catch (const json::exception& e) {
    throw BackendUnavailable(std::string("malformed completion response: ") +
                             e.what());
  }
}

}  // namespace steprag

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

// Remote backends over OpenAI-compatible HTTP endpoints.
//
// Judges and the standalone-answer policy use chat completions: one system
// message (omitted when empty) and one user message, text response taken
// from choices[0].message.content. The rollout generator uses the plain
// completions endpoint with stop strings.

#ifndef STEPRAG_HTTP_BACKEND_HPP_
#define STEPRAG_HTTP_BACKEND_HPP_

#include <string>
#include <string_view>

#include "steprag/detection.hpp"
#include "steprag/rollout.hpp"

namespace steprag {

struct ParsedUrl {
  std::string scheme_host_port;  // e.g. "https://api.openai.com:443"
  std::string path;              // e.g. "/v1/chat/completions"
};

/// Throws ConfigError on anything that is not http(s)://host[:port][/path].
ParsedUrl parse_endpoint_url(std::string_view url);

/// Request body for one chat exchange (temperature 0).
std::string chat_request_body(std::string_view model,
                              std::string_view system_prompt,
                              std::string_view user_message);

/// choices[0].message.content; throws BackendUnavailable on a malformed body.
std::string chat_response_text(std::string_view body);

class ChatCompletionBackend final : public JudgeBackend, public AnswerBackend {
 public:
  /// Reads the credential from the environment variable named in config
  /// (if any). Throws ConfigError on an invalid config.
  explicit ChatCompletionBackend(JudgeEndpointConfig config,
                                 std::string policy_system_prompt = {});

  std::string complete(const ChatRequest& request) override;
  std::string answer_standalone(std::string_view question) override;

  const JudgeEndpointConfig& config() const { return config_; }

 private:
  std::string post(std::string_view body);

  JudgeEndpointConfig config_;
  ParsedUrl url_;
  std::string api_key_;
  std::string policy_system_prompt_;
};

/// GeneratorBackend over a completions endpoint. The prompt is the system
/// prompt, the question and the transcript so far; the matched stop string
/// is re-appended to the returned text (vLLM "stop_reason" or
/// include_stop_str_in_output).
class CompletionGenerator final : public GeneratorBackend {
 public:
  explicit CompletionGenerator(JudgeEndpointConfig config);

  std::string generate(const GenerationRequest& request) override;

 private:
  JudgeEndpointConfig config_;
  ParsedUrl url_;
  std::string api_key_;
};

}  // namespace steprag

#endif  // STEPRAG_HTTP_BACKEND_HPP_

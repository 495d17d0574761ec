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

#include "steprag/detection.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "steprag/concurrency.hpp"
#include "steprag/prompts.hpp"
#include "steprag/text.hpp"

namespace steprag {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// Sends the request up to 1 + max_retries times until the verdict parses.
// Returns the verdict, or nullopt with `failure` describing the last problem.
std::optional<JudgeVerdict> ask_judge(JudgeBackend& judge,
                                      std::string_view system_prompt,
                                      const std::string& user_message,
                                      int max_retries, std::string& failure,
                                      std::string& last_raw) {
  for (int attempt = 0; attempt <= std::max(0, max_retries); ++attempt) {
    ChatRequest request{system_prompt, user_message, attempt};
    try {
      JudgeVerdict v = parse_judge_answer(judge.complete(request));
      if (v.value != JudgeValue::kUnparseable) return v;
      failure = "unparseable verdict";
      last_raw = std::move(v.raw);
    } catch (const std::exception& e) {
      failure = std::string("judge unavailable: ") + e.what();
    }
  }
  return std::nullopt;
}

StepLabel unjudged_with_raw(std::string reason, std::string raw) {
  if (raw.empty()) return StepLabel::unjudged(std::move(reason));
  return StepLabel::unjudged(std::move(reason), std::move(raw));
}

}  // namespace

JudgeVerdict parse_judge_answer(std::string_view raw) {
  JudgeVerdict v;
  v.raw = std::string(raw);
  constexpr std::string_view kOpen = "<answer>";
  constexpr std::string_view kClose = "</answer>";
  const std::size_t open = raw.find(kOpen);
  if (open == std::string_view::npos) return v;
  const std::size_t begin = open + kOpen.size();
  const std::size_t close = raw.find(kClose, begin);
  if (close == std::string_view::npos) return v;
  const std::string content = lower(trim(raw.substr(begin, close - begin)));
  if (content == "true") {
    v.value = JudgeValue::kTrue;
  } else if (content == "false") {
    v.value = JudgeValue::kFalse;
  }
  return v;
}

std::vector<std::string> AnswerBackend::answer_batch(
    std::span<const std::string> questions, std::size_t max_in_flight) {
  std::vector<std::string> out(questions.size());
  bounded_parallel_for(questions.size(), max_in_flight, [&](std::size_t i) {
    try {
      out[i] = answer_standalone(questions[i]);
    } catch (const std::exception&) {
      out[i].clear();
    }
  });
  return out;
}

void JudgeEndpointConfig::validate() const {
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (endpoint_url.empty()) throw ConfigError("endpoint_url is empty");
  if (model_name.empty()) throw ConfigError("model_name is empty");
  if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
}

std::string frame_standalone_question(std::string_view query,
                                      std::string_view tmpl) {
  constexpr std::string_view kSlot = "{query}";
  std::string out(tmpl);
  const std::size_t pos = out.find(kSlot);
  if (pos == std::string::npos) return std::string(query);
  out.replace(pos, kSlot.size(), query);
  return out;
}

StepLabel judge_over_search(const Step& step, std::string_view regenerated,
                            JudgeBackend& judge,
                            const DetectionOptions& options) {
  if (!step.is_search()) {
    throw std::invalid_argument("over-search detection needs a search step");
  }
  if (is_blank(*step.query())) return StepLabel::unjudged("empty query");
  if (is_blank(step.conclusion())) {
    return StepLabel::unjudged("empty conclusion");
  }
  if (is_blank(regenerated)) {
    return StepLabel::unjudged("empty regenerated answer");
  }
  std::string failure;
  std::string last_raw;
  auto verdict = ask_judge(
      judge, prompts::over_search_judge_system(),
      prompts::over_search_user_message(step.conclusion(), trim(regenerated)),
      options.max_retries, failure, last_raw);
  if (!verdict) return unjudged_with_raw(failure, last_raw);
  // Equivalent means the policy already knew: the search was redundant.
  return verdict->value == JudgeValue::kTrue
             ? StepLabel::over_search(std::move(verdict->raw))
             : StepLabel::optimal(std::move(verdict->raw));
}

StepLabel detect_over_search(const Step& step, AnswerBackend& policy,
                             JudgeBackend& judge,
                             const DetectionOptions& options) {
  if (!step.is_search()) {
    throw std::invalid_argument("over-search detection needs a search step");
  }
  if (is_blank(*step.query())) return StepLabel::unjudged("empty query");
  std::string regenerated;
  try {
    regenerated = policy.answer_standalone(
        frame_standalone_question(*step.query(), options.standalone_template));
  } catch (const std::exception& e) {
    return StepLabel::unjudged(std::string("policy unavailable: ") + e.what());
  }
  return judge_over_search(step, regenerated, judge, options);
}

StepLabel detect_under_search(const Step& step, JudgeBackend& verifier,
                              const DetectionOptions& options) {
  if (step.is_search()) {
    throw std::invalid_argument(
        "under-search detection needs a non-search step");
  }
  if (is_blank(step.conclusion())) {
    return StepLabel::unjudged("empty conclusion");
  }
  std::string failure;
  std::string last_raw;
  auto verdict = ask_judge(
      verifier, prompts::under_search_verifier_system(),
      prompts::under_search_user_message(step.reasoning(), step.conclusion()),
      options.max_retries, failure, last_raw);
  if (!verdict) return unjudged_with_raw(failure, last_raw);
  return verdict->value == JudgeValue::kTrue
             ? StepLabel::optimal(std::move(verdict->raw))
             : StepLabel::under_search(std::move(verdict->raw));
}

std::vector<std::string> batch_regenerate(std::span<const std::string> queries,
                                          AnswerBackend& policy,
                                          std::size_t max_in_flight) {
  if (queries.empty()) return {};
  std::vector<std::string> out;
  try {
    out = policy.answer_batch(queries, max_in_flight);
  } catch (const std::exception&) {
    out.clear();
  }
  // A backend that breaks the alignment contract yields all-failed.
  if (out.size() != queries.size()) out.assign(queries.size(), std::string());
  return out;
}

std::vector<StepLabel> label_trajectory(const Trajectory& trajectory,
                                        AnswerBackend& policy,
                                        JudgeBackend& judge,
                                        JudgeBackend& verifier,
                                        const RewardConfig& config,
                                        const DetectionOptions& options) {
  if (!trajectory.format_ok()) {
    throw FormatNotOk("cannot label an unparsable trajectory");
  }
  return label_batch(std::span(&trajectory, 1), policy, judge, verifier, config,
                     options)
      .front();
}

std::vector<std::vector<StepLabel>> label_batch(
    std::span<const Trajectory> trajectories, AnswerBackend& policy,
    JudgeBackend& judge, JudgeBackend& verifier, const RewardConfig& config,
    const DetectionOptions& options) {
  struct Task {
    std::size_t trajectory;
    std::size_t step;
    std::ptrdiff_t regenerated = -1;  // index into `regenerated`
  };

  std::vector<std::vector<StepLabel>> labels(trajectories.size());
  std::vector<Task> tasks;
  std::vector<std::string> queries;
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    const Trajectory& traj = trajectories[t];
    if (!traj.format_ok()) continue;
    labels[t].assign(traj.steps().size(), StepLabel::optimal());
    for (std::size_t s = 0; s < traj.steps().size(); ++s) {
      const Step& step = traj.steps()[s];
      if (step.is_search()) {
        if (!config.over_search_enabled()) continue;
        Task task{t, s};
        if (!is_blank(*step.query())) {
          task.regenerated = static_cast<std::ptrdiff_t>(queries.size());
          queries.push_back(frame_standalone_question(
              *step.query(), options.standalone_template));
        }
        tasks.push_back(task);
      } else if (config.under_search_enabled()) {
        tasks.push_back(Task{t, s});
      }
    }
  }

  const std::vector<std::string> regenerated =
      batch_regenerate(queries, policy, options.max_in_flight);

  bounded_parallel_for(tasks.size(), options.max_in_flight, [&](std::size_t i) {
    const Task& task = tasks[i];
    const Step& step = trajectories[task.trajectory].steps()[task.step];
    StepLabel& slot = labels[task.trajectory][task.step];
    if (!step.is_search()) {
      slot = detect_under_search(step, verifier, options);
    } else if (task.regenerated < 0) {
      slot = StepLabel::unjudged("empty query");
    } else {
      const std::string& answer =
          regenerated[static_cast<std::size_t>(task.regenerated)];
      slot = is_blank(answer)
                 ? StepLabel::unjudged("policy regeneration failed")
                 : judge_over_search(step, answer, judge, options);
    }
  });
  return labels;
}

}  // namespace steprag

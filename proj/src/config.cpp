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

#include "steprag/config.hpp"

#include <fstream>
#include <initializer_list>

#include "steprag/errors.hpp"
#include "steprag/fixtures.hpp"
#include "steprag/http_backend.hpp"

namespace steprag {
namespace {

namespace fs = std::filesystem;

void reject_unknown(const Json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ConfigError("unknown key " + std::string(where) + "." + key);
    }
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  }
}

std::size_t get_count(const Json& j, const char* key, std::size_t fallback,
                      std::string_view where) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string(where) + "." + key +
                      " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

fs::path existing_path(const Json& j, const char* key, const fs::path& base,
                       std::string_view where) {
  const auto raw = get_or<std::string>(j, key, {}, where);
  if (raw.empty()) {
    throw ConfigError(std::string(where) + "." + key + " is required");
  }
  fs::path p(raw);
  if (p.is_relative() && !base.empty()) p = base / p;
  if (!fs::exists(p)) {
    throw ConfigError(std::string(where) + "." + key + ": " + p.string() +
                      " does not exist");
  }
  return p;
}

BackendSpec parse_backend(const Json& j, std::string_view where,
                          const fs::path& base, std::string_view default_model,
                          std::size_t max_in_flight) {
  reject_unknown(j, where,
                 {"kind", "script", "strict", "endpoint_url", "model",
                  "api_key_env", "max_retries", "timeout_ms", "system_prompt"});
  BackendSpec spec;
  const auto kind = get_or<std::string>(j, "kind", "scripted", where);
  if (kind == "scripted") {
    spec.kind = BackendSpec::Kind::kScripted;
    spec.script = existing_path(j, "script", base, where);
    spec.strict = get_or<bool>(j, "strict", true, where);
  } else if (kind == "http") {
    spec.kind = BackendSpec::Kind::kHttp;
    auto& e = spec.endpoint;
    e.endpoint_url = get_or<std::string>(j, "endpoint_url", {}, where);
    e.model_name =
        get_or<std::string>(j, "model", std::string(default_model), where);
    e.api_key_env = get_or<std::string>(j, "api_key_env", {}, where);
    e.max_retries = get_or<int>(j, "max_retries", e.max_retries, where);
    e.timeout = std::chrono::milliseconds(
        get_or<std::int64_t>(j, "timeout_ms", e.timeout.count(), where));
    e.max_in_flight = static_cast<int>(max_in_flight);
    spec.system_prompt = get_or<std::string>(j, "system_prompt", {}, where);
    try {
      e.validate();
    } catch (const ConfigError& err) {
      throw ConfigError(std::string(where) + ": " + err.what());
    }
  } else {
    throw ConfigError(std::string(where) +
                      ".kind must be \"scripted\" or "
                      "\"http\"");
  }
  return spec;
}

Json backend_json(const BackendSpec& spec) {
  if (spec.kind == BackendSpec::Kind::kScripted) {
    return {{"kind", "scripted"},
            {"script", spec.script.filename().string()},
            {"strict", spec.strict}};
  }
  const auto& e = spec.endpoint;
  return {{"kind", "http"},
          {"endpoint_url", e.endpoint_url},
          {"model", e.model_name},
          {"api_key_env", e.api_key_env},
          {"max_retries", e.max_retries},
          {"timeout_ms", e.timeout.count()},
          {"system_prompt", spec.system_prompt}};
}

}  // namespace

Json RunConfig::to_json() const {
  Json j = {{"reward", steprag::to_json(reward)},
            {"rollout",
             {{"step_budget", rollout.step_budget()},
              {"top_k", rollout.top_k()},
              {"max_chars", rollout.max_chars()},
              {"mode", rollout.mode() == SamplingMode::kDeterministic
                           ? "deterministic"
                           : "exploratory"}}},
            {"retriever",
             {{"corpus", corpus ? corpus->filename().string() : std::string()},
              {"k1", bm25.k1},
              {"b", bm25.b}}},
            {"detection",
             {{"max_retries", detection.max_retries},
              {"standalone_template", detection.standalone_template}}},
            {"concurrency", {{"max_in_flight", detection.max_in_flight}}},
            {"seed", seed}};
  auto put = [&](const char* key, const std::optional<BackendSpec>& spec) {
    j[key] = spec ? backend_json(*spec) : Json(nullptr);
  };
  put("policy", policy);
  put("over_search_judge", over_search_judge);
  put("under_search_verifier", under_search_verifier);
  put("generator", generator);
  return j;
}

RunConfig parse_run_config(const Json& j, const fs::path& base_dir) {
  reject_unknown(j, "config",
                 {"reward", "rollout", "retriever", "detection", "policy",
                  "over_search_judge", "under_search_verifier", "generator",
                  "concurrency", "seed"});
  RunConfig c;

  const Json empty = Json::object();
  const Json& conc = j.contains("concurrency") ? j["concurrency"] : empty;
  reject_unknown(conc, "concurrency", {"max_in_flight"});
  c.detection.max_in_flight = get_count(
      conc, "max_in_flight", c.detection.max_in_flight, "concurrency");
  if (c.detection.max_in_flight < 1) {
    throw ConfigError("concurrency.max_in_flight must be >= 1");
  }

  const Json& rw = j.contains("reward") ? j["reward"] : empty;
  reject_unknown(rw, "reward",
                 {"lambda_f", "lambda_p", "over_search", "under_search"});
  c.reward = RewardConfig(
      get_or<double>(rw, "lambda_f", RewardConfig::kDefaultLambdaF, "reward"),
      get_or<double>(rw, "lambda_p", RewardConfig::kDefaultLambdaP, "reward"),
      get_or<bool>(rw, "over_search", true, "reward"),
      get_or<bool>(rw, "under_search", true, "reward"));

  const Json& ro = j.contains("rollout") ? j["rollout"] : empty;
  reject_unknown(ro, "rollout", {"step_budget", "top_k", "max_chars", "mode"});
  const auto mode = get_or<std::string>(ro, "mode", "exploratory", "rollout");
  if (mode != "exploratory" && mode != "deterministic") {
    throw ConfigError("rollout.mode must be exploratory or deterministic");
  }
  c.rollout = RolloutConfig(
      get_count(ro, "step_budget", RolloutConfig::kDefaultBudget, "rollout"),
      get_count(ro, "top_k", RolloutConfig::kDefaultTopK, "rollout"),
      get_count(ro, "max_chars", RolloutConfig::kDefaultMaxChars, "rollout"),
      mode == "deterministic" ? SamplingMode::kDeterministic
                              : SamplingMode::kExploratory);

  if (j.contains("retriever")) {
    const Json& rt = j["retriever"];
    reject_unknown(rt, "retriever", {"corpus", "k1", "b"});
    if (rt.contains("corpus")) {
      c.corpus = existing_path(rt, "corpus", base_dir, "retriever");
    }
    c.bm25.k1 = get_or<double>(rt, "k1", c.bm25.k1, "retriever");
    c.bm25.b = get_or<double>(rt, "b", c.bm25.b, "retriever");
    if (!(c.bm25.k1 >= 0.0) || !(c.bm25.b >= 0.0 && c.bm25.b <= 1.0)) {
      throw ConfigError("retriever: need k1 >= 0 and b in [0, 1]");
    }
  }

  if (j.contains("detection")) {
    const Json& d = j["detection"];
    reject_unknown(d, "detection", {"max_retries", "standalone_template"});
    c.detection.max_retries =
        get_or<int>(d, "max_retries", c.detection.max_retries, "detection");
    if (c.detection.max_retries < 0) {
      throw ConfigError("detection.max_retries must be >= 0");
    }
    c.detection.standalone_template = get_or<std::string>(
        d, "standalone_template", c.detection.standalone_template, "detection");
    if (c.detection.standalone_template.find("{query}") == std::string::npos) {
      throw ConfigError("detection.standalone_template must contain {query}");
    }
  }

  const std::size_t mif = c.detection.max_in_flight;
  if (j.contains("policy")) {
    c.policy = parse_backend(j["policy"], "policy", base_dir, {}, mif);
  }
  if (j.contains("over_search_judge")) {
    c.over_search_judge =
        parse_backend(j["over_search_judge"], "over_search_judge", base_dir,
                      kDefaultOverSearchJudgeModel, mif);
  }
  if (j.contains("under_search_verifier")) {
    c.under_search_verifier =
        parse_backend(j["under_search_verifier"], "under_search_verifier",
                      base_dir, kDefaultUnderSearchVerifierModel, mif);
  }
  if (j.contains("generator")) {
    c.generator = parse_backend(j["generator"], "generator", base_dir, {}, mif);
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ConfigError("seed must be a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  if (!fs::exists(path)) {
    throw ConfigError("config " + path.string() + " does not exist");
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_run_config(j, path.parent_path());
}

std::unique_ptr<AnswerBackend> make_answer_backend(const BackendSpec& spec) {
  if (spec.kind == BackendSpec::Kind::kScripted) {
    return std::make_unique<ScriptedBackend>(
        ScriptedBackend::from_jsonl(spec.script, spec.strict));
  }
  return std::make_unique<ChatCompletionBackend>(spec.endpoint,
                                                 spec.system_prompt);
}

std::unique_ptr<JudgeBackend> make_judge_backend(const BackendSpec& spec) {
  if (spec.kind == BackendSpec::Kind::kScripted) {
    return std::make_unique<ScriptedBackend>(
        ScriptedBackend::from_jsonl(spec.script, spec.strict));
  }
  return std::make_unique<ChatCompletionBackend>(spec.endpoint);
}

std::unique_ptr<GeneratorBackend> make_generator(const BackendSpec& spec) {
  if (spec.kind == BackendSpec::Kind::kScripted) {
    return std::make_unique<ScriptedGenerator>(
        ScriptedGenerator::from_jsonl(spec.script));
  }
  return std::make_unique<CompletionGenerator>(spec.endpoint);
}

}  // namespace steprag

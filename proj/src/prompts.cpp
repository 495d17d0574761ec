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

#include "steprag/prompts.hpp"

namespace steprag::prompts {
namespace {

// Prompt texts are part of the reproducibility surface. Do not reflow.

constexpr std::string_view kParsableFormat =
    R"(Answer user questions by thinking step-by-step. Your entire reasoning process must be encapsulated within a single <think></think> block, which contains one or more <step></step> blocks. Each step must begin with your analysis in <reasoning>. If you identify a knowledge gap, you may use <search>query</search> to query a search engine; search results will then be provided in a <context> tag. Every step must end with a <conclusion> summarizing what you learned in that step. After your thinking process is complete, provide the final, conclusive answer inside an <answer> tag placed immediately after the closing </think> tag. You can use as many steps as you need. Ensure all XML tags are properly formed and nested.

**## Output Format Specification**

Your output must follow this overall structure. The <think> block contains all the steps, and the <answer> block follows it.

<think>
<step>
  ...
</step>
<step>
  ...
</step>
</think>
<answer>Your final, conclusive answer to the user's question.</answer>

**## Step Formats (to be used inside <think>)**

Format 1: Step with a Search

<step>
  <reasoning>Your detailed analysis...</reasoning>
  <search>The precise search query...</search>
  <context>[Provided by system]</context>
  <conclusion>Your conclusion for this step.</conclusion>
</step>

Format 2: Step without a Search (Internal Reasoning)

<step>
  <reasoning>Your detailed analysis...</reasoning>
  <conclusion>Your conclusion for this step.</conclusion>
</step>)";

constexpr std::string_view kOverSearchJudge =
    R"(You are an expert in Natural Language Understanding and Semantic Analysis. Your goal is to determine if these two statements are semantically equivalent—that is, if they mean the same thing and convey the same core information. Provide your answers with a single boolean value "True" or "False" in the tag <answer></answer> (e.g. <answer>True</answer> or <answer>False</answer>).)";

constexpr std::string_view kUnderSearchVerifier =
    R"(You are an expert Fact-Checker and Logic Verifier. Your task is to evaluate a single, isolated reasoning step from an AI agent.

This step was generated without using a search tool. Your goal is to determine if the agent made a mistake by not searching, based only on the information within this single step and your own general knowledge.

Analyze the provided step by asking two questions:
1. **Factual Accuracy:** Is the statement in the <reasoning></reasoning> and <conclusion></conclusion> factually correct?
2. **Internal Logic:** Does the <conclusion></conclusion> logically follow from the <reasoning></reasoning> provided within this same step?

If both questions are answered correctly, provide your answers with a single boolean value "True" or "False" in the tag <answer></answer> (e.g. <answer>True</answer> or <answer>False</answer>).)";

}  // namespace

std::string_view parsable_format_system() { return kParsableFormat; }
std::string_view over_search_judge_system() { return kOverSearchJudge; }
std::string_view under_search_verifier_system() { return kUnderSearchVerifier; }

std::string over_search_user_message(std::string_view conclusion,
                                     std::string_view regenerated_answer) {
  std::string msg = "Statement 1: ";
  msg += conclusion;
  msg += "\nStatement 2: ";
  msg += regenerated_answer;
  return msg;
}

std::string under_search_user_message(std::string_view reasoning,
                                      std::string_view conclusion) {
  std::string msg = "<reasoning>";
  msg += reasoning;
  msg += "</reasoning>\n<conclusion>";
  msg += conclusion;
  msg += "</conclusion>";
  return msg;
}

}  // namespace steprag::prompts

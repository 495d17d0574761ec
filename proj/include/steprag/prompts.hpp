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

#ifndef STEPRAG_PROMPTS_HPP_
#define STEPRAG_PROMPTS_HPP_

#include <string>
#include <string_view>

namespace steprag::prompts {

/// System prompt instructing the policy to emit the parsable step format.
std::string_view parsable_format_system();

/// System prompt for the semantic-equivalence judge (over-search).
std::string_view over_search_judge_system();

/// System prompt for the single-step fact/logic verifier (under-search).
std::string_view under_search_verifier_system();

/// User message for the equivalence judge: the step's conclusion and the
/// policy's standalone answer, nothing else.
std::string over_search_user_message(std::string_view conclusion,
                                     std::string_view regenerated_answer);

/// User message for the verifier: the step serialized with its
/// <reasoning>/<conclusion> tags.
std::string under_search_user_message(std::string_view reasoning,
                                      std::string_view conclusion);

}  // namespace steprag::prompts

#endif  // STEPRAG_PROMPTS_HPP_

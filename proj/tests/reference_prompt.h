// Copyright 2026 The paraprobe Authors.
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
#ifndef PARAPROBE_TESTS_REFERENCE_PROMPT_H_
#define PARAPROBE_TESTS_REFERENCE_PROMPT_H_

namespace paraprobe::testing {

// Typed in independently of assets/paraphrase_prompt.txt.
inline constexpr char kReferenceTemplate[] =
    "Given the following database schema and an SQL query, generate {num_queries} distinct "
    "natural language questions that describe the purpose and output of the SQL query.\n"
    "\n"
    "{schema_definitions}\n"
    "\n"
    "SQL Query:\n"
    "{sql_query}\n"
    "\n"
    "Instructions:\n"
    "1. Generate {num_queries} natural language questions that reflect the intent of the SQL "
    "query.\n"
    "2. Each question should vary in phrasing, structure, and wording, but all questions must "
    "remain logically equivalent.\n"
    "3. Do not include explanations, task descriptions, or any additional comments in the "
    "output.\n"
    "\n"
    "Output Format:\n"
    "1. <First question>\n"
    "2. <Second question>\n"
    "...\n"
    "{num_queries}. <Nth question>.";

}  // namespace paraprobe::testing

#endif  // PARAPROBE_TESTS_REFERENCE_PROMPT_H_

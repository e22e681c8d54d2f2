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

#ifndef PARAPROBE_TEXT_UTIL_H_
#define PARAPROBE_TEXT_UTIL_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace paraprobe {

std::vector<std::string_view> SplitLines(std::string_view text);
std::vector<std::string_view> Split(std::string_view text, char sep);
std::string_view StripAscii(std::string_view text);
std::string AsciiLower(std::string_view text);
bool StartsWithIgnoreCase(std::string_view text, std::string_view prefix);
void ReplaceAll(std::string& text, std::string_view from, std::string_view to);

// Replaces each "{name}" in `tmpl` whose name is a key of `values`. The scan
// runs over the template only, so substituted text is never re-expanded and
// braces that do not name a known key are copied through unchanged.
std::string FillTemplate(std::string_view tmpl,
                         const std::map<std::string, std::string, std::less<>>& values);

// Whole-file I/O; failures throw Error(kIo).
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Keeps [A-Za-z0-9._-] and maps everything else to '_'.
std::string SafeFileName(std::string_view id);

}  // namespace paraprobe

#endif  // PARAPROBE_TEXT_UTIL_H_

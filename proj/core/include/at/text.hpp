// Copyright 2026 The Assistance Tool Authors
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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace at {

std::string trim(std::string_view s);

/// Splits on `sep` and trims every piece.
std::vector<std::string> split_trimmed(std::string_view s, char sep);

/// Calls `fn(line_number, fields)` for every `|`-separated record in
/// `text`, skipping blank lines and `#` comments.
void for_each_record(std::string_view text,
                     const std::function<void(std::size_t, const std::vector<std::string>&)>& fn);

std::string html_escape(std::string_view s);

}  // namespace at

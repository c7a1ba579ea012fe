// Copyright 2026 The hegel Authors.
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

#ifndef HEGEL_TEXT_H_
#define HEGEL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hegel {

using Token = std::string;
using TokenList = std::vector<Token>;

// Lowercases ASCII letters and splits on every byte that is not an ASCII
// letter or digit. Bytes >= 0x80 are treated as word characters so that
// UTF-8 sequences stay inside their token.
TokenList tokenize(std::string_view text);

// Number of tokens `tokenize` would produce, without allocating them.
std::size_t count_tokens(std::string_view text);

// Fixed English stopword list (lowercase).
bool is_stopword(std::string_view token);
const std::vector<std::string_view>& stopwords();

bool is_numeric(std::string_view token);

// Seeded 64-bit FNV-1a followed by a splitmix finalizer.
std::uint64_t hash64(std::string_view bytes, std::uint64_t seed);

// Non-cryptographic content hash of a file, used for run manifests.
std::uint64_t hash_file(const std::string& path);

std::string hex64(std::uint64_t value);

}  // namespace hegel

#endif  // HEGEL_TEXT_H_

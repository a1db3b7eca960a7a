// Copyright 2026 The seclust Authors
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

#ifndef SECLUST_IO_HPP_
#define SECLUST_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seclust/edge_builder.hpp"
#include "seclust/graph.hpp"

namespace seclust::io {

// Binary embedding block:
//   "SEEV" | version u16 LE | rows u32 LE | dim u32 LE | rows*dim f32 LE
inline constexpr char kEmbeddingMagic[4] = {'S', 'E', 'E', 'V'};
inline constexpr std::uint16_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 14;

struct EmbeddingBlock {
  std::uint32_t rows = 0;
  std::uint32_t dim = 0;
  std::vector<float> values;  // row-major
};

std::vector<std::uint8_t> encode_embeddings(const EmbeddingBlock& block);
// Throws InputError on a bad magic, unknown version, or a length that is not
// 14 + 4 * rows * dim.
EmbeddingBlock decode_embeddings(std::span<const std::uint8_t> bytes);

void write_embeddings(const std::filesystem::path& path, const EmbeddingBlock& block);
EmbeddingBlock read_embeddings(const std::filesystem::path& path);

// JSON lines: {"id": str, "attributes": [str], "embedding": [num]}. With a
// sidecar, inline embeddings are rejected and row i feeds record i.
// Errors carry "<path>:<line>:" prefixes.
std::vector<MessageRecord> read_corpus(const std::filesystem::path& path,
                                       const std::optional<std::filesystem::path>& sidecar = {});
void write_corpus(const std::filesystem::path& path, std::span<const MessageRecord> records,
                  bool inline_embeddings = true);

// {"clusters": [[id, ...], ...]} using external message ids.
std::string format_partition(const Partition& partition, std::span<const std::string> ids);
void write_partition(const std::filesystem::path& path, const Partition& partition,
                     std::span<const std::string> ids);
std::vector<std::vector<std::string>> parse_partition(const std::string& text,
                                                      const std::string& origin = "partition");
std::vector<std::vector<std::string>> read_partition(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace seclust::io

#endif  // SECLUST_IO_HPP_

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

#include "seclust/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "seclust/error.hpp"

namespace seclust::io {
namespace {

using nlohmann::json;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return static_cast<std::uint32_t>(bytes[at]) |
         (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
         (static_cast<std::uint32_t>(bytes[at + 2]) << 16) |
         (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::vector<std::uint8_t> encode_embeddings(const EmbeddingBlock& block) {
  const std::size_t count = static_cast<std::size_t>(block.rows) * block.dim;
  if (block.values.size() != count) {
    throw InputError("embedding block holds " + std::to_string(block.values.size()) +
                     " values, expected rows * dim = " + std::to_string(count));
  }
  std::vector<std::uint8_t> out;
  out.reserve(kEmbeddingHeaderBytes + 4 * count);
  out.insert(out.end(), std::begin(kEmbeddingMagic), std::end(kEmbeddingMagic));
  put_u16(out, kEmbeddingVersion);
  put_u32(out, block.rows);
  put_u32(out, block.dim);
  for (float v : block.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

EmbeddingBlock decode_embeddings(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kEmbeddingHeaderBytes ||
      !std::equal(std::begin(kEmbeddingMagic), std::end(kEmbeddingMagic), bytes.begin())) {
    throw InputError("not an embedding file (missing SEEV header)");
  }
  const auto version = static_cast<std::uint16_t>(bytes[4] | (bytes[5] << 8));
  if (version != kEmbeddingVersion) {
    throw InputError("unsupported embedding file version " + std::to_string(version));
  }
  EmbeddingBlock block;
  block.rows = get_u32(bytes, 6);
  block.dim = get_u32(bytes, 10);
  const std::size_t count = static_cast<std::size_t>(block.rows) * block.dim;
  const std::size_t expected = kEmbeddingHeaderBytes + 4 * count;
  if (bytes.size() != expected) {
    throw InputError("embedding file is " + std::to_string(bytes.size()) +
                     " bytes; header promises " + std::to_string(expected));
  }
  block.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    block.values[i] = std::bit_cast<float>(get_u32(bytes, kEmbeddingHeaderBytes + 4 * i));
  }
  return block;
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingBlock& block) {
  const auto bytes = encode_embeddings(block);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

EmbeddingBlock read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_embeddings(bytes);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<MessageRecord> read_corpus(const std::filesystem::path& path,
                                       const std::optional<std::filesystem::path>& sidecar) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus " + path.string());
  std::vector<MessageRecord> records;
  std::vector<std::size_t> line_of;
  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); })) {
      continue;
    }
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(where(path, line) + "malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw InputError(where(path, line) + "record is not a JSON object");
    MessageRecord r;
    const auto id = j.find("id");
    if (id == j.end() || !id->is_string()) {
      throw InputError(where(path, line) + "record needs a string \"id\"");
    }
    r.id = id->get<std::string>();
    if (!ids.insert(r.id).second) {
      throw InputError(where(path, line) + "duplicate id '" + r.id + "'");
    }
    if (const auto attrs = j.find("attributes"); attrs != j.end()) {
      if (!attrs->is_array()) throw InputError(where(path, line) + "\"attributes\" must be an array");
      for (const auto& a : *attrs) {
        if (!a.is_string()) {
          throw InputError(where(path, line) + "attributes must be strings");
        }
        r.attributes.push_back(a.get<std::string>());
      }
    }
    if (const auto emb = j.find("embedding"); emb != j.end() && !emb->is_null()) {
      if (sidecar) {
        throw InputError(where(path, line) +
                         "inline embedding not allowed when a sidecar embedding file is used");
      }
      if (!emb->is_array()) throw InputError(where(path, line) + "\"embedding\" must be an array");
      for (const auto& x : *emb) {
        if (!x.is_number()) throw InputError(where(path, line) + "embedding values must be numbers");
        r.embedding.push_back(x.get<double>());
      }
      if (r.embedding.empty()) throw InputError(where(path, line) + "embedding is empty");
    } else if (!sidecar) {
      throw InputError(where(path, line) + "record '" + r.id +
                       "' has no embedding and no sidecar embedding file was given");
    }
    if (!records.empty() && !sidecar &&
        r.embedding.size() != records.front().embedding.size()) {
      throw InputError(where(path, line) + "embedding dimension " +
                       std::to_string(r.embedding.size()) + " differs from " +
                       std::to_string(records.front().embedding.size()) +
                       " on line " + std::to_string(line_of.front()));
    }
    records.push_back(std::move(r));
    line_of.push_back(line);
  }
  if (sidecar) {
    const EmbeddingBlock block = read_embeddings(*sidecar);
    if (block.rows != records.size()) {
      throw InputError(sidecar->string() + ": " + std::to_string(block.rows) +
                       " embedding rows for " + std::to_string(records.size()) + " records");
    }
    if (block.dim == 0) throw InputError(sidecar->string() + ": embedding dimension is 0");
    for (std::size_t i = 0; i < records.size(); ++i) {
      const float* row = block.values.data() + i * block.dim;
      records[i].embedding.assign(row, row + block.dim);
    }
  }
  return records;
}

void write_corpus(const std::filesystem::path& path, std::span<const MessageRecord> records,
                  bool inline_embeddings) {
  std::ostringstream out;
  for (const MessageRecord& r : records) {
    json j;
    j["id"] = r.id;
    j["attributes"] = r.attributes;
    if (inline_embeddings) j["embedding"] = r.embedding;
    out << j.dump() << '\n';
  }
  write_text(path, out.str());
}

std::string format_partition(const Partition& partition, std::span<const std::string> ids) {
  if (ids.size() != partition.universe_size()) {
    throw InvariantError("partition universe and id list differ in size");
  }
  json clusters = json::array();
  const Partition canonical = partition.canonical();
  for (const auto& cluster : canonical.clusters()) {
    json names = json::array();
    for (NodeId v : cluster) names.push_back(ids[v]);
    clusters.push_back(std::move(names));
  }
  return json{{"clusters", std::move(clusters)}}.dump() + "\n";
}

void write_partition(const std::filesystem::path& path, const Partition& partition,
                     std::span<const std::string> ids) {
  write_text(path, format_partition(partition, ids));
}

std::vector<std::vector<std::string>> parse_partition(const std::string& text,
                                                      const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": malformed JSON: " + e.what());
  }
  const auto clusters = j.find("clusters");
  if (!j.is_object() || clusters == j.end() || !clusters->is_array()) {
    throw InputError(origin + ": expected an object with a \"clusters\" array");
  }
  std::vector<std::vector<std::string>> out;
  std::unordered_set<std::string> seen;
  for (const auto& cluster : *clusters) {
    if (!cluster.is_array() || cluster.empty()) {
      throw InputError(origin + ": every cluster must be a non-empty array of ids");
    }
    std::vector<std::string> members;
    for (const auto& id : cluster) {
      if (!id.is_string()) throw InputError(origin + ": cluster members must be string ids");
      if (!seen.insert(id.get<std::string>()).second) {
        throw InputError(origin + ": id '" + id.get<std::string>() +
                         "' appears in more than one cluster");
      }
      members.push_back(id.get<std::string>());
    }
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::vector<std::string>> read_partition(const std::filesystem::path& path) {
  return parse_partition(read_text(path), path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace seclust::io

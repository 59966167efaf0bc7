#include "lexcomp/embeddings/contextual_store.h"

#include <spdlog/spdlog.h>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lexcomp/errors.h"
#include "lexcomp/io/little_endian.h"
#include "lexcomp/rng.h"

namespace lexcomp::embeddings {
namespace {

constexpr std::array<char, 4> kMagic{'L', 'C', 'E', 'B'};

using Reader = io::LittleEndianReader;
using io::put_little;

std::vector<std::string> split_id(const std::string& id) {
  std::vector<std::string> tokens;
  std::istringstream in(id);
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

}  // namespace

std::string sentence_id(std::span<const std::string> tokens) {
  std::string id;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) id += ' ';
    id += tokens[i];
  }
  return id;
}

uint64_t sentence_key(std::span<const std::string> tokens) {
  uint64_t h = fnv1a("");
  for (const std::string& t : tokens) {
    h = fnv1a(t, h);
    h = fnv1a(std::string_view("\x1f", 1), h);
  }
  return h;
}

ContextualStore::ContextualStore(uint32_t dim, uint32_t num_layers)
    : dim_(dim), num_layers_(num_layers) {
  if (dim == 0 || num_layers == 0) {
    throw FormatError("contextual store needs positive dim and layer count");
  }
}

bool ContextualStore::add(std::vector<std::string> tokens, std::vector<float> values) {
  const std::size_t expected =
      static_cast<std::size_t>(num_layers_) * tokens.size() * dim_;
  if (values.size() != expected) {
    throw FormatError("record '" + sentence_id(tokens) + "' holds " +
                      std::to_string(values.size()) + " values, expected " +
                      std::to_string(expected));
  }
  if (find(tokens) != nullptr) return false;
  by_key_[sentence_key(tokens)].push_back(records_.size());
  records_.push_back({std::move(tokens), std::move(values)});
  return true;
}

const ContextualRecord* ContextualStore::find(std::span<const std::string> tokens) const {
  auto it = by_key_.find(sentence_key(tokens));
  if (it == by_key_.end()) return nullptr;
  for (std::size_t idx : it->second) {
    const auto& rec = records_[idx];
    if (std::equal(rec.tokens.begin(), rec.tokens.end(), tokens.begin(), tokens.end())) {
      return &rec;
    }
  }
  return nullptr;
}

bool is_lceb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  return in.gcount() == 4 && magic == kMagic;
}

ContextualStore load_contextual(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open LCEB file " + path.string());
  Reader r(in);
  std::array<char, 4> magic{};
  if (!r.bytes(magic.data(), 4) || magic != kMagic) {
    throw FormatError(path.string() + ": bad magic, not an LCEB file");
  }
  uint32_t version = 0, dim = 0, layers = 0;
  uint64_t count = 0;
  if (!r.little(version) || !r.little(dim) || !r.little(layers) || !r.little(count)) {
    throw FormatError(path.string() + ": truncated LCEB header");
  }
  if (version != kLcebVersion) {
    throw FormatError(path.string() + ": unsupported LCEB version " +
                      std::to_string(version));
  }
  ContextualStore store(dim, layers);
  std::size_t duplicates = 0;
  for (uint64_t rec = 0; rec < count; ++rec) {
    const std::string where = path.string() + ": record " + std::to_string(rec);
    uint32_t id_len = 0;
    if (!r.little(id_len)) throw FormatError(where + " is truncated");
    std::string id(id_len, '\0');
    if (!r.bytes(id.data(), id_len)) throw FormatError(where + " is truncated");
    uint32_t n = 0;
    if (!r.little(n)) throw FormatError(where + " is truncated");
    std::vector<std::string> tokens = split_id(id);
    if (tokens.size() != n) {
      throw FormatError(where + " declares " + std::to_string(n) +
                        " vectors per layer but its id has " +
                        std::to_string(tokens.size()) + " tokens");
    }
    const std::size_t floats = static_cast<std::size_t>(layers) * n * dim;
    std::vector<float> values(floats);
    for (std::size_t i = 0; i < floats; ++i) {
      uint32_t bits = 0;
      if (!r.little(bits)) throw FormatError(where + " is truncated");
      values[i] = std::bit_cast<float>(bits);
    }
    if (!store.add(std::move(tokens), std::move(values))) ++duplicates;
  }
  if (duplicates > 0) {
    spdlog::warn("{}: {} duplicate sentences ignored", path.string(), duplicates);
  }
  return store;
}

void write_contextual(const std::filesystem::path& path, const ContextualStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write LCEB file " + path.string());
  out.write(kMagic.data(), 4);
  put_little<uint32_t>(out, kLcebVersion);
  put_little<uint32_t>(out, store.dim());
  put_little<uint32_t>(out, store.num_layers());
  put_little<uint64_t>(out, store.size());
  for (const auto& rec : store.records()) {
    const std::string id = sentence_id(rec.tokens);
    put_little<uint32_t>(out, static_cast<uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    put_little<uint32_t>(out, static_cast<uint32_t>(rec.tokens.size()));
    for (float v : rec.values) put_little<uint32_t>(out, std::bit_cast<uint32_t>(v));
  }
}

}  // namespace lexcomp::embeddings

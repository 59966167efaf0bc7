#include "lexcomp/embeddings/static_table.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>

#include "lexcomp/errors.h"

namespace lexcomp::embeddings {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool parse_unsigned(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {}

bool EmbeddingTable::insert(std::string token, std::vector<double> vector) {
  if (vector.size() != dim_) {
    throw FormatError("vector for '" + token + "' has " +
                      std::to_string(vector.size()) + " values, expected " +
                      std::to_string(dim_));
  }
  if (index_.contains(token)) return false;
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  vectors_.push_back(std::move(vector));
  return true;
}

const std::vector<double>* EmbeddingTable::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

const std::vector<double>* EmbeddingTable::lookup(std::string_view token) const {
  if (const auto* v = find(token)) return v;
  return find(lowercase(token));
}

EmbeddingTable load_static(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open embedding file " + path.string());

  std::optional<std::size_t> dim = expected_dim;
  std::optional<EmbeddingTable> table;
  if (dim) table.emplace(*dim);
  std::size_t duplicates = 0;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (!seen_content) {
      seen_content = true;
      std::size_t count = 0, header_dim = 0;
      if (fields.size() == 2 && parse_unsigned(fields[0], count) &&
          parse_unsigned(fields[1], header_dim)) {
        if (header_dim == 0) {
          throw FormatError(path.string() + ":" + std::to_string(line_no) +
                            ": header declares dimension 0");
        }
        if (dim && *dim != header_dim) {
          throw FormatError(path.string() + ":" + std::to_string(line_no) +
                            ": header dimension " + std::to_string(header_dim) +
                            " differs from expected " + std::to_string(*dim));
        }
        dim = header_dim;
        if (!table) table.emplace(*dim);
        continue;
      }
    }

    const std::size_t values = fields.size() - 1;
    if (!dim) {
      if (values == 0) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": token without vector");
      }
      dim = values;
      table.emplace(*dim);
    }
    if (values != *dim) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected " + std::to_string(*dim) + " values, found " +
                        std::to_string(values));
    }
    std::vector<double> vec(values);
    for (std::size_t i = 0; i < values; ++i) {
      const std::string_view f = fields[i + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), vec[i]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": unreadable float '" + std::string(f) + "'");
      }
    }
    if (!table->insert(std::string(fields[0]), std::move(vec))) ++duplicates;
  }
  if (!table) {
    throw FormatError(path.string() +
                      ": empty embedding file and no expected dimension given");
  }
  if (duplicates > 0) {
    spdlog::warn("{}: {} duplicate tokens ignored (first occurrence kept)",
                 path.string(), duplicates);
  }
  return std::move(*table);
}

void write_static(const std::filesystem::path& path, const EmbeddingTable& table) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write embedding file " + path.string());
  out << table.size() << ' ' << table.dim() << '\n';
  char buf[64];
  for (const std::string& token : table.tokens()) {
    out << token;
    for (double v : *table.find(token)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace lexcomp::embeddings

#ifndef LEXCOMP_TASKS_TEXT_H_
#define LEXCOMP_TASKS_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexcomp::tasks {

// Whitespace tokenization with ASCII punctuation split into single-character
// tokens. Apostrophes and hyphens inside a word stay attached ("don't",
// "well-known"). Surface forms are preserved.
std::vector<std::string> tokenize(std::string_view text);

// Whitespace-only split; used for pre-tokenized source columns.
std::vector<std::string> split_whitespace(std::string_view text);

std::vector<std::string> split_tabs(std::string_view line);

std::string lowercase(std::string_view text);
std::vector<std::string> lowercase(std::span<const std::string> tokens);

std::string join(std::span<const std::string> tokens, std::string_view sep = " ");

// First position where needle occurs contiguously in haystack, comparing
// case-insensitively.
std::optional<std::size_t> find_phrase(std::span<const std::string> haystack,
                                       std::span<const std::string> needle);

// Parses a non-negative integer column; nullopt when malformed.
std::optional<std::size_t> parse_index(std::string_view text);
std::optional<double> parse_double(std::string_view text);
// "1", "true", "yes", "+" and "0", "false", "no", "-" (case-insensitive).
std::optional<bool> parse_bool(std::string_view text);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_TEXT_H_

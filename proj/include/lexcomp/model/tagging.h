#ifndef LEXCOMP_MODEL_TAGGING_H_
#define LEXCOMP_MODEL_TAGGING_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexcomp::model {

inline bool is_begin_tag(std::string_view tag) { return tag.starts_with("B-"); }
inline bool is_inside_tag(std::string_view tag) { return tag == "I"; }

// Tags are "O", "I" or "B-<type>", and every "I" directly follows a "B-<type>"
// or another "I".
bool is_valid_tag_sequence(std::span<const std::string> tags);

// Highest total log-probability tag sequence among valid ones, by max-path
// dynamic programming: transitions into "I" from "O" or from the sentence
// start score -inf, all other transitions score zero. Ties go to the lower
// inventory index. distributions[i][t] is P(tag t at token i).
std::vector<std::string> decode_tags(const std::vector<std::vector<double>>& distributions,
                                     std::span<const std::string> inventory);

}  // namespace lexcomp::model

#endif  // LEXCOMP_MODEL_TAGGING_H_

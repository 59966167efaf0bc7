#include "lexcomp/model/tagging.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexcomp/errors.h"

namespace lexcomp::model {

bool is_valid_tag_sequence(std::span<const std::string> tags) {
  bool open = false;
  for (const std::string& tag : tags) {
    if (is_inside_tag(tag)) {
      if (!open) return false;
    } else if (is_begin_tag(tag) && tag.size() > 2) {
      open = true;
    } else if (tag == "O") {
      open = false;
    } else {
      return false;
    }
  }
  return true;
}

std::vector<std::string> decode_tags(const std::vector<std::vector<double>>& distributions,
                                     std::span<const std::string> inventory) {
  const std::size_t n = distributions.size();
  const std::size_t tags = inventory.size();
  if (n == 0) return {};
  if (tags == 0) throw ContractError("decode_tags: empty tag inventory");
  for (const auto& row : distributions) {
    if (row.size() != tags) {
      throw ContractError("decode_tags: distribution width " + std::to_string(row.size()) +
                          " differs from inventory size " + std::to_string(tags));
    }
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto log_prob = [](double p) {
    return std::log(std::max(p, std::numeric_limits<double>::min()));
  };
  std::vector<bool> inside(tags), opens(tags);
  for (std::size_t t = 0; t < tags; ++t) {
    inside[t] = is_inside_tag(inventory[t]);
    opens[t] = inside[t] || is_begin_tag(inventory[t]);
  }

  std::vector<double> best(tags);
  std::vector<std::vector<std::size_t>> back(n, std::vector<std::size_t>(tags, 0));
  for (std::size_t t = 0; t < tags; ++t) {
    best[t] = inside[t] ? kNegInf : log_prob(distributions[0][t]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<double> next(tags, kNegInf);
    for (std::size_t t = 0; t < tags; ++t) {
      double top = kNegInf;
      std::size_t arg = 0;
      for (std::size_t prev = 0; prev < tags; ++prev) {
        if (inside[t] && !opens[prev]) continue;
        if (best[prev] > top) {
          top = best[prev];
          arg = prev;
        }
      }
      if (top == kNegInf) continue;
      next[t] = top + log_prob(distributions[i][t]);
      back[i][t] = arg;
    }
    best = std::move(next);
  }
  std::size_t last = 0;
  for (std::size_t t = 1; t < tags; ++t) {
    if (best[t] > best[last]) last = t;
  }
  std::vector<std::string> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = inventory[last];
    last = back[i][last];
  }
  return out;
}

}  // namespace lexcomp::model

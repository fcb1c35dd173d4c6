#include "flagstrata/words.hpp"

#include <charconv>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

std::vector<int> parse_index_list(std::string_view text, int rank, const char* what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw PreconditionError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    if (value < 1 || value > rank) {
      throw PreconditionError(std::string(what) + " index " + std::to_string(value) + " outside 1.." +
                              std::to_string(rank));
    }
    out.push_back(value - 1);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_word(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(word[k] + 1);
  }
  return out;
}

std::string format_element(const GroupTable& g, ElementId w) { return format_word(g.word(w)); }

std::vector<int> parse_word(std::string_view text, int rank) {
  if (text == "e") return {};
  if (text.empty()) throw PreconditionError("empty word (use 'e' for the identity)");
  return parse_index_list(text, rank, "word");
}

ElementId parse_element(const GroupTable& g, std::string_view text) {
  return g.from_word(parse_word(text, g.rank()));
}

std::string format_subset(ParabolicSubset s) {
  std::string out;
  for (int i : s.indices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  }
  return out;
}

std::string format_subset_braced(ParabolicSubset s) { return "{" + format_subset(s) + "}"; }

ParabolicSubset parse_subset(std::string_view text, int rank) {
  ParabolicSubset s;
  for (int i : parse_index_list(text, rank, "subset")) {
    if (s.contains(i)) throw PreconditionError("repeated index in subset '" + std::string(text) + "'");
    s.insert(i);
  }
  return s;
}

std::vector<int> one_based(ParabolicSubset s) {
  std::vector<int> out;
  for (int i : s.indices()) out.push_back(i + 1);
  return out;
}

}  // namespace flagstrata

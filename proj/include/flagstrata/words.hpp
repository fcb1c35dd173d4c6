#pragma once

// Text forms shared by the CLI and JSON output: words are comma-separated
// 1-based simple indices with "e" for the identity; subsets are
// comma-separated 1-based indices (empty string for the empty set).

#include <string>
#include <string_view>
#include <vector>

#include "flagstrata/subset.hpp"
#include "flagstrata/weyl.hpp"

namespace flagstrata {

std::string format_word(const std::vector<int>& word);
std::string format_element(const GroupTable& g, ElementId w);
/// 0-based letters; throws PreconditionError on bad characters or indices.
std::vector<int> parse_word(std::string_view text, int rank);
ElementId parse_element(const GroupTable& g, std::string_view text);

std::string format_subset(ParabolicSubset s);  // "1,3"
std::string format_subset_braced(ParabolicSubset s);  // "{1,3}"
ParabolicSubset parse_subset(std::string_view text, int rank);
std::vector<int> one_based(ParabolicSubset s);

}  // namespace flagstrata

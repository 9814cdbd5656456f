#pragma once

#include <cstddef>
#include <string_view>

namespace aprgauntlet::context {

/// Length of the longest common subsequence of byte strings a and b.
/// Bit-parallel (64 positions per word), O(|a|/64 * |b|).
std::size_t lcs_length(std::string_view a, std::string_view b);

/// Insertion/deletion edit distance (substitutions cost 2):
/// |a| + |b| - 2 * LCS(a, b).
std::size_t indel_distance(std::string_view a, std::string_view b);

/// Normalized indel similarity in [0, 100]:
/// 100 * (1 - indel_distance / (|a| + |b|)), with ratio("", "") = 100.
double fuzzy_ratio(std::string_view a, std::string_view b);

}  // namespace aprgauntlet::context

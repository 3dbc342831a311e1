#pragma once

// Brute-force word-ball counts for free and surface groups.

#include <cstdint>
#include <vector>

namespace oracle {

/// B_0..B_n for the free group of rank r by enumerating reduced words.
std::vector<std::uint64_t> free_group_ball_enumerated(int rank, int n);

/// B_0..B_n for a surface group: all freely reduced words of length <= n + 2,
/// merged under every substitution of a relator piece by the inverse of its
/// complement, counting classes that contain a word of length <= n.
std::vector<std::uint64_t> surface_group_ball_closure(int genus, bool orientable, int n);

}  // namespace oracle

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "olapcube/cube.hpp"
#include "olapcube/status.hpp"

namespace olap {

// Dimension name -> non-empty member set at that dimension's current level.
using DiceFilter = std::map<std::string, std::vector<std::string>>;

// Re-merges cells to a strictly coarser level of `dimension`, or removes the
// dimension when `target` is "ALL".
Result<Cube> roll_up(const Cube& cube, std::string_view dimension, std::string_view target);

// Re-aggregates the base facts with `dimension` at a strictly finer level
// (an ABSENT dimension counts as coarsest). Recorded slice/dice predicates
// are re-applied.
Result<Cube> drill_down(const Cube& cube, std::string_view dimension, std::string_view target);

// Keeps the cells whose `dimension` component is `member`, then drops the
// dimension.
Result<Cube> slice(const Cube& cube, std::string_view dimension, std::string_view member);

// Keeps the cells inside every filtered member set; dimensionality unchanged.
Result<Cube> dice(const Cube& cube, const DiceFilter& filter);

}  // namespace olap

#pragma once

#include <string>

#include "minred/reduce.hpp"

namespace minred {

/// Poincare-disk rendering of a search run: the disk bounding the search
/// region, expanded nodes (red), discarded nodes (gray), z(F) (blue) and the
/// minimizer (green).
std::string render_tree_svg(const SearchStats& stats);

void write_tree_svg(const std::string& path, const SearchStats& stats);

}  // namespace minred

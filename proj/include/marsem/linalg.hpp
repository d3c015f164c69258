#pragma once

#include "marsem/numeric.hpp"

#include <vector>

namespace marsem {

using RatMatrix = std::vector<std::vector<Rat>>;

/// Rank over the rationals by fraction-exact Gaussian elimination.
std::size_t rational_rank(RatMatrix rows);

} // namespace marsem

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace kmtk {

/// Uniform integer in [0, n). Rejection sampling keeps the stream identical
/// across standard libraries, which std::uniform_int_distribution does not.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t n)
{
	constexpr auto top = std::numeric_limits<std::uint64_t>::max();
	std::uint64_t limit = top - top % n;
	std::uint64_t x;
	do
		x = rng();
	while (x >= limit);
	return x % n;
}

inline int uniform_int(std::mt19937_64 &rng, int lo, int hi) // inclusive
{
	return lo + int(uniform_below(rng, std::uint64_t(hi - lo + 1)));
}

} // namespace kmtk

#pragma once

// Seeded low-discrepancy sampling of a Domain.

#include <cstdint>
#include <vector>

#include "kkforms/tensor.hpp"

namespace kkforms {

/// Halton points (prime bases 2, 3, 5, ...) with a Cranley-Patterson shift
/// drawn from mt19937_64(seed), mapped into the box and filtered by the
/// domain predicate. Deterministic in (domain, count, seed). Throws
/// InvalidArgument when the predicate rejects nearly everything.
std::vector<ChartPoint> sample_points(const Domain& domain, int count, std::uint64_t seed);

/// Radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, int base);

}  // namespace kkforms

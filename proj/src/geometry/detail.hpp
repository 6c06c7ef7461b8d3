#pragma once

#include <cstdint>
#include <functional>

#include "polygrowth/geometry.hpp"

namespace polygrowth {

/// Scaled speed of a deterministic rule (threshold or antichain), clamped at 0.
std::int64_t skeleton_depth(const MonotoneRule& det, Vec2i v);

/// Assemble K from the interleaved critical/witness direction sequence.
StarBoundary build_star(std::span<const Vec2i> dirs, const std::function<std::int64_t(std::size_t)>& scaled,
                        const std::function<Vec2i(std::size_t)>& attaining);

}  // namespace polygrowth

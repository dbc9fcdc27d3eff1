#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "groom/network_state.hpp"
#include "groom/slot_mask.hpp"

namespace groom {

/// Lowest-indexed run of `b` free slots, or nullopt.
std::optional<SlotInterval> first_fit(const SlotMask& availability, std::size_t b);

/// First fit over the AND of every fiber's availability, so the interval is
/// the same on each fiber.
std::optional<SlotInterval> segment_first_fit(const NetworkState& state, const std::vector<FiberId>& fibers,
                                              std::size_t b);

}  // namespace groom

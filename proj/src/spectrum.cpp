#include "groom/spectrum.hpp"

#include "groom/errors.hpp"

namespace groom {

std::optional<SlotInterval> first_fit(const SlotMask& availability, std::size_t b) {
  if (b == 0) throw ContractViolation("block size must be at least 1");
  if (auto s = availability.first_run(b)) return SlotInterval{*s, b};
  return std::nullopt;
}

std::optional<SlotInterval> segment_first_fit(const NetworkState& state, const std::vector<FiberId>& fibers,
                                              std::size_t b) {
  if (fibers.empty()) throw ContractViolation("segment without fibers");
  SlotMask common = state.availability(fibers.front());
  for (std::size_t i = 1; i < fibers.size(); ++i) common &= state.availability(fibers[i]);
  return first_fit(common, b);
}

}  // namespace groom

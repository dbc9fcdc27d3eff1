#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace groom {

/// Fixed-size bit vector used for spectrum availability (bit set = slot free)
/// and for visited-node sets in the path search.
class SlotMask {
 public:
  SlotMask() = default;
  explicit SlotMask(std::size_t size, bool value = false);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept;
  void reset(std::size_t i) noexcept { set(i, false); }
  void fill(bool value) noexcept;

  std::size_t count() const noexcept;
  bool all() const noexcept { return count() == size_; }
  bool none() const noexcept;

  SlotMask& operator&=(const SlotMask& other) noexcept;
  friend SlotMask operator&(SlotMask a, const SlotMask& b) noexcept { return a &= b; }

  /// True iff every bit set here is also set in `other`.
  bool is_subset_of(const SlotMask& other) const noexcept;

  /// Lowest index `s` with bits s..s+len-1 all set.
  std::optional<std::size_t> first_run(std::size_t len) const noexcept;
  bool has_run(std::size_t len) const noexcept { return first_run(len).has_value(); }

  /// '1'/'0' per bit, index 0 first.
  std::string to_string() const;
  static SlotMask from_string(std::string_view bits);

  friend bool operator==(const SlotMask&, const SlotMask&) = default;

 private:
  void clear_tail() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace groom

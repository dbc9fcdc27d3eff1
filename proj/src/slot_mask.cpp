#include "groom/slot_mask.hpp"

#include <bit>
#include <stdexcept>

namespace groom {

SlotMask::SlotMask(std::size_t size, bool value) : size_(size), words_((size + 63) / 64, 0) {
  if (value) fill(true);
}

void SlotMask::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

void SlotMask::fill(bool value) noexcept {
  for (auto& w : words_) w = value ? ~std::uint64_t{0} : 0;
  clear_tail();
}

void SlotMask::clear_tail() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

std::size_t SlotMask::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool SlotMask::none() const noexcept {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

SlotMask& SlotMask::operator&=(const SlotMask& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool SlotMask::is_subset_of(const SlotMask& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::optional<std::size_t> SlotMask::first_run(std::size_t len) const noexcept {
  if (len == 0 || len > size_) return std::nullopt;
  std::size_t run = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) {
      if (++run == len) return i + 1 - len;
    } else {
      run = 0;
    }
  }
  return std::nullopt;
}

std::string SlotMask::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

SlotMask SlotMask::from_string(std::string_view bits) {
  SlotMask m(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      m.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("slot mask: unexpected character");
    }
  }
  return m;
}

}  // namespace groom

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperreg {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

inline std::size_t popcount(std::span<const Word> a) {
  std::size_t c = 0;
  for (Word w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline std::size_t popcount_and3(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i] & c[i]));
  return n;
}

/// Dense row-major bit matrix; each row is padded to whole words and padding bits stay zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_(words_for(cols)), bits_(rows * wpr_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word& w = bits_[r * wpr_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    if (value)
      w |= mask;
    else
      w &= ~mask;
  }
  void flip(std::size_t r, std::size_t c) { bits_[r * wpr_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

  std::span<const Word> row(std::size_t r) const { return {bits_.data() + r * wpr_, wpr_}; }
  std::span<Word> row(std::size_t r) { return {bits_.data() + r * wpr_, wpr_}; }

  std::size_t row_count(std::size_t r) const { return popcount(row(r)); }
  std::size_t count() const { return popcount(bits_); }

  /// Mask with the valid bits of the last word of a row set.
  Word tail_mask() const {
    const std::size_t rem = cols_ % kWordBits;
    return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<Word> bits_;
};

}  // namespace hyperreg

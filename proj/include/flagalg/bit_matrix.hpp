#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flagalg {

/// Dense square 0/1 matrix, one packed row per element.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), data_(n_ * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const noexcept {
    return (data_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) noexcept { data_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

  std::span<const std::uint64_t> row(std::size_t i) const noexcept { return {data_.data() + i * words_, words_}; }
  std::span<std::uint64_t> row(std::size_t i) noexcept { return {data_.data() + i * words_, words_}; }

  // row(dst) |= row(src)
  void or_row(std::size_t dst, std::size_t src) noexcept {
    auto d = row(dst);
    auto s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for_each_bit(row(i), [&](std::size_t j) { t.set(j, i); });
    return t;
  }

  std::size_t count_row(std::size_t i) const noexcept {
    std::size_t c = 0;
    for (auto w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  template <class Fn>
  static void for_each_bit(std::span<const std::uint64_t> bits, Fn&& fn) {
    for (std::size_t w = 0; w < bits.size(); ++w) {
      std::uint64_t word = bits[w];
      while (word) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  // Visits the set bits of a & b in increasing order.
  template <class Fn>
  static void for_each_common_bit(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Fn&& fn) {
    for (std::size_t w = 0; w < a.size(); ++w) {
      std::uint64_t word = a[w] & b[w];
      while (word) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace flagalg

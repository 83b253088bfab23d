#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace flagalg {

using Integer = boost::multiprecision::cpp_int;

// 64-bit integer whose arithmetic throws Errc::Overflow instead of wrapping.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT(implicit)

  constexpr std::int64_t value() const noexcept { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) overflow();
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) overflow();
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) overflow();
    return r;
  }
  CheckedInt operator-() const { return CheckedInt{0} - *this; }
  CheckedInt& operator+=(CheckedInt o) { return *this = *this + o; }
  CheckedInt& operator-=(CheckedInt o) { return *this = *this - o; }
  CheckedInt& operator*=(CheckedInt o) { return *this = *this * o; }

  friend constexpr bool operator==(CheckedInt, CheckedInt) = default;
  friend constexpr auto operator<=>(CheckedInt, CheckedInt) = default;

  friend std::ostream& operator<<(std::ostream& os, CheckedInt c) { return os << c.v_; }

 private:
  [[noreturn]] static void overflow() { fail(Errc::Overflow, "64-bit integer overflow"); }
  std::int64_t v_ = 0;
};

template <class T>
Integer to_integer(const T& v) {
  if constexpr (std::is_same_v<T, CheckedInt>) {
    return Integer(v.value());
  } else {
    return Integer(v);
  }
}

inline std::string to_string(const Integer& v) { return v.str(); }

/// Runs `fn.template operator()<CheckedInt>()` and, if that overflows, reruns it
/// with arbitrary-precision integers. Results are exact either way.
template <class Fn>
auto with_overflow_fallback(Fn&& fn) {
  try {
    return fn.template operator()<CheckedInt>();
  } catch (const Error& e) {
    if (e.code() != Errc::Overflow) throw;
  }
  return fn.template operator()<Integer>();
}

}  // namespace flagalg

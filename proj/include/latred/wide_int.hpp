#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latred {

/// Exact signed integer used for basis entries, Gram entries and transforms.
using i128 = __int128;

inline constexpr i128 kI128Max = static_cast<i128>((static_cast<unsigned __int128>(1) << 127) - 1);
inline constexpr i128 kI128Min = -kI128Max - 1;

/// Raised whenever exact 128-bit arithmetic would wrap.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised for malformed external input (files, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace checked {

[[noreturn]] void fail(const char* op);

inline i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail("add");
  return r;
}

inline i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) fail("sub");
  return r;
}

inline i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail("mul");
  return r;
}

}  // namespace checked

inline i128 abs128(i128 v) {
  if (v == kI128Min) checked::fail("abs");
  return v < 0 ? -v : v;
}

std::string to_string(i128 v);

/// Parses an optionally signed decimal integer. Throws InputError on bad
/// syntax or when the value does not fit in 128 bits.
i128 parse_i128(std::string_view text);

inline double to_double(i128 v) { return static_cast<double>(v); }

}  // namespace latred

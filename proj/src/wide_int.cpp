#include "latred/wide_int.hpp"

#include <algorithm>

namespace latred {

namespace checked {

void fail(const char* op) {
  throw OverflowError(std::string("128-bit integer overflow in ") + op);
}

}  // namespace checked

std::string to_string(i128 v) {
  if (v == 0) return "0";
  // Work in the negative range so kI128Min is representable.
  const bool negative = v < 0;
  if (!negative) v = -v;
  std::string out;
  while (v != 0) {
    const int digit = -static_cast<int>(v % 10);
    out.push_back(static_cast<char>('0' + digit));
    v /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

i128 parse_i128(std::string_view text) {
  if (text.empty()) throw InputError("empty integer token");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw InputError("malformed integer '" + std::string(text) + "'");
  // Accumulate negatively; |kI128Min| is one larger than kI128Max.
  i128 acc = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch < '0' || ch > '9') throw InputError("malformed integer '" + std::string(text) + "'");
    if (__builtin_mul_overflow(acc, 10, &acc) || __builtin_sub_overflow(acc, ch - '0', &acc)) {
      throw InputError("integer '" + std::string(text) + "' exceeds the 128-bit range");
    }
  }
  if (!negative) {
    if (acc == kI128Min) throw InputError("integer '" + std::string(text) + "' exceeds the 128-bit range");
    acc = -acc;
  }
  return acc;
}

}  // namespace latred

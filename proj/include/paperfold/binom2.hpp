#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace paperfold::binom2 {

/// A residue modulo 2, stored as 0 or 1.
using Bit = std::uint8_t;

/// Base-2 digits, least significant first.
using BinaryDigits = std::vector<std::uint8_t>;

inline BinaryDigits to_digits(std::uint64_t n) {
  BinaryDigits out;
  for (; n != 0; n >>= 1) out.push_back(static_cast<std::uint8_t>(n & 1U));
  return out;
}

inline std::uint64_t from_digits(const BinaryDigits& digits) {
  std::uint64_t n = 0;
  for (std::size_t j = digits.size(); j-- > 0;) n = (n << 1) | (digits[j] & 1U);
  return n;
}

/// C(n, k) mod 2 by Lucas: odd iff the digits of k are a submask of those of
/// n. Total in k: returns 0 outside [0, n].
constexpr Bit binom_mod2(std::int64_t n, std::int64_t k) noexcept {
  if (n < 0 || k < 0 || k > n) return 0;
  return (static_cast<std::uint64_t>(k) & ~static_cast<std::uint64_t>(n)) == 0 ? 1 : 0;
}

/// Number of carries when adding a and b in base 2; by Kummer this is the
/// 2-adic valuation of C(a + b, a).
constexpr unsigned carry_count(std::uint64_t a, std::uint64_t b) noexcept {
  unsigned carries = 0;
  unsigned carry = 0;
  while (a != 0 || b != 0 || carry != 0) {
    const unsigned sum = static_cast<unsigned>(a & 1U) + static_cast<unsigned>(b & 1U) + carry;
    carry = sum >> 1;
    carries += carry;
    a >>= 1;
    b >>= 1;
  }
  return carries;
}

/// C_n is odd iff n + 1 is a power of two.
constexpr Bit catalan_is_odd(std::uint64_t n) noexcept { return std::has_single_bit(n + 1) ? 1 : 0; }

}  // namespace paperfold::binom2

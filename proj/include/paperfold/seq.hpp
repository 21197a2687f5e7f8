#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "paperfold/error.hpp"

namespace paperfold::seq {

/// Number of bounded blocks of zeros in the binary expansion of n, i.e. the
/// number of "10" factors read from the most significant bit.
constexpr unsigned b0(std::uint64_t n) noexcept { return static_cast<unsigned>(std::popcount((n >> 1) & ~n)); }

/// s(-1) = 0, s(0) = 1, s(2i) = (-1)^i s(i), s(2i+1) = s(i).
constexpr int s(std::int64_t n) noexcept {
  if (n < 0) return 0;
  int sign = 1;
  auto m = static_cast<std::uint64_t>(n);
  while (m != 0) {
    if ((m & 1U) == 0) {
      const std::uint64_t i = m >> 1;
      if ((i & 1U) != 0) sign = -sign;
      m = i;
    } else {
      m >>= 1;
    }
  }
  return sign;
}

/// 1 iff n + 1 is a power of two (the coefficients of x^{-1} * sum x^{2^k}).
constexpr int mu(std::uint64_t n) noexcept { return std::has_single_bit(n + 1) ? 1 : 0; }

/// s~(2i) = (-1)^i, s~(2i+1) = s~(i).
constexpr int s_tilde(std::uint64_t n) noexcept {
  while ((n & 1U) != 0) n >>= 1;
  return ((n >> 1) & 1U) != 0 ? -1 : 1;
}

/// t~(0) = 1, t~(2i+1) = t~(i), t~(4i) = (-1)^i t~(2i), t~(4i+2) = t~(2i).
constexpr int t_tilde(std::uint64_t n) noexcept {
  int sign = 1;
  while (n != 0) {
    if ((n & 1U) != 0) {
      n >>= 1;
    } else if ((n & 3U) == 0) {
      if (((n >> 2) & 1U) != 0) sign = -sign;
      n >>= 1;
    } else {
      n = (n - 2) >> 1;  // 4i+2 -> 2i
    }
  }
  return sign;
}

/// d(n) = (s(n) - s(n-2)) / s(n-1), n >= 1.
constexpr int d(std::int64_t n) {
  if (n < 1) throw error(errc::invalid_argument, "d(n) needs n >= 1");
  const int num = s(n) - s(n - 2);
  const int den = s(n - 1);
  assert(den != 0 && num % den == 0);
  return num / den;
}

/// Signs of the numerators of the folded fraction for sum x^{2^k}:
/// w(4i+1) = -w(4i+2) = (-1)^{i+1}, w(8i+3) = -w(8i+4) = (-1)^i,
/// w(8i+7) = -w(8i+8) = w(4i+3).
constexpr int example1_sign(std::int64_t n) {
  if (n < 1) throw error(errc::invalid_argument, "example1_sign(n) needs n >= 1");
  auto m = static_cast<std::uint64_t>(n);
  int sign = 1;
  for (;;) {
    const std::uint64_t r4 = (m - 1) % 4;
    if (r4 <= 1) {
      const std::uint64_t i = (m - 1) / 4;
      const int base = (i % 2 == 0) ? -1 : 1;
      return sign * (r4 == 0 ? base : -base);
    }
    const std::uint64_t r8 = (m - 3) % 8;  // m = 8i+3, 8i+4, 8i+7 or 8i+8
    const std::uint64_t i = (m - 3) / 8;
    if (r8 <= 1) {
      const int base = (i % 2 == 0) ? 1 : -1;
      return sign * (r8 == 0 ? base : -base);
    }
    if (r8 == 5) sign = -sign;
    m = 4 * i + 3;
  }
}

enum class Kind { S, STILDE, TTILDE, MU, D, ALT, EXAMPLE1, B0 };

inline const char* name(Kind kind) {
  switch (kind) {
    case Kind::S: return "s";
    case Kind::STILDE: return "stilde";
    case Kind::TTILDE: return "ttilde";
    case Kind::MU: return "mu";
    case Kind::D: return "d";
    case Kind::ALT: return "alt";
    case Kind::EXAMPLE1: return "example1";
    case Kind::B0: return "b0";
  }
  return "?";
}

/// First index of a sequence: D and EXAMPLE1 start at 1, everything else at 0.
constexpr std::int64_t first_index(Kind kind) noexcept {
  return (kind == Kind::D || kind == Kind::EXAMPLE1) ? 1 : 0;
}

/// Uniform evaluator over the sign sequences. `prefix` fills a table from the
/// recursions, reading earlier entries of the same table.
class SignSequence {
 public:
  explicit SignSequence(Kind kind) : kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

  std::int64_t operator()(std::int64_t n) const {
    switch (kind_) {
      case Kind::S: return s(n);
      case Kind::STILDE: return s_tilde(static_cast<std::uint64_t>(n));
      case Kind::TTILDE: return t_tilde(static_cast<std::uint64_t>(n));
      case Kind::MU: return mu(static_cast<std::uint64_t>(n));
      case Kind::D: return d(n);
      case Kind::ALT: return (n % 2 == 0) ? 1 : -1;
      case Kind::EXAMPLE1: return example1_sign(n);
      case Kind::B0: return b0(static_cast<std::uint64_t>(n));
    }
    return 0;
  }

  /// Values at first_index(kind) ... first_index(kind) + count - 1.
  std::vector<std::int64_t> prefix(std::size_t count) const {
    std::vector<std::int64_t> out(count);
    const std::int64_t base = first_index(kind_);
    for (std::size_t k = 0; k < count; ++k) {
      const auto n = static_cast<std::int64_t>(k) + base;
      out[k] = memo_step(out, n, base);
    }
    return out;
  }

 private:
  std::int64_t memo_step(const std::vector<std::int64_t>& tab, std::int64_t n, std::int64_t base) const {
    auto at = [&](std::int64_t m) { return tab[static_cast<std::size_t>(m - base)]; };
    switch (kind_) {
      case Kind::S:
        if (n == 0) return 1;
        return (n % 2 == 1) ? at(n / 2) : (((n / 2) % 2 == 0) ? at(n / 2) : -at(n / 2));
      case Kind::STILDE:
        return (n % 2 == 1) ? at(n / 2) : (((n / 2) % 2 == 0) ? 1 : -1);
      case Kind::TTILDE:
        if (n == 0) return 1;
        if (n % 2 == 1) return at(n / 2);
        if (n % 4 == 0) return ((n / 4) % 2 == 0) ? at(n / 2) : -at(n / 2);
        return at(n / 2 - 1);  // 4i+2 -> 2i
      default:
        return (*this)(n);
    }
  }

  Kind kind_;
};

/// A letter +-x_k of the folding alphabet.
struct FoldLetter {
  int var_index = 1;
  int sign = 1;

  friend bool operator==(const FoldLetter&, const FoldLetter&) = default;
};

using FoldWord = std::vector<FoldLetter>;

inline constexpr int kMaxFoldLevel = 20;

constexpr std::uint64_t fold_length(int k) noexcept { return 2 * ((std::uint64_t{1} << k) - 1); }

/// W_1 = (-x_1) x_1, W_k = W_{k-1} x_k (-x_k) reverse(W_{k-1}).
inline FoldWord fold_word(int k) {
  detail::require_size(static_cast<std::size_t>(k < 0 ? 0 : k), 1, kMaxFoldLevel, "fold level");
  FoldWord w{{1, -1}, {1, 1}};
  for (int level = 2; level <= k; ++level) {
    const std::size_t half = w.size();
    w.reserve(2 * half + 2);
    w.push_back({level, 1});
    w.push_back({level, -1});
    for (std::size_t i = half; i-- > 0;) w.push_back(w[i]);
  }
  return w;
}

/// Letter w_n (1-based) of the infinite word, by descent through the
/// concatenation W_{k-1} x_k (-x_k) reverse(W_{k-1}).
inline FoldLetter fold_stream(std::uint64_t n) {
  if (n < 1) throw error(errc::invalid_argument, "fold_stream(n) needs n >= 1");
  int k = 1;
  while (fold_length(k) < n) ++k;
  for (;;) {
    if (k == 1) return n == 1 ? FoldLetter{1, -1} : FoldLetter{1, 1};
    const std::uint64_t half = fold_length(k - 1);
    if (n == half + 1) return {k, 1};
    if (n == half + 2) return {k, -1};
    if (n > half + 2) n = half - (n - half - 2) + 1;
    --k;
  }
}

inline std::string to_string(const FoldLetter& letter) {
  return (letter.sign < 0 ? "-x" : "x") + std::to_string(letter.var_index);
}

}  // namespace paperfold::seq

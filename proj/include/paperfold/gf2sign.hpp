#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "paperfold/binom2.hpp"
#include "paperfold/error.hpp"
#include "paperfold/matrix.hpp"
#include "paperfold/report.hpp"
#include "paperfold/seq.hpp"

namespace paperfold::gf2sign {

/// Lifts of mod-2 matrices; entries stay in -2..2.
using TriMatrix = DenseMatrix<std::int8_t>;
/// Products of lifted matrices, accumulated in machine words.
using WideMatrix = DenseMatrix<std::int64_t>;

inline constexpr std::size_t kMaxSize = std::size_t{1} << 14;

enum class TriKind { L, M, LTILDE, MTILDE, LTILDE0, MTILDE0, A_STRICT };

inline const char* name(TriKind kind) {
  switch (kind) {
    case TriKind::L: return "L";
    case TriKind::M: return "M";
    case TriKind::LTILDE: return "Ltilde";
    case TriKind::MTILDE: return "Mtilde";
    case TriKind::LTILDE0: return "Ltilde0";
    case TriKind::MTILDE0: return "Mtilde0";
    case TriKind::A_STRICT: return "A";
  }
  return "?";
}

namespace detail {

inline std::int8_t tri_entry(TriKind kind, std::int64_t i, std::int64_t j) {
  using binom2::binom_mod2;
  switch (kind) {
    case TriKind::L: return static_cast<std::int8_t>(binom_mod2(2 * i + 1, i - j));
    case TriKind::M: return static_cast<std::int8_t>(binom_mod2(i + j, 2 * j));
    case TriKind::LTILDE: return static_cast<std::int8_t>(binom_mod2(2 * i + 2, i - j));
    case TriKind::MTILDE: return static_cast<std::int8_t>(binom_mod2(i + j + 1, 2 * j + 1));
    case TriKind::LTILDE0: return i == 0 ? 0 : tri_entry(TriKind::LTILDE, i - 1, j);
    case TriKind::MTILDE0: return i == 0 ? 0 : tri_entry(TriKind::MTILDE, i - 1, j);
    case TriKind::A_STRICT: return i > j ? 1 : 0;
  }
  return 0;
}

}  // namespace detail

/// Entry (i, j) from the defining binomial congruence. L~0 and M~0 are L~ and
/// M~ pushed down one row under a zero first row.
inline TriMatrix build_tri(TriKind kind, std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxSize, "matrix size");
  TriMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m(i, j) = detail::tri_entry(kind, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
  return m;
}

// Diagonal sign matrices.

inline DiagSigns diag_of(seq::Kind kind, std::size_t n, std::int64_t offset = 0) {
  const seq::SignSequence sequence(kind);
  std::vector<std::int8_t> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = static_cast<std::int8_t>(sequence(static_cast<std::int64_t>(i) + offset));
  return DiagSigns(std::move(v));
}

inline DiagSigns d_s(std::size_t n) { return diag_of(seq::Kind::S, n); }
inline DiagSigns d_a(std::size_t n) { return diag_of(seq::Kind::ALT, n); }
inline DiagSigns d_stilde(std::size_t n) { return diag_of(seq::Kind::STILDE, n); }
inline DiagSigns d_ttilde(std::size_t n) { return diag_of(seq::Kind::TTILDE, n); }
/// Entries s_1, ..., s_n.
inline DiagSigns d_s_plus1(std::size_t n) { return diag_of(seq::Kind::S, n, 1); }

inline DiagSigns d_e(std::size_t n) {
  std::vector<std::int8_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1 : 0;
  return DiagSigns(std::move(v));
}

inline DiagSigns d_o(std::size_t n) {
  std::vector<std::int8_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 1) ? 1 : 0;
  return DiagSigns(std::move(v));
}

/// Exact integer product of two small-entry matrices.
template <class A, class B>
WideMatrix mat_mul_small(const DenseMatrix<A>& a, const DenseMatrix<B>& b) {
  return multiply<std::int64_t>(a, b);
}

inline WideMatrix mat_mul_small(const DiagSigns& a, const DiagSigns& b) {
  return (a * b).as_matrix<std::int64_t>();
}

// BA0BAB block recursions.

enum class BlockRule { L_RULE, M_RULE, LTILDE0_RULE, MTILDE0_RULE, LM_RULE };

inline const char* name(BlockRule rule) {
  switch (rule) {
    case BlockRule::L_RULE: return "L";
    case BlockRule::M_RULE: return "M";
    case BlockRule::LTILDE0_RULE: return "Ltilde0";
    case BlockRule::MTILDE0_RULE: return "Mtilde0";
    case BlockRule::LM_RULE: return "LM";
  }
  return "?";
}

inline constexpr int kMaxBlockSteps = 12;

/// Starts from the 2x2 seed [[A, 0], [B, A]] of the rule and doubles `steps`
/// times, so the result has size 2^(steps+1). A and B are the top-left and
/// bottom-left quarters of the current matrix. LM entries are powers of two
/// and are therefore held in machine words.
inline WideMatrix babab_expand(BlockRule rule, int steps) {
  paperfold::detail::require_size(static_cast<std::size_t>(steps < 0 ? kMaxBlockSteps + 1 : steps), 0,
                                  kMaxBlockSteps, "BA0BAB steps");
  std::int64_t seed_a = 1;
  std::int64_t seed_b = 1;
  if (rule == BlockRule::LTILDE0_RULE || rule == BlockRule::MTILDE0_RULE) seed_a = 0;
  if (rule == BlockRule::LM_RULE) seed_b = 2;

  WideMatrix cur(2);
  cur(0, 0) = seed_a;
  cur(1, 1) = seed_a;
  cur(1, 0) = seed_b;

  for (int step = 0; step < steps; ++step) {
    const std::size_t h = cur.size() / 2;
    const WideMatrix a = cur.block(0, 0, h);
    const WideMatrix b = cur.block(h, 0, h);
    WideMatrix next(4 * h);
    // Block layout of the lower triangle, row by row; null = zero block.
    const WideMatrix* grid[4][4] = {};
    WideMatrix two_a = a;
    WideMatrix two_b = b;
    switch (rule) {
      case BlockRule::L_RULE:
      case BlockRule::LTILDE0_RULE: {
        const WideMatrix* g[4][4] = {{&a}, {&b, &a}, {nullptr, &b, &a}, {&b, &a, &b, &a}};
        std::copy(&g[0][0], &g[0][0] + 16, &grid[0][0]);
        break;
      }
      case BlockRule::M_RULE:
      case BlockRule::MTILDE0_RULE: {
        const WideMatrix* g[4][4] = {{&a}, {&b, &a}, {&a, &b, &a}, {&b, nullptr, &b, &a}};
        std::copy(&g[0][0], &g[0][0] + 16, &grid[0][0]);
        break;
      }
      case BlockRule::LM_RULE: {
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t j = 0; j < h; ++j) {
            two_a(i, j) *= 2;
            two_b(i, j) *= 2;
          }
        const WideMatrix* g[4][4] = {{&a}, {&b, &a}, {&two_a, &b, &a}, {&two_b, &two_a, &b, &a}};
        std::copy(&g[0][0], &g[0][0] + 16, &grid[0][0]);
        break;
      }
    }
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c <= r; ++c)
        if (grid[r][c] != nullptr) next.set_block(r * h, c * h, *grid[r][c]);
    cur = std::move(next);
  }
  return cur;
}

/// Smallest number of steps whose expansion covers n rows.
inline int steps_for(std::size_t n) {
  int steps = 0;
  while ((std::size_t{2} << steps) < n) ++steps;
  return steps;
}

// Hankel matrices of mu.

enum class HankelSource { MU_SHIFT0, MU_SHIFT1 };

/// h(i, j) = mu(i + j + shift) in {0, 1}.
inline TriMatrix hankel_bits(HankelSource source, std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxSize, "Hankel size");
  const std::uint64_t shift = source == HankelSource::MU_SHIFT1 ? 1 : 0;
  TriMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = static_cast<std::int8_t>(seq::mu(i + j + shift));
  return h;
}

// Identity verifiers. Each returns a report whose failure list is empty when
// the identity holds at the requested size.

inline constexpr std::size_t kMaxVerifySize = 4096;

/// H = D_s L D_a L^t D_s.
inline VerifyReport verify_thm2(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "thm2 size");
  VerifyReport report{"thm2", n};
  const TriMatrix l = build_tri(TriKind::L, n);
  const DiagSigns ds = d_s(n);
  const WideMatrix product = ds * (mat_mul_small(l * d_a(n), transpose(l)) * ds);
  report.compare("D_s L D_a L^t D_s = H", hankel_bits(HankelSource::MU_SHIFT0, n), product);
  return report;
}

/// L D_a M = D_a, and P = D_s D_a M D_a D_s inverts D_s L D_s with entries in {0, +-1}.
inline VerifyReport verify_thm3(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "thm3 size");
  VerifyReport report{"thm3", n};
  const TriMatrix l = build_tri(TriKind::L, n);
  const TriMatrix m = build_tri(TriKind::M, n);
  const DiagSigns da = d_a(n);
  const DiagSigns ds = d_s(n);
  report.compare("L D_a M = D_a", da.as_matrix<std::int64_t>(), mat_mul_small(l * da, m));

  const TriMatrix p = (ds * da) * (m * (da * ds));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p(i, j) < -1 || p(i, j) > 1) report.fail("P entries in {0,+-1}", i, j, "|p| <= 1", entry_string(p(i, j)));
  report.compare("P (D_s L D_s) = I", WideMatrix::identity(n), mat_mul_small(p, ds * (l * ds)));
  return report;
}

/// M D_e L = A + D_e and M D_o L = A + D_o.
inline VerifyReport verify_prop_mdl(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "mdl size");
  VerifyReport report{"mdl", n};
  const TriMatrix l = build_tri(TriKind::L, n);
  const TriMatrix m = build_tri(TriKind::M, n);
  const WideMatrix a = convert<std::int64_t>(build_tri(TriKind::A_STRICT, n));
  report.compare("M D_e L = A + D_e", a + d_e(n).as_matrix<std::int64_t>(), mat_mul_small(m * d_e(n), l));
  report.compare("M D_o L = A + D_o", a + d_o(n).as_matrix<std::int64_t>(), mat_mul_small(m * d_o(n), l));
  return report;
}

/// ML is 1 on the diagonal and 2 below it; LM follows the LM block rule;
/// (ML)^{-1} = D_a ML D_a and likewise for LM.
inline VerifyReport verify_prop_ml_lm(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "ml-lm size");
  VerifyReport report{"ml-lm", n};
  const TriMatrix l = build_tri(TriKind::L, n);
  const TriMatrix m = build_tri(TriKind::M, n);
  const DiagSigns da = d_a(n);

  const WideMatrix ml = mat_mul_small(m, l);
  WideMatrix pattern(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) pattern(i, j) = i == j ? 1 : 2;
  report.compare("ML = 0/1/2 pattern", pattern, ml);

  const WideMatrix lm = mat_mul_small(l, m);
  report.compare("LM = LM block rule", babab_expand(BlockRule::LM_RULE, steps_for(n)).leading(n), lm);

  const auto id = WideMatrix::identity(n);
  report.compare("(ML) D_a (ML) D_a = I", id, ml * da * (ml * da));
  report.compare("(LM) D_a (LM) D_a = I", id, lm * da * (lm * da));
  return report;
}

/// D_t~ L~ D_s~ L~^t D_t~ = H~, L~ D_s~ M~ = M~ D_s~ L~ = D_s~, the parity
/// vanishing of L~ and M~, and their interleaving with L and M.
inline VerifyReport verify_thm5(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "thm5 size");
  VerifyReport report{"thm5", n};
  const TriMatrix lt = build_tri(TriKind::LTILDE, n);
  const TriMatrix mt = build_tri(TriKind::MTILDE, n);
  const DiagSigns st = d_stilde(n);
  const DiagSigns tt = d_ttilde(n);

  const WideMatrix h = tt * (mat_mul_small(lt * st, transpose(lt)) * tt);
  report.compare("D_t~ L~ D_s~ L~^t D_t~ = H~", hankel_bits(HankelSource::MU_SHIFT1, n), h);
  report.compare("L~ D_s~ M~ = D_s~", st.as_matrix<std::int64_t>(), mat_mul_small(lt * st, mt));
  report.compare("M~ D_s~ L~ = D_s~", st.as_matrix<std::int64_t>(), mat_mul_small(mt * st, lt));

  const std::size_t half = (n + 1) / 2;
  const TriMatrix l = build_tri(TriKind::L, half);
  const TriMatrix m = build_tri(TriKind::M, half);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((i + j) % 2 == 1) {
        if (lt(i, j) != 0) report.fail("l~ vanishes off parity", i, j, "0", entry_string(lt(i, j)));
        if (mt(i, j) != 0) report.fail("m~ vanishes off parity", i, j, "0", entry_string(mt(i, j)));
        continue;
      }
      const std::size_t hi = i / 2;
      const std::size_t hj = j / 2;
      if (i % 2 == 0) {
        if (lt(i, j) != l(hi, hj)) report.fail("l~(2i,2j) = l(i,j)", i, j, entry_string(l(hi, hj)), entry_string(lt(i, j)));
        if (mt(i, j) != m(hi, hj)) report.fail("m~(2i,2j) = m(i,j)", i, j, entry_string(m(hi, hj)), entry_string(mt(i, j)));
      } else {
        if (lt(i, j) != lt(hi, hj))
          report.fail("l~(2i+1,2j+1) = l~(i,j)", i, j, entry_string(lt(hi, hj)), entry_string(lt(i, j)));
        if (mt(i, j) != mt(hi, hj))
          report.fail("m~(2i+1,2j+1) = m~(i,j)", i, j, entry_string(mt(hi, hj)), entry_string(mt(i, j)));
      }
    }
  }
  return report;
}

/// Every block rule against its formula-built matrix (L, M, L~0, M~0, and LM
/// against the product L M) at all power-of-two sizes 2 .. n.
inline VerifyReport verify_babab(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "babab size");
  VerifyReport report{"babab", n};
  for (int steps = 0; (std::size_t{2} << steps) <= n; ++steps) {
    const std::size_t size = std::size_t{2} << steps;
    const std::string suffix = " @" + std::to_string(size);
    report.compare("L rule" + suffix, convert<std::int64_t>(build_tri(TriKind::L, size)),
                   babab_expand(BlockRule::L_RULE, steps));
    report.compare("M rule" + suffix, convert<std::int64_t>(build_tri(TriKind::M, size)),
                   babab_expand(BlockRule::M_RULE, steps));
    report.compare("Ltilde0 rule" + suffix, convert<std::int64_t>(build_tri(TriKind::LTILDE0, size)),
                   babab_expand(BlockRule::LTILDE0_RULE, steps));
    report.compare("Mtilde0 rule" + suffix, convert<std::int64_t>(build_tri(TriKind::MTILDE0, size)),
                   babab_expand(BlockRule::MTILDE0_RULE, steps));
    report.compare("LM rule" + suffix,
                   mat_mul_small(build_tri(TriKind::L, size), build_tri(TriKind::M, size)),
                   babab_expand(BlockRule::LM_RULE, steps));
  }
  return report;
}

// General sign twists sum eps_k x^{2^k}.

/// Diagonal D with d_n = prod over set bits j of n of c_j, c_0 = eps_1 and
/// c_j = eps_j eps_{j+1}. Conjugating D_s L D_a L^t D_s by D gives the Hankel
/// matrix of x^{-1} sum eps_k x^{2^k}. A leading eps_0 = -1 is accepted only
/// with `negated_head`; the diagonal is then built from -eps and the caller
/// must use -D_a in the middle factor.
inline DiagSigns general_eps_diag(const std::vector<int>& eps, std::size_t n, bool negated_head = false) {
  paperfold::detail::require_size(n, 1, kMaxVerifySize, "eps size");
  if (eps.empty()) throw error(errc::invalid_argument, "eps must be nonempty");
  for (int e : eps)
    if (e != 1 && e != -1) throw error(errc::invalid_argument, "eps entries must be +-1");
  std::vector<int> e = eps;
  if (e[0] == -1) {
    if (!negated_head) throw error(errc::invalid_argument, "eps_0 = -1 requires the negated D_a variant");
    for (auto& v : e) v = -v;
  }
  // Bit j of an index below n reads eps_{j+1}.
  if (e.size() < static_cast<std::size_t>(std::bit_width(n - 1)) + 1)
    throw error(errc::invalid_argument, "eps too short for size " + std::to_string(n));

  std::vector<int> c(e.size() - 1);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = j == 0 ? e[1] : e[j] * e[j + 1];

  std::vector<std::int8_t> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    int sign = 1;
    for (std::size_t j = 0; (i >> j) != 0; ++j)
      if (((i >> j) & 1U) != 0) sign *= c[j];
    v[i] = static_cast<std::int8_t>(sign);
  }
  return DiagSigns(std::move(v));
}

/// Hankel matrix of the sequence c with sum c_m x^{m+1} = sum eps_k x^{2^k}.
inline WideMatrix eps_hankel(const std::vector<int>& eps, std::size_t n) {
  WideMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t m = i + j + 1;
      if (std::has_single_bit(m)) {
        const auto k = static_cast<std::size_t>(std::countr_zero(m));
        if (k >= eps.size()) throw error(errc::invalid_argument, "eps too short for Hankel size");
        h(i, j) = eps[k];
      }
    }
  return h;
}

/// (D D_s) L (+-D_a) L^t (D_s D) against the Hankel matrix built directly
/// from the signed series.
inline VerifyReport verify_eps(const std::vector<int>& eps, std::size_t n) {
  VerifyReport report{"eps", n};
  const bool negated = !eps.empty() && eps[0] == -1;
  const DiagSigns d = general_eps_diag(eps, n, negated);
  const DiagSigns outer = d * d_s(n);
  const DiagSigns middle = negated ? -d_a(n) : d_a(n);
  const TriMatrix l = build_tri(TriKind::L, n);
  const WideMatrix product = outer * (mat_mul_small(l * middle, transpose(l)) * outer);
  report.compare("D D_s L D_a L^t D_s D = Hankel(eps)", eps_hankel(eps, n), product);
  return report;
}

/// Random signs long enough for Hankel size n: eps_k is the top bit of the
/// k-th draw of mt19937_64, 1 -> -1. eps_0 is drawn like the rest.
inline std::vector<int> random_eps(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> eps(static_cast<std::size_t>(std::bit_width(2 * n)) + 1);
  for (auto& e : eps) e = (rng() >> 63) != 0 ? -1 : 1;
  return eps;
}

}  // namespace paperfold::gf2sign

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "paperfold/catalanz.hpp"
#include "paperfold/error.hpp"
#include "paperfold/gf2sign.hpp"
#include "paperfold/matrix.hpp"
#include "paperfold/report.hpp"
#include "paperfold/seq.hpp"

namespace paperfold::cfseries {

using BigMatrix = DenseMatrix<mpq_class>;

// ---------------------------------------------------------------------------
// Truncated power series

class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order = 0) : c_(order) {}
  TruncSeries(std::size_t order, std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { c_.resize(order); }

  static TruncSeries monomial(std::size_t order, const mpq_class& coeff, std::uint64_t exp) {
    TruncSeries s(order);
    if (exp < order) s.c_[exp] = coeff;
    return s;
  }

  std::size_t order() const noexcept { return c_.size(); }
  const mpq_class& operator[](std::size_t k) const { return c_[k]; }
  mpq_class& operator[](std::size_t k) { return c_[k]; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

  /// Index of the first nonzero coefficient; order() for the zero series.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return k;
    return c_.size();
  }

  TruncSeries inverse() const {
    if (c_.empty() || c_[0] == 0) throw error(errc::non_unit, "series with zero constant term has no inverse");
    const std::size_t t = c_.size();
    TruncSeries out(t);
    const mpq_class inv0 = 1 / c_[0];
    out.c_[0] = inv0;
    for (std::size_t n = 1; n < t; ++n) {
      mpq_class acc = 0;
      for (std::size_t k = 1; k <= n; ++k)
        if (c_[k] != 0) acc += c_[k] * out.c_[n - k];
      out.c_[n] = -acc * inv0;
    }
    return out;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(rational_string(v));
    return out;
  }

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) {
    same_order(a, b);
    for (std::size_t k = 0; k < a.order(); ++k) a.c_[k] += b.c_[k];
    return a;
  }

  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) {
    same_order(a, b);
    for (std::size_t k = 0; k < a.order(); ++k) a.c_[k] -= b.c_[k];
    return a;
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    same_order(a, b);
    const std::size_t t = a.order();
    TruncSeries out(t);
    for (std::size_t i = 0; i < t; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < t; ++j)
        if (b.c_[j] != 0) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * b.inverse(); }

 private:
  static void same_order(const TruncSeries& a, const TruncSeries& b) {
    if (a.order() != b.order()) throw error(errc::size_mismatch, "series orders differ");
  }

  std::vector<mpq_class> c_;
};

enum class SeriesOp { ADD, MUL, INV_B, DIV };

inline TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::ADD: return a + b;
    case SeriesOp::MUL: return a * b;
    case SeriesOp::INV_B:
      if (a.order() != b.order()) throw error(errc::size_mismatch, "series orders differ");
      return b.inverse();
    case SeriesOp::DIV: return a / b;
  }
  throw error(errc::invalid_argument, "unknown series operation");
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials in x_1 ... x_6

inline constexpr int kMaxVars = 6;

class MultiPoly {
 public:
  using Exponents = std::array<std::uint16_t, kMaxVars>;

  MultiPoly() = default;
  MultiPoly(long constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_[Exponents{}] = constant;
  }

  /// The variable x_k, 1 <= k <= 6.
  static MultiPoly var(int k) {
    if (k < 1 || k > kMaxVars) throw error(errc::size_guard, "variable index " + std::to_string(k) + " outside [1, 6]");
    Exponents e{};
    e[static_cast<std::size_t>(k - 1)] = 1;
    MultiPoly p;
    p.terms_[e] = 1;
    return p;
  }

  const std::map<Exponents, mpz_class>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }

  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }

  MultiPoly operator-() const { return MultiPoly{} - *this; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (std::size_t v = 0; v < kMaxVars; ++v) {
          const unsigned sum = unsigned{ea[v]} + unsigned{eb[v]};
          if (sum > std::numeric_limits<std::uint16_t>::max()) throw error(errc::size_guard, "exponent overflow");
          e[v] = static_cast<std::uint16_t>(sum);
        }
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  /// Terms in ascending exponent order, e.g. "1 + x1 - x1^2*x2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c < 0;
      mpz_class mag = neg ? mpz_class(-c) : c;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(v + 1);
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  void add_term(const Exponents& e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Exponents, mpz_class> terms_;
};

inline std::string entry_string(const MultiPoly& p) { return p.to_string(); }

// ---------------------------------------------------------------------------
// 2x2 matrices and word products

template <class T>
struct Mat2 {
  T a = T(1), b = T(0), c = T(0), d = T(1);

  T det() const { return a * d - b * c; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline constexpr std::size_t kMaxWordLength = 2 * ((std::size_t{1} << 12) - 1);

/// [[0, u], [1, 1]]
inline Mat2<MultiPoly> letter_matrix(const MultiPoly& u) { return {MultiPoly(0), u, MultiPoly(1), MultiPoly(1)}; }

/// M(U) = prod [[0, u_i], [1, 1]], left to right. With `subst` nonempty,
/// x_k is replaced by subst[k - 1].
inline Mat2<MultiPoly> word_matrix(const seq::FoldWord& word, const std::vector<MultiPoly>& subst = {}) {
  paperfold::detail::require_size(word.size(), 0, kMaxWordLength, "word length");
  Mat2<MultiPoly> m;
  for (const auto& letter : word) {
    MultiPoly x;
    if (subst.empty()) {
      x = MultiPoly::var(letter.var_index);
    } else {
      paperfold::detail::require_size(static_cast<std::size_t>(letter.var_index), 1, subst.size(), "variable index");
      x = subst[static_cast<std::size_t>(letter.var_index - 1)];
    }
    m = m * letter_matrix(letter.sign < 0 ? -x : x);
  }
  return m;
}

/// X_k = 1 + sum_{j<=k} prod_{i<=j} x_i^{2^{j-i}}; X~_k flips the sign of the
/// last product (X~_0 = 1).
inline std::pair<MultiPoly, MultiPoly> x_polys(int k) {
  paperfold::detail::require_size(static_cast<std::size_t>(k < 0 ? kMaxVars + 1 : k), 0, kMaxVars, "X_k index");
  MultiPoly x(1);
  MultiPoly last(0);
  MultiPoly prod(1);
  for (int j = 1; j <= k; ++j) {
    prod = prod * prod * MultiPoly::var(j);
    x = x + prod;
    last = prod;
  }
  return {x, x - last - last};
}

/// M(W_m), M(reverse W_m) and M(1 W_m) against the X polynomials for
/// m = 1..n, plus det M(W_m) = prod(-u_i) and the X recursions.
inline VerifyReport verify_lemma5(int n) {
  paperfold::detail::require_size(static_cast<std::size_t>(n < 0 ? 0 : n), 1, 5, "Lemma level");
  VerifyReport report{"lemma5", static_cast<std::size_t>(n)};
  const auto m_idx = [](int m) { return static_cast<std::size_t>(m); };
  auto expect = [&](const std::string& what, int m, std::size_t entry, const MultiPoly& want, const MultiPoly& got) {
    if (!(want == got)) report.fail(what, m_idx(m), entry, want.to_string(), got.to_string());
  };
  auto expect_mat = [&](const std::string& what, int m, const Mat2<MultiPoly>& want, const Mat2<MultiPoly>& got) {
    expect(what, m, 0, want.a, got.a);
    expect(what, m, 1, want.b, got.b);
    expect(what, m, 2, want.c, got.c);
    expect(what, m, 3, want.d, got.d);
  };

  for (int m = 1; m <= n; ++m) {
    const auto [xm, xtm] = x_polys(m);
    const MultiPoly sq = x_polys(m - 1).first * x_polys(m - 1).first;
    seq::FoldWord w = seq::fold_word(m);
    const auto mw = word_matrix(w);
    expect_mat("M(W_n)", m, {xtm - sq, MultiPoly(1) - xm, sq, xm}, mw);

    seq::FoldWord rev(w.rbegin(), w.rend());
    expect_mat("M(reverse W_n)", m, {xm - sq, MultiPoly(1) - xtm, sq, xtm}, word_matrix(rev));

    const auto lead = letter_matrix(MultiPoly(1)) * mw;
    expect("P_{2(2^k-1)} = X_k", m, 1, xm, lead.b);
    expect("Q_{2(2^k-1)} = 1", m, 3, MultiPoly(1), lead.d);

    MultiPoly det(1);
    for (const auto& letter : w) {
      const MultiPoly x = MultiPoly::var(letter.var_index);
      det = det * (letter.sign < 0 ? x : -x);
    }
    expect("det M(W_n) = prod(-u_i)", m, 0, det, mw.det());

    if (m < kMaxVars) {
      const auto [xn1, xtn1] = x_polys(m + 1);
      const MultiPoly defect = MultiPoly::var(m + 1) * (sq - xm * xtm);
      expect("X_n + x_{n+1}(X_{n-1}^2 - X_n X~_n) = X_{n+1}", m, 0, xn1, xm + defect);
      expect("X_n - x_{n+1}(X_{n-1}^2 - X_n X~_n) = X~_{n+1}", m, 0, xtn1, xm - defect);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Continued fractions b0 + a_1/(b_1 + a_2/(b_2 + ...)) with monomial a_k

using IntPoly = std::vector<mpz_class>;

/// One partial quotient: a_k = coeff * x^exp, b_k = denom (low degree first).
struct CfTerm {
  mpz_class coeff = 1;
  std::uint64_t exp = 1;
  IntPoly denom{1};
};

using CfStream = std::function<CfTerm(std::uint64_t k)>;  // k >= 1

inline constexpr std::uint64_t kCfStepBudget = 10 * seq::fold_length(12);

/// Limit of the continued fraction to order T. Stops once two consecutive
/// convergents agree below x^T: P_k Q_{k-1} - P_{k-1} Q_k = (-1)^{k+1} a_1...a_k
/// and Q_k(0) != 0, so this happens exactly when sum exp(a_i) >= T.
inline TruncSeries cf_limit(const CfStream& terms, std::size_t order, const mpz_class& b0 = 0,
                            std::uint64_t budget = kCfStepBudget) {
  paperfold::detail::require_size(order, 1, std::size_t{1} << 16, "series order");
  IntPoly p_prev(order), q_prev(order), p(order), q(order);
  p_prev[0] = 1;
  p[0] = b0;
  q[0] = 1;
  std::uint64_t val = 0;
  IntPoly p_next(order), q_next(order);
  for (std::uint64_t k = 1; k <= budget; ++k) {
    const CfTerm t = terms(k);
    if (t.coeff == 0) throw error(errc::invalid_argument, "zero partial numerator at step " + std::to_string(k));
    for (std::size_t i = 0; i < order; ++i) {
      p_next[i] = 0;
      q_next[i] = 0;
      for (std::size_t j = 0; j < t.denom.size() && j <= i; ++j) {
        if (t.denom[j] == 0) continue;
        p_next[i] += t.denom[j] * p[i - j];
        q_next[i] += t.denom[j] * q[i - j];
      }
      if (t.exp <= i) {
        p_next[i] += t.coeff * p_prev[i - t.exp];
        q_next[i] += t.coeff * q_prev[i - t.exp];
      }
    }
    std::swap(p_prev, p);
    std::swap(q_prev, q);
    std::swap(p, p_next);
    std::swap(q, q_next);
    if (q[0] == 0) throw error(errc::non_unit, "convergent denominator vanishes at x = 0");
    val = t.exp >= order - std::min<std::uint64_t>(val, order) ? order : val + t.exp;
    if (val >= order) {
      std::vector<mpq_class> pc(p.begin(), p.end()), qc(q.begin(), q.end());
      return TruncSeries(order, std::move(pc)) / TruncSeries(order, std::move(qc));
    }
  }
  throw error(errc::no_convergence, "no stabilization within " + std::to_string(budget) + " steps");
}

inline IntPoly poly_trim(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

struct Convergent {
  IntPoly p;
  IntPoly q;
};

/// Exact convergents P_0/Q_0 ... P_count/Q_count.
inline std::vector<Convergent> convergents(const CfStream& terms, std::size_t count, const mpz_class& b0 = 0) {
  std::vector<Convergent> out;
  Convergent prev{{1}, {}};
  Convergent cur{poly_trim({b0}), {1}};
  out.push_back(cur);
  for (std::uint64_t k = 1; k <= count; ++k) {
    const CfTerm t = terms(k);
    IntPoly a(t.exp + 1);
    a[t.exp] = t.coeff;
    Convergent next{poly_add(poly_mul(t.denom, cur.p), poly_mul(a, prev.p)),
                    poly_add(poly_mul(t.denom, cur.q), poly_mul(a, prev.q))};
    prev = std::move(cur);
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

/// exponent of x substituted for x_i in the three worked examples, saturated
/// at 2^62.
inline std::uint64_t example_exponent(int example, int i) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  switch (example) {
    case 1: return 1;
    case 2: {
      std::uint64_t p = 1;
      for (int k = 1; k < i && p < cap; ++k) p *= 3;
      return std::min(p, cap) + 1;
    }
    case 3: {
      std::uint64_t f = 1;
      for (int k = 2; k <= i && f < cap; ++k) f = f > cap / static_cast<std::uint64_t>(k) ? cap : f * k;
      const auto m = static_cast<std::uint64_t>(i - 1);
      return (m != 0 && f > cap / m) ? cap : m * f + 1;
    }
    default: throw error(errc::invalid_argument, "example must be 1, 2 or 3");
  }
}

/// x/1 + w_1/1 + w_2/1 + ... with x_i -> x^{exponent(i)}.
inline CfStream folded_stream(std::function<std::uint64_t(int)> exponent) {
  return [exponent = std::move(exponent)](std::uint64_t k) -> CfTerm {
    if (k == 1) return {1, 1, {1}};
    const auto letter = seq::fold_stream(k - 1);
    return {letter.sign, exponent(letter.var_index), {1}};
  };
}

inline CfStream example_stream(int example) {
  example_exponent(example, 1);
  return folded_stream([example](int i) { return example_exponent(example, i); });
}

/// Expected limits: sum x^{2^k}, sum x^{3^k}, sum_{k>=1} x^{k!}.
inline TruncSeries example_target(int example, std::size_t order) {
  TruncSeries s(order);
  switch (example) {
    case 1:
      for (std::uint64_t e = 1; e < order; e *= 2) s[e] = 1;
      break;
    case 2:
      for (std::uint64_t e = 1; e < order; e *= 3) s[e] = 1;
      break;
    case 3:
      for (std::uint64_t e = 1, k = 1; e < order; e *= ++k) s[e] = 1;
      break;
    default: throw error(errc::invalid_argument, "example must be 1, 2 or 3");
  }
  return s;
}

/// x/(1 - d_1 x) + x^2/(1 - d_2 x) + x^2/(1 - d_3 x) + ...
inline CfStream jacobi_stream() {
  return [](std::uint64_t k) -> CfTerm {
    const auto dk = seq::d(static_cast<std::int64_t>(k));
    return {1, k == 1 ? 1U : 2U, {1, -dk}};
  };
}

/// Examples 1-3 and the Jacobi form of sum x^{2^k}, all to `order`.
inline VerifyReport verify_thm1(std::size_t order) {
  VerifyReport report{"thm1", 0};
  report.order = order;
  auto compare = [&](const std::string& what, const TruncSeries& want, const TruncSeries& got) {
    for (std::size_t k = 0; k < order; ++k)
      if (want[k] != got[k]) report.fail(what, k, 0, rational_string(want[k]), rational_string(got[k]));
  };
  for (int ex = 1; ex <= 3; ++ex)
    compare("example " + std::to_string(ex), example_target(ex, order), cf_limit(example_stream(ex), order));
  compare("jacobi form", example_target(1, order), cf_limit(jacobi_stream(), order));
  return report;
}

// ---------------------------------------------------------------------------
// Hankel matrices, LU and the Stieltjes matrix

using MomentFunctional = std::function<mpq_class(std::size_t)>;

enum class MomentSource { MU, MU_SHIFT, CATALAN, CATALAN_SHIFT };

inline const char* name(MomentSource src) {
  switch (src) {
    case MomentSource::MU: return "mu";
    case MomentSource::MU_SHIFT: return "mu-shift";
    case MomentSource::CATALAN: return "catalan";
    case MomentSource::CATALAN_SHIFT: return "catalan-shift";
  }
  return "?";
}

inline MomentFunctional moments(MomentSource src) {
  switch (src) {
    case MomentSource::MU: return [](std::size_t k) { return mpq_class(seq::mu(k)); };
    case MomentSource::MU_SHIFT: return [](std::size_t k) { return mpq_class(seq::mu(k + 1)); };
    case MomentSource::CATALAN: return [](std::size_t k) { return mpq_class(catalanz::catalan(k)); };
    case MomentSource::CATALAN_SHIFT: return [](std::size_t k) { return mpq_class(catalanz::catalan(k + 1)); };
  }
  throw error(errc::invalid_argument, "unknown moment source");
}

inline constexpr std::size_t kMaxHankelSize = 64;

inline BigMatrix hankel(const MomentFunctional& mu, std::size_t n) {
  std::vector<mpq_class> m(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) m[k] = mu(k);
  BigMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = m[i + j];
  return h;
}

/// Determinant by fraction-free elimination with row swaps on zero pivots.
template <class T>
T bareiss_det(DenseMatrix<T> a) {
  const std::size_t n = a.size();
  T prev = T(1);
  T sign = T(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return n == 0 ? T(1) : T(sign * a(n - 1, n - 1));
}

struct HankelLU {
  BigMatrix l;
  std::vector<mpq_class> d;
  std::vector<mpq_class> minors;  // det H(1) ... det H(n)
};

namespace detail {

/// Bareiss without pivoting: after step k, row k holds det H(k) times the
/// k-th row of U, so L and D fall out of the pivots.
inline HankelLU hankel_lu(const MomentFunctional& mu, std::size_t n) {
  BigMatrix a = hankel(mu, n);
  HankelLU out{BigMatrix::identity(n), std::vector<mpq_class>(n), std::vector<mpq_class>(n)};
  mpq_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const mpq_class pivot = a(k, k);
    if (pivot == 0) throw error(errc::singular_minor, "leading minor of order " + std::to_string(k + 1) + " vanishes", k + 1);
    out.minors[k] = pivot;
    out.d[k] = pivot / prev;
    for (std::size_t i = k + 1; i < n; ++i) out.l(i, k) = a(i, k) / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (pivot * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = pivot;
  }
  return out;
}

}  // namespace detail

/// H(n) = L diag(D) L^t with L unipotent lower-triangular.
inline HankelLU hankel_lu_rational(const MomentFunctional& mu, std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxHankelSize, "Hankel size");
  return detail::hankel_lu(mu, n);
}

struct JacobiCF {
  std::vector<mpq_class> a;  // a_0 ... a_{n-1}
  std::vector<mpq_class> b;  // b_1 ... b_{n-1}
  BigMatrix s;               // S(n)
};

/// S(n) = L(n)^{-1} L_-(n), where L_- drops the first row of L.
inline JacobiCF stieltjes_extract(const MomentFunctional& mu, std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxHankelSize, "Stieltjes depth");
  const BigMatrix l = detail::hankel_lu(mu, n + 1).l;
  JacobiCF out{std::vector<mpq_class>(n), std::vector<mpq_class>(n - 1), BigMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class x = l(i + 1, j);
      for (std::size_t k = 0; k < i; ++k)
        if (l(i, k) != 0) x -= l(i, k) * out.s(k, j);
      out.s(i, j) = x;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.a[i] = out.s(i, i);
  for (std::size_t i = 1; i < n; ++i) out.b[i - 1] = out.s(i, i - 1);
  return out;
}

/// Records every entry of S off the three diagonals, and superdiagonal != 1.
inline void check_tridiagonal(VerifyReport& report, const BigMatrix& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const mpq_class want = (j == i + 1) ? 1 : 0;
      if ((j > i + 1 || j + 1 < i || j == i + 1) && s(i, j) != want)
        report.fail("S tridiagonal with unit superdiagonal", i, j, rational_string(want), rational_string(s(i, j)));
    }
}

/// a_{k-1} = d(k), b_k = -1, D_i = b_1...b_i, det S(k) = s(k) both by the
/// continuant and by elimination.
inline VerifyReport verify_thm4(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxHankelSize, "Stieltjes depth");
  VerifyReport report{"thm4", n};
  const auto mu = moments(MomentSource::MU);
  const JacobiCF jac = stieltjes_extract(mu, n);
  const HankelLU lu = hankel_lu_rational(mu, n);
  check_tridiagonal(report, jac.s);

  for (std::size_t k = 1; k <= n; ++k) {
    const mpq_class want = seq::d(static_cast<std::int64_t>(k));
    if (jac.a[k - 1] != want) report.fail("a_{k-1} = d_k", k, 0, rational_string(want), rational_string(jac.a[k - 1]));
  }
  for (std::size_t k = 1; k < n; ++k)
    if (jac.b[k - 1] != -1) report.fail("b_k = -1", k, 0, "-1/1", rational_string(jac.b[k - 1]));

  mpq_class prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) prod *= jac.b[i - 1];
    if (lu.d[i] != prod) report.fail("D_i = b_1...b_i", i, 0, rational_string(prod), rational_string(lu.d[i]));
  }

  mpq_class c_prev = 1;  // det S(0)
  mpq_class c = jac.a[0];
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      const mpq_class next = jac.a[k - 1] * c - jac.b[k - 2] * c_prev;
      c_prev = c;
      c = next;
    }
    const mpq_class want = seq::s(static_cast<std::int64_t>(k));
    if (c != want) report.fail("det S(k) = s_k (continuant)", k, 0, rational_string(want), rational_string(c));
    const mpq_class direct = bareiss_det(jac.s.leading(k));
    if (direct != want) report.fail("det S(k) = s_k (elimination)", k, 0, rational_string(want), rational_string(direct));
  }
  return report;
}

/// det H(n) for the mu moments, by elimination of each H(n) separately.
inline std::vector<mpz_class> mu_hankel_dets(std::size_t n_max) {
  paperfold::detail::require_size(n_max, 1, kMaxHankelSize, "determinant range");
  std::vector<mpz_class> out(n_max + 1);
  out[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    DenseMatrix<mpz_class> h(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = seq::mu(i + j);
    out[n] = bareiss_det(std::move(h));
  }
  return out;
}

/// det H(2) = -1, det H(2^k) = 1 (k != 1), det H(2^k + a) = (-1)^a det H(2^k - a),
/// det H(n) = (-1)^{C(n,2)}.
inline VerifyReport verify_det_identities(std::size_t n_max) {
  VerifyReport report{"dets", n_max};
  const auto dets = mu_hankel_dets(n_max);
  if (n_max >= 2 && dets[2] != -1) report.fail("det H(2) = -1", 2, 0, "-1", dets[2].get_str());
  for (std::size_t n = 1; n <= n_max; ++n) {
    const int want = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
    if (dets[n] != want) report.fail("det H(n) = (-1)^C(n,2)", n, 0, std::to_string(want), dets[n].get_str());
  }
  for (std::size_t p = 1, k = 0; p <= n_max; p *= 2, ++k) {
    if (k != 1 && dets[p] != 1) report.fail("det H(2^k) = 1", p, 0, "1", dets[p].get_str());
    for (std::size_t a = 0; a < p && p + a <= n_max; ++a) {
      const mpz_class want = (a % 2 == 0) ? dets[p - a] : mpz_class(-dets[p - a]);
      if (dets[p + a] != want)
        report.fail("det H(2^k+a) = (-1)^a det H(2^k-a)", p + a, a, want.get_str(), dets[p + a].get_str());
    }
  }
  return report;
}

/// J-fraction of the shifted moments (1,0,1,0,0,0,1,...): a_k = 0 and
/// b_k = -sign(w_k), the folded fraction with every x_i = x^2.
inline VerifyReport verify_shift_remark(std::size_t depth) {
  VerifyReport report{"shift-remark", depth};
  const JacobiCF jac = stieltjes_extract(moments(MomentSource::MU_SHIFT), depth);
  check_tridiagonal(report, jac.s);
  for (std::size_t k = 0; k < depth; ++k)
    if (jac.a[k] != 0) report.fail("a_k = 0", k, 0, "0/1", rational_string(jac.a[k]));
  for (std::size_t k = 1; k < depth; ++k) {
    const mpq_class want = -seq::fold_stream(k).sign;
    if (jac.b[k - 1] != want) report.fail("b_k = -sign(w_k)", k, 0, rational_string(want), rational_string(jac.b[k - 1]));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials

using Coeffs = std::vector<std::int64_t>;

inline constexpr std::size_t kMaxOrthSize = 256;

/// Q_i = row i of D_s D_a M D_a D_s, coefficients of x^0 ... x^i.
inline std::vector<Coeffs> orth_polys(std::size_t n) {
  paperfold::detail::require_size(n, 1, kMaxOrthSize, "polynomial count");
  const auto m = gf2sign::build_tri(gf2sign::TriKind::M, n);
  const DiagSigns ds = gf2sign::d_s(n);
  const DiagSigns da = gf2sign::d_a(n);
  std::vector<Coeffs> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].resize(i + 1);
    for (std::size_t k = 0; k <= i; ++k) out[i][k] = ds[i] * da[i] * m(i, k) * da[k] * ds[k];
  }
  return out;
}

/// Coefficient range, Gram matrix diagonal and nonzero, and
/// Q_{n+1} = (x - d_{n+1}) Q_n + Q_{n-1} with Q_{-1} = 0.
inline VerifyReport verify_orth_polys(std::size_t n) {
  VerifyReport report{"orth-polys", n};
  const auto q = orth_polys(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= i; ++k)
      if (q[i][k] < -1 || q[i][k] > 1) report.fail("coefficients in {0,+-1}", i, k, "|c| <= 1", std::to_string(q[i][k]));

  // G = Q H Q^t over the mu moments.
  std::vector<std::vector<std::int64_t>> qh(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < n; ++b) {
      std::int64_t acc = 0;
      for (std::size_t a = 0; a <= i; ++a) acc += q[i][a] * seq::mu(a + b);
      qh[i][b] = acc;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t g = 0;
      for (std::size_t b = 0; b <= j; ++b) g += qh[i][b] * q[j][b];
      if (i != j && g != 0) report.fail("<Q_i, Q_j> = 0", i, j, "0", std::to_string(g));
      if (i == j && g == 0) report.fail("<Q_i, Q_i> != 0", i, j, "nonzero", "0");
    }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::int64_t dk = seq::d(static_cast<std::int64_t>(k + 1));
    Coeffs want(k + 2, 0);
    for (std::size_t a = 0; a <= k; ++a) {
      want[a + 1] += q[k][a];
      want[a] -= dk * q[k][a];
    }
    if (k > 0)
      for (std::size_t a = 0; a < k; ++a) want[a] += q[k - 1][a];
    for (std::size_t a = 0; a < k + 2; ++a)
      if (want[a] != q[k + 1][a])
        report.fail("Q_{n+1} = (x - d_{n+1}) Q_n + Q_{n-1}", k + 1, a, std::to_string(want[a]), std::to_string(q[k + 1][a]));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Uniqueness

struct UniquenessResult {
  bool pass = false;
  std::vector<int> eps;  // eps_k = c_{2^k - 1}
  std::size_t n = 0;     // failing order (H, Htilde) or index (pattern)
  std::string which;     // "H", "Htilde" or "pattern"
};

namespace detail {

inline std::int64_t small_hankel_det(const std::vector<int>& c, std::size_t shift, std::size_t n) {
  DenseMatrix<std::int64_t> h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = c[i + j + shift];
  return bareiss_det(std::move(h));
}

/// The determinant condition that becomes computable once c has `len`
/// entries: det H(n) for len = 2n - 1, det H~(n) for len = 2n.
inline bool newest_condition_holds(const std::vector<int>& c, std::size_t len) {
  const std::size_t n = (len + 1) / 2;
  const std::int64_t det = small_hankel_det(c, len % 2 == 1 ? 0 : 1, n);
  return det == 1 || det == -1;
}

}  // namespace detail

inline constexpr std::size_t kMaxSearchLength = 10;

inline UniquenessResult uniqueness_check(const std::vector<int>& c) {
  if (c.size() < 2) throw error(errc::size_guard, "uniqueness check needs at least two terms");
  for (int v : c)
    if (v < -1 || v > 1) throw error(errc::invalid_argument, "entries must be in {-1, 0, 1}");
  UniquenessResult out;
  for (std::size_t len = 1; len <= c.size(); ++len) {
    if (!detail::newest_condition_holds(c, len)) {
      out.n = (len + 1) / 2;
      out.which = len % 2 == 1 ? "H" : "Htilde";
      return out;
    }
  }
  for (std::size_t m = 0; m < c.size(); ++m) {
    const bool slot = std::has_single_bit(m + 1);
    if (slot ? c[m] == 0 : c[m] != 0) {
      out.n = m;
      out.which = "pattern";
      return out;
    }
    if (slot) out.eps.push_back(c[m]);
  }
  out.pass = true;
  return out;
}

/// All sequences over {-1, 0, 1} of the given length whose computable
/// determinants are all +-1, in lexicographic order of (-1 < 0 < 1).
inline std::vector<std::vector<int>> uniqueness_search(std::size_t length) {
  paperfold::detail::require_size(length, 1, kMaxSearchLength, "search length");
  std::vector<std::vector<int>> survivors;
  std::vector<int> c;
  const std::function<void()> extend = [&]() {
    if (c.size() == length) {
      survivors.push_back(c);
      return;
    }
    for (int v : {-1, 0, 1}) {
      c.push_back(v);
      if (detail::newest_condition_holds(c, c.size())) extend();
      c.pop_back();
    }
  };
  extend();
  return survivors;
}

/// Survivors of the search are exactly the +-1 patterns on positions 2^k - 1
/// with zeros elsewhere, and each passes uniqueness_check.
inline VerifyReport verify_uniqueness(std::size_t length) {
  VerifyReport report{"unique-search", length};
  const auto survivors = uniqueness_search(length);
  std::set<std::vector<int>> found(survivors.begin(), survivors.end());
  std::vector<std::size_t> slots;
  for (std::size_t m = 0; m < length; ++m)
    if (std::has_single_bit(m + 1)) slots.push_back(m);
  std::set<std::vector<int>> family;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    std::vector<int> c(length, 0);
    for (std::size_t k = 0; k < slots.size(); ++k) c[slots[k]] = ((mask >> k) & 1U) ? -1 : 1;
    family.insert(c);
  }
  auto render = [](const std::vector<int>& c) {
    std::string s;
    for (int v : c) s += (s.empty() ? "" : ",") + std::to_string(v);
    return s;
  };
  std::size_t idx = 0;
  for (const auto& c : survivors) {
    if (!family.count(c)) report.fail("survivor outside the sign-pattern family", idx, 0, "pattern", render(c));
    if (length >= 2 && !uniqueness_check(c).pass) report.fail("survivor passes uniqueness_check", idx, 0, "PASS", render(c));
    ++idx;
  }
  idx = 0;
  for (const auto& c : family) {
    if (!found.count(c)) report.fail("pattern sequence survives the search", idx, 0, render(c), "pruned");
    ++idx;
  }
  return report;
}

}  // namespace paperfold::cfseries

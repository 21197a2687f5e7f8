#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "paperfold/error.hpp"

namespace paperfold {

/// Square dense matrix, row-major, 0-indexed. Used for the small-integer
/// GF(2)-lifted matrices as well as the big-integer and rational ones.
template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  /// Top-left k x k block.
  DenseMatrix leading(std::size_t k) const {
    DenseMatrix out(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
    return out;
  }

  /// k x k block with top-left corner at (r, c).
  DenseMatrix block(std::size_t r, std::size_t c, std::size_t k) const {
    DenseMatrix out(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(r + i, c + j);
    return out;
  }

  void set_block(std::size_t r, std::size_t c, const DenseMatrix& b) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) (*this)(r + i, c + j) = b(i, j);
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Diagonal matrix with entries in {-1, 0, +1}.
class DiagSigns {
 public:
  DiagSigns() = default;
  explicit DiagSigns(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {}

  std::size_t size() const noexcept { return signs_.size(); }
  std::int8_t operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<std::int8_t>& values() const noexcept { return signs_; }

  friend bool operator==(const DiagSigns&, const DiagSigns&) = default;

  /// Entrywise product D1 * D2 (diagonal matrices commute).
  friend DiagSigns operator*(const DiagSigns& a, const DiagSigns& b) {
    if (a.size() != b.size()) throw error(errc::size_mismatch, "diagonal product");
    std::vector<std::int8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::int8_t>(a[i] * b[i]);
    return DiagSigns(std::move(out));
  }

  DiagSigns operator-() const {
    std::vector<std::int8_t> out(signs_);
    for (auto& v : out) v = static_cast<std::int8_t>(-v);
    return DiagSigns(std::move(out));
  }

  template <class T>
  DenseMatrix<T> as_matrix() const {
    DenseMatrix<T> m(size());
    for (std::size_t i = 0; i < size(); ++i) m(i, i) = T(signs_[i]);
    return m;
  }

 private:
  std::vector<std::int8_t> signs_;
};

namespace detail {

template <class T>
bool is_zero(const T& v) {
  return v == 0;
}

}  // namespace detail

/// Exact product accumulated in R. Zero entries of `a` are skipped, which
/// makes triangular products roughly six times cheaper.
template <class R, class A, class B>
DenseMatrix<R> multiply(const DenseMatrix<A>& a, const DenseMatrix<B>& b) {
  if (a.size() != b.size()) throw error(errc::size_mismatch, "matrix product");
  const std::size_t n = a.size();
  DenseMatrix<R> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const A& aik = a(i, k);
      if (detail::is_zero(aik)) continue;
      const R factor(aik);
      auto src = b.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        if (detail::is_zero(src[j])) continue;
        dst[j] += factor * R(src[j]);
      }
    }
  }
  return out;
}

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return multiply<T>(a, b);
}

template <class T>
DenseMatrix<T> operator+(DenseMatrix<T> a, const DenseMatrix<T>& b) {
  if (a.size() != b.size()) throw error(errc::size_mismatch, "matrix sum");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a(i, j) += b(i, j);
  return a;
}

template <class T>
DenseMatrix<T> operator-(DenseMatrix<T> a, const DenseMatrix<T>& b) {
  if (a.size() != b.size()) throw error(errc::size_mismatch, "matrix difference");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a(i, j) -= b(i, j);
  return a;
}

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& m) {
  DenseMatrix<T> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(j, i) = m(i, j);
  return out;
}

template <class To, class From>
DenseMatrix<To> convert(const DenseMatrix<From>& m) {
  DenseMatrix<To> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = To(m(i, j));
  return out;
}

/// D * M
template <class T>
DenseMatrix<T> operator*(const DiagSigns& d, DenseMatrix<T> m) {
  if (d.size() != m.size()) throw error(errc::size_mismatch, "diagonal times matrix");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto& v : m.row(i)) v *= T(d[i]);
  return m;
}

/// M * D
template <class T>
DenseMatrix<T> operator*(DenseMatrix<T> m, const DiagSigns& d) {
  if (d.size() != m.size()) throw error(errc::size_mismatch, "matrix times diagonal");
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.size(); ++j) r[j] *= T(d[j]);
  }
  return m;
}

inline std::string entry_string(std::int8_t v) { return std::to_string(static_cast<int>(v)); }
inline std::string entry_string(std::int32_t v) { return std::to_string(v); }
inline std::string entry_string(std::int64_t v) { return std::to_string(v); }
inline std::string entry_string(const mpz_class& v) { return v.get_str(); }
inline std::string entry_string(const mpq_class& v) { return v.get_str(); }

/// Always "p/q", including integers ("3/1"): the wire format for rationals.
inline std::string rational_string(const mpq_class& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw error(errc::invalid_argument, "not a rational: " + text);
  q.canonicalize();
  return q;
}

}  // namespace paperfold

#pragma once

// Dense exact matrices and the handful of operations the twist machinery
// needs: Kronecker products, finite exponential/logarithm series for
// nilpotent arguments, exact inversion, and the flip / trace operators.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/error.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = S(FieldElem(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<S>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& x) { return x.is_zero(); });
  }
  bool is_identity() const { return is_square() && *this == identity(rows_); }

  std::size_t nonzeros() const {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](const S& x) { return !x.is_zero(); }));
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) {
      if (x.is_zero()) continue;
      S r;
      r.addmul(x, s);
      x = std::move(r);
    }
    return *this;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_)
      if (!x.is_zero()) x = -x;
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DomainError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    // sparse-aware: per row of b, the list of nonzero columns
    std::vector<std::vector<std::size_t>> nz(b.rows_);
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) nz[k].push_back(j);
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& x = a(i, k);
        if (x.is_zero() || nz[k].empty()) continue;
        for (std::size_t j : nz[k]) c(i, j).addmul(x, b(k, j));
      }
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  /// Entrywise complex conjugate.
  Matrix conj() const {
    Matrix t = *this;
    for (auto& x : t.data_) x = x.conj();
    return t;
  }
  Matrix adjoint() const { return conj().transpose(); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DomainError(std::string("matrix shape mismatch in '") + op + "': " + shape() + " vs " +
                        o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// Shape followed by the nonzero entries as (row,col)=value.
template <Scalar S>
std::ostream& operator<<(std::ostream& os, const Matrix<S>& m) {
  os << m.shape();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) os << " (" << i << "," << j << ")=" << m(i, j).to_string();
  return os;
}

using FieldMatrix = Matrix<FieldElem>;
using PolyMatrix = Matrix<PolyParam>;

template <Scalar S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

/// Kronecker product; entry (i*rb + k, j*cb + l) is a(i,j) b(k,l).
template <Scalar S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const S& y = b(k, l);
          if (!y.is_zero()) r(i * b.rows() + k, j * b.cols() + l).addmul(x, y);
        }
    }
  return r;
}

inline PolyMatrix promote(const FieldMatrix& m) {
  PolyMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = PolyParam(m(i, j));
  return r;
}

/// Entrywise coefficient of h^k.
inline FieldMatrix coefficient(const PolyMatrix& m, std::size_t k) {
  FieldMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).coeff(k);
  return r;
}

/// Entrywise evaluation at h = h0.
inline FieldMatrix evaluate_at(const PolyMatrix& m, const FieldElem& h0) {
  FieldMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval(h0);
  return r;
}

template <Scalar S>
Matrix<S> power(const Matrix<S>& m, std::size_t k) {
  Matrix<S> r = Matrix<S>::identity(m.rows());
  for (std::size_t n = 0; n < k; ++n) r = r * m;
  return r;
}

/// Smallest k with m^k = 0, or nullopt when m^dim != 0.
template <Scalar S>
std::optional<std::size_t> nilpotency_index(const Matrix<S>& m) {
  Matrix<S> p = Matrix<S>::identity(m.rows());
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    p = p * m;
    if (p.is_zero()) return k;
  }
  return std::nullopt;
}

namespace detail {

inline std::string guard_label(const std::string& label) {
  return label.empty() ? std::string("<unnamed>") : label;
}

template <Scalar S>
S rational_scalar(long num, long den) {
  return S(FieldElem(Rational(num, den)));
}

}  // namespace detail

/// exp(N) = sum_k N^k / k! for nilpotent N.
///
/// Nilpotency is verified, not assumed: if N^dim != 0 the series does not
/// terminate and a GuardError naming `label` is thrown.
template <Scalar S>
Matrix<S> exp_nilpotent(const Matrix<S>& n, const std::string& label = {}) {
  if (!n.is_square()) throw DomainError("exp of a non-square matrix " + n.shape());
  const std::size_t dim = n.rows();
  Matrix<S> result = Matrix<S>::identity(dim);
  Matrix<S> term = Matrix<S>::identity(dim);
  for (std::size_t k = 1; k <= dim; ++k) {
    term = term * n;
    term *= detail::rational_scalar<S>(1, static_cast<long>(k));
    if (term.is_zero()) return result;
    result += term;
  }
  throw GuardError("series does not terminate: exponent of " + detail::guard_label(label) +
                   " is not nilpotent");
}

/// ln(1 + N) = sum_{k>=1} (-1)^{k+1} N^k / k for nilpotent N.
template <Scalar S>
Matrix<S> log1p_nilpotent(const Matrix<S>& n, const std::string& label = {}) {
  if (!n.is_square()) throw DomainError("log of a non-square matrix " + n.shape());
  const std::size_t dim = n.rows();
  Matrix<S> result(dim, dim);
  Matrix<S> power_k = Matrix<S>::identity(dim);
  for (std::size_t k = 1; k <= dim; ++k) {
    power_k = power_k * n;
    if (power_k.is_zero()) return result;
    const long sign = (k % 2 == 1) ? 1 : -1;
    result += power_k * detail::rational_scalar<S>(sign, static_cast<long>(k));
  }
  throw GuardError("argument not unipotent: 1 + " + detail::guard_label(label));
}

/// ln(U) for unipotent U (U - I nilpotent).
template <Scalar S>
Matrix<S> log_unipotent(const Matrix<S>& u, const std::string& label = {}) {
  if (!u.is_square()) throw DomainError("log of a non-square matrix " + u.shape());
  try {
    return log1p_nilpotent(u - Matrix<S>::identity(u.rows()), label);
  } catch (const GuardError&) {
    throw GuardError("argument not unipotent: " + detail::guard_label(label));
  }
}

/// Exact inverse by Gauss-Jordan elimination over Q(i, sqrt 2).
///
/// Throws DomainError naming the column whose pivot search failed.
inline FieldMatrix invert(const FieldMatrix& a) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  FieldMatrix m = a;
  FieldMatrix inv = FieldMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n)
      throw DomainError("singular matrix: no pivot in column " + std::to_string(col) +
                        " (rows " + std::to_string(col) + ".." + std::to_string(n - 1) + ")");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const FieldElem scale = m(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(col, j).is_zero()) m(col, j) *= scale;
      if (!inv(col, j).is_zero()) inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      const FieldElem f = -m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(col, j).is_zero()) m(r, j).addmul(f, m(col, j));
        if (!inv(col, j).is_zero()) inv(r, j).addmul(f, inv(col, j));
      }
    }
  }
  return inv;
}

/// Inverse of a polynomial matrix whose constant term is invertible and whose
/// inverse is again polynomial of degree at most `degree_bound`.
inline PolyMatrix invert(const PolyMatrix& a, std::size_t degree_bound) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  const PolyMatrix b0 = promote(invert(coefficient(a, 0)));
  // A = A0 (I - N) with N = I - B0 A having no constant term; sum N^k B0.
  const PolyMatrix nmat = PolyMatrix::identity(n) - b0 * a;
  PolyMatrix result = b0;
  PolyMatrix term = b0;
  for (std::size_t k = 1; k <= degree_bound; ++k) {
    term = nmat * term;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto coeffs = term(i, j).coeffs();
        if (coeffs.size() > degree_bound + 1) coeffs.resize(degree_bound + 1);
        term(i, j) = PolyParam(std::move(coeffs));
      }
    if (term.is_zero()) break;
    result += term;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto coeffs = result(i, j).coeffs();
      if (coeffs.size() > degree_bound + 1) coeffs.resize(degree_bound + 1);
      result(i, j) = PolyParam(std::move(coeffs));
    }
  if (!(a * result).is_identity())
    throw DomainError("inverse is not a polynomial of degree <= " + std::to_string(degree_bound));
  return result;
}

/// Row-echelon elimination; returns the rank.
inline std::size_t rank(FieldMatrix m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
    const FieldElem inv = m(r, col).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const FieldElem f = -(m(i, col) * inv);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j).addmul(f, m(r, j));
    }
    ++r;
  }
  return r;
}

/// Solves sum_k x_k basis[k] = target for matrices of equal shape; nullopt if
/// the target is outside the span. Requires linearly independent basis.
inline std::optional<std::vector<FieldElem>> solve_in_span(const std::vector<FieldMatrix>& basis,
                                                           const FieldMatrix& target) {
  const std::size_t unknowns = basis.size();
  const std::size_t eqs = target.rows() * target.cols();
  // augmented system, one row per matrix entry
  FieldMatrix sys(eqs, unknowns + 1);
  for (std::size_t k = 0; k < unknowns; ++k)
    for (std::size_t e = 0; e < eqs; ++e) sys(e, k) = basis[k].data()[e];
  for (std::size_t e = 0; e < eqs; ++e) sys(e, unknowns) = target.data()[e];

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < unknowns && r < eqs; ++col) {
    std::size_t pivot = r;
    while (pivot < eqs && sys(pivot, col).is_zero()) ++pivot;
    if (pivot == eqs) continue;
    for (std::size_t j = 0; j <= unknowns; ++j) std::swap(sys(pivot, j), sys(r, j));
    const FieldElem inv = sys(r, col).inverse();
    for (std::size_t j = 0; j <= unknowns; ++j)
      if (!sys(r, j).is_zero()) sys(r, j) *= inv;
    for (std::size_t i = 0; i < eqs; ++i) {
      if (i == r || sys(i, col).is_zero()) continue;
      const FieldElem f = -sys(i, col);
      for (std::size_t j = 0; j <= unknowns; ++j)
        if (!sys(r, j).is_zero()) sys(i, j).addmul(f, sys(r, j));
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < eqs; ++i)
    if (!sys(i, unknowns).is_zero()) return std::nullopt;
  if (pivot_col.size() != unknowns) throw DomainError("solve_in_span: basis is linearly dependent");
  std::vector<FieldElem> x(unknowns);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = sys(i, unknowns);
  return x;
}

/// Flip P on C^M (x) C^M: P(v (x) w) = w (x) v.
template <Scalar S = FieldElem>
Matrix<S> build_P(std::size_t m) {
  if (m < 1) throw DomainError("build_P: dimension must be positive");
  Matrix<S> p(m * m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) p(i * m + j, j * m + i) = S(FieldElem(1));
  return p;
}

/// K = P^{t1} = sum_ij e_ij (x) e_ij (identity bilinear form).
template <Scalar S = FieldElem>
Matrix<S> build_K(std::size_t m) {
  if (m < 1) throw DomainError("build_K: dimension must be positive");
  Matrix<S> k(m * m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) k(i * m + i, j * m + j) = S(FieldElem(1));
  return k;
}

/// Transpose of the first tensor factor of an operator on C^d1 (x) C^d2.
template <Scalar S>
Matrix<S> partial_transpose_first(const Matrix<S>& a, std::size_t d1, std::size_t d2) {
  if (a.rows() != d1 * d2 || a.cols() != d1 * d2)
    throw DomainError("partial transpose: dimension mismatch");
  Matrix<S> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t l = 0; l < d2; ++l) r(j * d2 + k, i * d2 + l) = a(i * d2 + k, j * d2 + l);
  return r;
}

/// Trace over the first tensor factor of an operator on C^d0 (x) C^rest.
template <Scalar S>
Matrix<S> partial_trace_first(const Matrix<S>& a, std::size_t d0) {
  if (!a.is_square() || a.rows() % d0 != 0) throw DomainError("partial trace: dimension mismatch");
  const std::size_t rest = a.rows() / d0;
  Matrix<S> r(rest, rest);
  for (std::size_t x = 0; x < d0; ++x)
    for (std::size_t i = 0; i < rest; ++i)
      for (std::size_t j = 0; j < rest; ++j) {
        const S& v = a(x * rest + i, x * rest + j);
        if (!v.is_zero()) r(i, j) += v;
      }
  return r;
}

/// Integer square root of a perfect square, used to recover site dimensions.
inline std::optional<std::size_t> exact_sqrt(std::size_t n) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace twistlab

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilspec {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over an exact ring. Elements need is_zero().
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative size");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("Matrix: ragged rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) { return from_rows(cols).transpose(); }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  [[nodiscard]] Vec<T> row(int i) const {
    Vec<T> r(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(j)] = (*this)(i, j);
    return r;
  }

  [[nodiscard]] Vec<T> col(int j) const {
    Vec<T> c(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
    return c;
  }

  void set_col(int j, const Vec<T>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  template <class F>
  [[nodiscard]] auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  template <class S>
  Matrix& scale(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const T& y = b(k, j);
          if (y.is_zero()) continue;
          r(i, j) += x * y;
        }
      }
    }
    return r;
  }

  friend Vec<T> operator*(const Matrix& a, const Vec<T>& v) {
    if (static_cast<int>(v.size()) != a.cols_) throw std::invalid_argument("Matrix: vector length mismatch");
    Vec<T> r(static_cast<std::size_t>(a.rows_));
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) {
        const T& x = a(i, j);
        if (x.is_zero() || v[static_cast<std::size_t>(j)].is_zero()) continue;
        r[static_cast<std::size_t>(i)] += x * v[static_cast<std::size_t>(j)];
      }
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("Matrix index");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (int i = 0; i < m.rows(); ++i) {
    os << "[";
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]\n";
  }
  return os;
}

// ---- vectors

template <class T>
Vec<T> zero_vec(int n) {
  return Vec<T>(static_cast<std::size_t>(n));
}

template <class T>
Vec<T> unit_vec(int n, int i) {
  Vec<T> v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(i)] = T(1);
  return v;
}

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

template <class T>
Vec<T> add(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
Vec<T> sub(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T, class S>
Vec<T> scale(Vec<T> a, const S& c) {
  for (auto& x : a) x *= c;
  return a;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    acc += a[i] * b[i];
  }
  return acc;
}

// ---- field algorithms (T must support division)

template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<int> pivots;  // pivot column per nonzero row
};

template <class T>
Echelon<T> rref(Matrix<T> m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    T inv = T(1) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
int rank(const Matrix<T>& m) {
  return static_cast<int>(rref(m).pivots.size());
}

// Basis of {v : m v = 0}, one vector per free column.
template <class T>
std::vector<Vec<T>> nullspace(const Matrix<T>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vec<T>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vec<T> v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(f)] = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v[static_cast<std::size_t>(e.pivots[r])] = -e.reduced(static_cast<int>(r), f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of m x = b (free variables set to zero), if any.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& m, const Vec<T>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[static_cast<std::size_t>(i)];
  }
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec<T> x(static_cast<std::size_t>(m.cols()));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    x[static_cast<std::size_t>(e.pivots[r])] = e.reduced(static_cast<int>(r), m.cols());
  }
  return x;
}

template <class T>
T det(Matrix<T> m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix not square");
  const int n = m.rows();
  T d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i) {
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) return T();
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    T inv = T(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      T f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
  const int n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto e = rref(std::move(aug));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  }
  return inv;
}

// ---- ring algorithms (no division)

// Laplace expansion with memoisation over column subsets; fine up to ~16.
template <class T>
T det_expand(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("det_expand: matrix not square");
  const int n = m.rows();
  if (n == 0) return T(1);
  if (n > 20) throw std::invalid_argument("det_expand: matrix too large");
  // minors[S] = det of rows (n-|S| .. n-1) against columns S.
  std::vector<T> minors(std::size_t{1} << n);
  minors[0] = T(1);
  for (unsigned s = 1; s < (1u << n); ++s) {
    int k = __builtin_popcount(s);
    int row = n - k;
    T acc{};
    int sign_pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(s & (1u << c))) continue;
      const T& a = m(row, c);
      const T& sub = minors[s & ~(1u << c)];
      if (!a.is_zero() && !sub.is_zero()) {
        if (sign_pos % 2 == 0) {
          acc += a * sub;
        } else {
          acc -= a * sub;
        }
      }
      ++sign_pos;
    }
    minors[s] = std::move(acc);
  }
  return minors[(1u << n) - 1];
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix<T> s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
  }
  return s;
}

}  // namespace nilspec

#pragma once

// Dense exact matrices over Z and Q, row-major, with the handful of
// operations the lattice algorithms need. Vectors are row vectors throughout;
// maps act on the right (v -> v*g).

#include "hyplat/numeric.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace hyplat {

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> ll) {
    rows = static_cast<int>(ll.size());
    cols = rows ? static_cast<int>(ll.begin()->size()) : 0;
    a.reserve(static_cast<size_t>(rows) * cols);
    for (const auto& row : ll) {
      if (static_cast<int>(row.size()) != cols)
        throw InternalError("ragged initializer");
      for (long v : row) a.emplace_back(v);
    }
  }

  Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  IntVector row(int i) const {
    IntVector v(cols);
    for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_row(int i, const IntVector& v) {
    for (int j = 0; j < cols; ++j) (*this)(i, j) = v[j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
};

struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  RatVector row(int i) const {
    RatVector v(cols);
    for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
  }

  bool operator==(const RatMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }
};

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

inline RatVector to_rat(const IntVector& v) {
  RatVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// True only when every entry is integral.
inline bool is_integral(const RatMatrix& m) {
  for (const Rat& x : m.a)
    if (x.get_den() != 1) return false;
  return true;
}

inline bool is_integral(const RatVector& v) {
  for (const Rat& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

inline IntMatrix to_int(const RatMatrix& m) {
  if (!is_integral(m)) throw InternalError("to_int: non-integral matrix");
  IntMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].get_num();
  return r;
}

inline IntVector to_int(const RatVector& v) {
  if (!is_integral(v)) throw InternalError("to_int: non-integral vector");
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num();
  return r;
}

template <typename M>
inline M transpose(const M& m) {
  M t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

template <typename M>
inline M matmul(const M& x, const M& y) {
  if (x.cols != y.rows) throw InternalError("matmul: shape mismatch");
  M z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto& xv = x(i, k);
      if (sgn(xv) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
    }
  return z;
}

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) { return matmul(x, y); }
inline RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) { return matmul(x, y); }

inline IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (static_cast<int>(v.size()) != m.rows) throw InternalError("vec*mat: shape");
  IntVector r(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    if (sgn(v[i]) == 0) continue;
    for (int j = 0; j < m.cols; ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

inline RatVector operator*(const RatVector& v, const RatMatrix& m) {
  if (static_cast<int>(v.size()) != m.rows) throw InternalError("vec*mat: shape");
  RatVector r(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    if (sgn(v[i]) == 0) continue;
    for (int j = 0; j < m.cols; ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

inline Int dot(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) throw InternalError("dot: shape");
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Rat dot(const RatVector& x, const RatVector& y) {
  if (x.size() != y.size()) throw InternalError("dot: shape");
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// v * M * w^tr
inline Int form_value(const IntVector& v, const IntMatrix& m, const IntVector& w) {
  return dot(v * m, w);
}

inline Rat form_value(const RatVector& v, const RatMatrix& m, const RatVector& w) {
  return dot(v * m, w);
}

inline IntVector operator-(const IntVector& v) {
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

inline IntVector operator+(const IntVector& x, const IntVector& y) {
  IntVector r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

inline IntVector operator-(const IntVector& x, const IntVector& y) {
  IntVector r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline IntMatrix operator-(const IntMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = -m.a[i];
  return r;
}

inline bool is_zero(const IntVector& v) {
  for (const Int& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline Int content(const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

// Divides out the content; the zero vector is returned unchanged.
inline IntVector primitive(const IntVector& v) {
  Int g = content(v);
  if (sgn(g) == 0 || g == 1) return v;
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = exact_div(v[i], g);
  return r;
}

// Clears denominators and divides out the content.
inline IntVector primitive(const RatVector& v) {
  Int den = 1;
  for (const Rat& x : v) den = lcm(den, x.get_den());
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * exact_div(den, v[i].get_den());
  return primitive(r);
}

inline bool lex_less(const IntVector& x, const IntVector& y) {
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0;
  }
  return x.size() < y.size();
}

// First nonzero coordinate made positive.
inline IntVector sign_normalized(const IntVector& v) {
  for (const Int& x : v) {
    if (sgn(x) > 0) return v;
    if (sgn(x) < 0) return -v;
  }
  return v;
}

inline IntMatrix stack_rows(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols != bottom.cols && top.rows != 0 && bottom.rows != 0)
    throw InternalError("stack_rows: shape");
  int cols = top.rows ? top.cols : bottom.cols;
  IntMatrix m(top.rows + bottom.rows, cols);
  for (int i = 0; i < top.rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows; ++i)
    for (int j = 0; j < cols; ++j) m(top.rows + i, j) = bottom(i, j);
  return m;
}

inline IntMatrix from_rows(const std::vector<IntVector>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i) m.set_row(i, rows[i]);
  return m;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& m) {
  if (m.rows != m.cols) throw InternalError("det: not square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(w(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (sgn(w(i, k)) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        w(i, j) = exact_div(t, prev);
      }
    prev = w(k, k);
  }
  return sign > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

inline Rat det(const RatMatrix& m) {
  if (m.rows != m.cols) throw InternalError("det: not square");
  int n = m.rows;
  RatMatrix w = m;
  Rat d = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (sgn(w(i, k)) != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      d = -d;
    }
    d *= w(k, k);
    Rat inv = 1 / w(k, k);
    for (int i = k + 1; i < n; ++i) {
      Rat f = w(i, k) * inv;
      if (sgn(f) == 0) continue;
      for (int j = k; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return d;
}

// Exact inverse over Q; SingularError when det = 0.
inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows != m.cols) throw InternalError("inverse: not square");
  int n = m.rows;
  RatMatrix w = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (sgn(w(i, k)) != 0) { p = i; break; }
    if (p < 0) throw SingularError("matrix is singular");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(w(k, j), w(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = 1 / w(k, k);
    for (int j = 0; j < n; ++j) {
      w(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || sgn(w(i, k)) == 0) continue;
      Rat f = w(i, k);
      for (int j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

inline RatMatrix inverse(const IntMatrix& m) { return inverse(to_rat(m)); }

// adj(A) = det(A) * A^{-1}, integral for integral A (also valid when A is
// singular only in the nonsingular branch; singular input is rejected).
inline IntMatrix adjugate(const IntMatrix& m) {
  Int d = det(m);
  if (sgn(d) == 0) throw SingularError("adjugate of singular matrix");
  RatMatrix inv = inverse(to_rat(m));
  RatMatrix adj(m.rows, m.cols);
  Rat dr(d);
  for (size_t i = 0; i < inv.a.size(); ++i) adj.a[i] = inv.a[i] * dr;
  return to_int(adj);
}

inline int rank(const RatMatrix& m) {
  RatMatrix w = m;
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int p = -1;
    for (int i = r; i < w.rows; ++i)
      if (sgn(w(i, c)) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < w.cols; ++j) std::swap(w(r, j), w(p, j));
    Rat inv = 1 / w(r, c);
    for (int i = r + 1; i < w.rows; ++i) {
      Rat f = w(i, c) * inv;
      if (sgn(f) == 0) continue;
      for (int j = c; j < w.cols; ++j) w(i, j) -= f * w(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank(const IntMatrix& m) { return rank(to_rat(m)); }

inline int rank_of_rows(const std::vector<IntVector>& rows, int cols) {
  return rank(from_rows(rows, cols));
}

inline bool is_symmetric(const IntMatrix& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

inline bool is_symmetric(const RatMatrix& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

// Common denominator of all entries.
inline Int denominator_lcm(const RatMatrix& m) {
  Int d = 1;
  for (const Rat& x : m.a) d = lcm(d, x.get_den());
  return d;
}

inline IntMatrix scale_to_int(const RatMatrix& m, const Int& mult) {
  IntMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) {
    Rat v = m.a[i] * Rat(mult);
    if (v.get_den() != 1) throw InternalError("scale_to_int: multiplier too small");
    r.a[i] = v.get_num();
  }
  return r;
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

inline std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << " ";
      os << m(i, j).get_str();
    }
  }
  os << "]";
  return os.str();
}

// Compact unambiguous serialization, used as a map key.
inline std::string key_of(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows << "x" << m.cols << ":";
  for (const Int& x : m.a) os << x.get_str() << ",";
  return os.str();
}

inline std::string key_of(const IntVector& v) {
  std::ostringstream os;
  for (const Int& x : v) os << x.get_str() << ",";
  return os.str();
}

}  // namespace hyplat

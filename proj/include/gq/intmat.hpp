#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <utility>
#include <vector>

#include "gq/common.hpp"

namespace gq {

using BigInt = boost::multiprecision::cpp_int;

// Dense matrix over an exact ring (BigInt or i64).
template <class T>
struct Mat {
  long rows = 0;
  long cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0)) {}

  T& at(long r, long c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const T& at(long r, long c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static Mat identity(long n) {
    Mat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  Mat mul(const Mat& o) const {
    if (cols != o.rows) throw input_error("Mat::mul: dimension mismatch");
    Mat out(rows, o.cols);
    for (long i = 0; i < rows; ++i)
      for (long k = 0; k < cols; ++k) {
        const T& v = at(i, k);
        if (v == 0) continue;
        for (long j = 0; j < o.cols; ++j) out.at(i, j) += v * o.at(k, j);
      }
    return out;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using IntMatrix = Mat<BigInt>;

// Fraction-free determinant (Bareiss). Square input.
inline BigInt determinant(IntMatrix m) {
  if (m.rows != m.cols) throw input_error("determinant: square matrix required");
  long n = m.rows;
  if (n == 0) return 1;
  BigInt prev(1);
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      long p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        BigInt t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = t / prev;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace detail {

template <class T>
T abs_val(const T& x) {
  return x < 0 ? T(-x) : x;
}

// Extended gcd over T: a*s + b*t = g >= 0.
template <class T>
void egcd(const T& a, const T& b, T& g, T& s, T& t) {
  T old_r = a, r = b, old_s = T(1), ss = T(0), old_t = T(0), tt = T(1);
  while (r != 0) {
    T q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * ss;
    std::swap(old_s, ss);
    old_t -= q * tt;
    std::swap(old_t, tt);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// Diagonalization core shared by the integer and mod-N Smith forms.
//
// Maintains u * (input) * v = d throughout; uinv, when given, tracks the
// inverse of u. With modulus > 0 all entries stay reduced in [0, modulus)
// and u, v are invertible mod N; with modulus = 0 they are unimodular.
// Pivot rule: smallest nonzero |entry|, ties broken by lowest row, then
// lowest column.
template <class T>
void smith_diagonalize(Mat<T>& d, Mat<T>* u, Mat<T>* v, i64 modulus, Mat<T>* uinv = nullptr) {
  auto red = [&](const T& x) -> T {
    if (modulus <= 0) return x;
    T m = x % T(modulus);
    if (m < 0) m += T(modulus);
    return m;
  };
  auto axpy_row = [&](Mat<T>& m, long dst, long src, const T& k) {
    for (long j = 0; j < m.cols; ++j) m.at(dst, j) = red(m.at(dst, j) + k * m.at(src, j));
  };
  auto axpy_col = [&](Mat<T>& m, long dst, long src, const T& k) {
    for (long i = 0; i < m.rows; ++i) m.at(i, dst) = red(m.at(i, dst) + k * m.at(i, src));
  };

  // d <- E d with E the elementary "dst += k * src"; uinv <- uinv E^{-1}.
  auto row_op_axpy = [&](long dst, long src, T k) {
    axpy_row(d, dst, src, k);
    if (u) axpy_row(*u, dst, src, k);
    if (uinv) axpy_col(*uinv, src, dst, T(-k));
  };
  auto row_op_swap = [&](long r1, long r2) {
    for (long j = 0; j < d.cols; ++j) std::swap(d.at(r1, j), d.at(r2, j));
    if (u)
      for (long j = 0; j < u->cols; ++j) std::swap(u->at(r1, j), u->at(r2, j));
    if (uinv)
      for (long i = 0; i < uinv->rows; ++i) std::swap(uinv->at(i, r1), uinv->at(i, r2));
  };
  // Unimodular exchange on rows r1, r2: with s*p + t*x = g it maps the old
  // column entries (p, x) to (g, 0). E = [[s, t], [-x/g, p/g]], det 1,
  // E^{-1} = [[p/g, -t], [x/g, s]].
  auto row_op_exchange = [&](long r1, long r2, T p, T x) {
    T g, s, t;
    egcd(p, x, g, s, t);
    T pg = (g == 0) ? T(0) : T(p / g);
    T xg = (g == 0) ? T(0) : T(x / g);
    auto apply_rows = [&](Mat<T>& m) {
      for (long j = 0; j < m.cols; ++j) {
        T a1 = m.at(r1, j), a2 = m.at(r2, j);
        m.at(r1, j) = red(s * a1 + t * a2);
        m.at(r2, j) = red(pg * a2 - xg * a1);
      }
    };
    apply_rows(d);
    if (u) apply_rows(*u);
    if (uinv)
      for (long i = 0; i < uinv->rows; ++i) {
        T c1 = uinv->at(i, r1), c2 = uinv->at(i, r2);
        uinv->at(i, r1) = red(pg * c1 + xg * c2);
        uinv->at(i, r2) = red(s * c2 - t * c1);
      }
  };
  auto col_op_axpy = [&](long dst, long src, T k) {
    axpy_col(d, dst, src, k);
    if (v) axpy_col(*v, dst, src, k);
  };
  auto col_op_swap = [&](long c1, long c2) {
    for (long i = 0; i < d.rows; ++i) std::swap(d.at(i, c1), d.at(i, c2));
    if (v)
      for (long i = 0; i < v->rows; ++i) std::swap(v->at(i, c1), v->at(i, c2));
  };
  auto col_op_exchange = [&](long c1, long c2, T p, T x) {
    T g, s, t;
    egcd(p, x, g, s, t);
    T pg = (g == 0) ? T(0) : T(p / g);
    T xg = (g == 0) ? T(0) : T(x / g);
    auto apply_cols = [&](Mat<T>& m) {
      for (long i = 0; i < m.rows; ++i) {
        T a1 = m.at(i, c1), a2 = m.at(i, c2);
        m.at(i, c1) = red(s * a1 + t * a2);
        m.at(i, c2) = red(pg * a2 - xg * a1);
      }
    };
    apply_cols(d);
    if (v) apply_cols(*v);
  };

  long n = std::min(d.rows, d.cols);
  for (long k = 0; k < n; ++k) {
    long pr = -1, pc = -1;
    T best(0);
    for (long i = k; i < d.rows; ++i)
      for (long j = k; j < d.cols; ++j) {
        const T& x = d.at(i, j);
        if (x == 0) continue;
        T ax = abs_val(x);
        if (pr < 0 || ax < best) {
          best = ax;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // all remaining entries zero
    if (pr != k) row_op_swap(k, pr);
    if (pc != k) col_op_swap(k, pc);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = k + 1; i < d.rows; ++i) {
        T x = d.at(i, k);
        if (x == 0) continue;
        T p = d.at(k, k);
        if (p != 0 && x % p == 0)
          row_op_axpy(i, k, T(-(x / p)));
        else {
          row_op_exchange(k, i, p, x);
          dirty = true;
        }
      }
      for (long j = k + 1; j < d.cols; ++j) {
        T x = d.at(k, j);
        if (x == 0) continue;
        T p = d.at(k, k);
        if (p != 0 && x % p == 0)
          col_op_axpy(j, k, T(-(x / p)));
        else {
          col_op_exchange(k, j, p, x);
          dirty = true;
        }
      }
      for (long i = k + 1; i < d.rows && !dirty; ++i)
        if (d.at(i, k) != 0) dirty = true;
    }
  }

  // Divisibility chain: fold d[j,j] into d[i,i] for i < j when needed.
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      T di = d.at(i, i), dj = d.at(j, j);
      if (di == 0 && dj == 0) continue;
      if (di != 0 && dj % di == 0) continue;
      col_op_axpy(i, j, T(1));
      row_op_exchange(i, j, d.at(i, i), d.at(j, i));
      T x = d.at(i, j);
      if (x != 0) col_op_axpy(j, i, T(-(x / d.at(i, i))));
    }
  }
  if (modulus <= 0) {
    for (long i = 0; i < n; ++i)
      if (d.at(i, i) < 0) {
        for (long c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        if (u)
          for (long c = 0; c < u->cols; ++c) u->at(i, c) = -u->at(i, c);
        if (uinv)
          for (long r = 0; r < uinv->rows; ++r) uinv->at(r, i) = -uinv->at(r, i);
      }
  }
}

}  // namespace detail

struct SmithResult {
  IntMatrix d;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix u;  // unimodular left transform
  IntMatrix v;  // unimodular right transform; u*m*v = d
};

// Smith normal form over Z with unimodular transforms.
inline SmithResult smith_normal_form(IntMatrix m) {
  SmithResult out{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
  detail::smith_diagonalize(out.d, &out.u, &out.v, 0);
  return out;
}

}  // namespace gq

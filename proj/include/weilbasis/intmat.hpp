#pragma once

#include <weilbasis/rational.hpp>

#include <algorithm>
#include <cassert>
#include <functional>
#include <utility>

namespace weilbasis {

// Dense exact matrices over Z and Q. Sizes here are small (ranks <= ~20,
// group presentations); clarity over cleverness.
template <class T>
struct Matrix {
  long rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(long r, long c) : rows(r), cols(c), a(r * c) {}
  static Matrix identity(long n) {
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  T& operator()(long i, long j) { return a[i * cols + j]; }
  const T& operator()(long i, long j) const { return a[i * cols + j]; }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols == o.rows);
    Matrix r(rows, o.cols);
    for (long i = 0; i < rows; ++i)
      for (long k = 0; k < cols; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (long j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    assert(rows == o.rows && cols == o.cols);
    Matrix r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    assert((long)v.size() == cols);
    std::vector<T> r(rows);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool is_symmetric() const {
    for (long i = 0; i < rows; ++i)
      for (long j = i + 1; j < cols; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rat>;

inline QMat to_qmat(const IMat& m) {
  QMat q(m.rows, m.cols);
  for (long i = 0; i < m.rows * m.cols; ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

// Gaussian elimination over Q; returns rank. If inv != nullptr and the matrix
// is square invertible, *inv receives the inverse.
inline long q_rank(QMat m, QMat* inv = nullptr) {
  long n = m.rows, c = m.cols;
  QMat id;
  if (inv) id = QMat::identity(n);
  long rank = 0;
  for (long col = 0; col < c && rank < n; ++col) {
    long piv = -1;
    for (long i = rank; i < n; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < c; ++j) std::swap(m(piv, j), m(rank, j));
    if (inv)
      for (long j = 0; j < n; ++j) std::swap(id(piv, j), id(rank, j));
    Rat d = m(rank, col);
    for (long j = 0; j < c; ++j) m(rank, j) /= d;
    if (inv)
      for (long j = 0; j < n; ++j) id(rank, j) /= d;
    for (long i = 0; i < n; ++i) {
      if (i == rank || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (long j = 0; j < c; ++j) m(i, j) -= f * m(rank, j);
      if (inv)
        for (long j = 0; j < n; ++j) id(i, j) -= f * id(rank, j);
    }
    ++rank;
  }
  if (inv) {
    require(rank == n && n == c, "Singular", "matrix not invertible");
    *inv = id;
  }
  return rank;
}

inline QMat q_inverse(const QMat& m) {
  QMat inv;
  q_rank(m, &inv);
  return inv;
}

inline Rat q_det(QMat m) {
  require(m.rows == m.cols, "DomainError", "det of non-square");
  long n = m.rows;
  Rat det(1);
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long i = col; i < n; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (long j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Rat d = m(col, col);
    for (long i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rat f = m(i, col) / d;
      for (long j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

inline Int det(const IMat& m) {
  Rat d = q_det(to_qmat(m));
  assert(is_integer(d));
  return d.get_num();
}

// Smith normal form: U*A*V = S diagonal with s_1 | s_2 | ..., s_i >= 0,
// U, V unimodular.
struct Snf {
  IMat s, u, v;  // u*a*v == s
};

inline Snf smith_normal_form(IMat a) {
  long r = a.rows, c = a.cols;
  IMat u = IMat::identity(r), v = IMat::identity(c);
  auto row_op = [&](long i, long j, const Int& f) {  // row_i -= f*row_j
    for (long k = 0; k < c; ++k) a(i, k) -= f * a(j, k);
    for (long k = 0; k < r; ++k) u(i, k) -= f * u(j, k);
  };
  auto col_op = [&](long i, long j, const Int& f) {  // col_i -= f*col_j
    for (long k = 0; k < r; ++k) a(k, i) -= f * a(k, j);
    for (long k = 0; k < c; ++k) v(k, i) -= f * v(k, j);
  };
  auto row_swap = [&](long i, long j) {
    for (long k = 0; k < c; ++k) std::swap(a(i, k), a(j, k));
    for (long k = 0; k < r; ++k) std::swap(u(i, k), u(j, k));
  };
  auto col_swap = [&](long i, long j) {
    for (long k = 0; k < r; ++k) std::swap(a(k, i), a(k, j));
    for (long k = 0; k < c; ++k) std::swap(v(k, i), v(k, j));
  };
  auto row_neg = [&](long i) {
    for (long k = 0; k < c; ++k) a(i, k) = -a(i, k);
    for (long k = 0; k < r; ++k) u(i, k) = -u(i, k);
  };
  auto col_neg = [&](long i) {
    for (long k = 0; k < r; ++k) a(k, i) = -a(k, i);
    for (long k = 0; k < c; ++k) v(k, i) = -v(k, i);
  };

  long t = std::min(r, c);
  for (long k = 0; k < t; ++k) {
    // Move a nonzero pivot to (k,k).
    long pi = -1, pj = -1;
    for (long i = k; i < r && pi < 0; ++i)
      for (long j = k; j < c; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != k) row_swap(pi, k);
    if (pj != k) col_swap(pj, k);
    // Clear row and column k.
    bool again = true;
    while (again) {
      again = false;
      for (long i = k + 1; i < r; ++i)
        while (a(i, k) != 0) {
          Int q, rem;
          euclid_div(a(i, k), a(k, k), q, rem);
          row_op(i, k, q);
          if (a(i, k) != 0) row_swap(i, k);
        }
      for (long j = k + 1; j < c; ++j)
        while (a(k, j) != 0) {
          Int q, rem;
          euclid_div(a(k, j), a(k, k), q, rem);
          col_op(j, k, q);
          if (a(k, j) != 0) {
            col_swap(j, k);
            again = true;  // column ops may have disturbed the column
          }
        }
    }
    // Divisibility: fold any entry not divisible by a(k,k) into row k.
    for (long i = k + 1; i < r; ++i)
      for (long j = k + 1; j < c; ++j)
        if (a(i, j) % a(k, k) != 0) {
          row_op(k, i, Int(-1));  // row_k += row_i
          i = r;                  // restart pivot clearing
          j = c;
          --k;
        }
  }
  // Redo if the fold above rewound k (handled by loop structure); now fix
  // signs.
  for (long k = 0; k < t; ++k) {
    if (a(k, k) < 0) row_neg(k);
  }
  (void)col_neg;
  Snf out{std::move(a), std::move(u), std::move(v)};
  return out;
}

// Verified SNF wrapper; the elimination above restarts pivots in a loop, so
// re-check the invariants defensively in debug builds.
inline Snf snf_checked(const IMat& a) {
  Snf s = smith_normal_form(a);
  // invariants: u*a*v == s, s diagonal with nonneg divisibility chain
  IMat prod = s.u * a * s.v;
  if (!(prod == s.s)) fail("InternalError", "SNF transform mismatch");
  long t = std::min(s.s.rows, s.s.cols);
  for (long i = 0; i < s.s.rows; ++i)
    for (long j = 0; j < s.s.cols; ++j)
      if (i != j && s.s(i, j) != 0) fail("InternalError", "SNF not diagonal");
  for (long k = 0; k + 1 < t; ++k)
    if (s.s(k, k) != 0 && s.s(k + 1, k + 1) % s.s(k, k) != 0)
      fail("InternalError", "SNF divisibility");
  return s;
}

// Basis (columns) of the lattice {x in Z^n : W x == 0 mod m}.
inline IMat kernel_mod(const IMat& w, const Int& m) {
  Snf s = snf_checked(w);
  long n = w.cols;
  // W = U^-1 S V^-1, so W x == 0 mod m  <=>  s_i * (V^-1 x)_i == 0 mod m.
  // With y = V^-1 x: y_i in (m/gcd(s_i,m)) Z. x = V y.
  QMat vq = to_qmat(s.v);
  IMat basis(n, n);
  for (long i = 0; i < n; ++i) {
    Int si = (i < std::min(s.s.rows, s.s.cols)) ? s.s(i, i) : Int(0);
    Int mod = m / gcd(si, m);
    for (long r = 0; r < n; ++r) basis(r, i) = s.v(r, i) * mod;
  }
  return basis;
}

// Solve A x = b over Q. Throws if inconsistent.
inline std::vector<Rat> q_solve(QMat a, std::vector<Rat> b) {
  long n = a.rows, c = a.cols;
  require((long)b.size() == n, "DomainError", "solve dims");
  long rank = 0;
  std::vector<long> pivot_col;
  for (long col = 0; col < c && rank < n; ++col) {
    long piv = -1;
    for (long i = rank; i < n; ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < c; ++j) std::swap(a(piv, j), a(rank, j));
    std::swap(b[piv], b[rank]);
    Rat d = a(rank, col);
    for (long j = 0; j < c; ++j) a(rank, j) /= d;
    b[rank] /= d;
    for (long i = 0; i < n; ++i) {
      if (i == rank || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (long j = 0; j < c; ++j) a(i, j) -= f * a(rank, j);
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (long i = rank; i < n; ++i)
    require(b[i] == 0, "Inconsistent", "no solution");
  std::vector<Rat> x(c, Rat(0));
  for (long i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// 2x2 integer matrices get heavy use in the SL2 layer; a tiny value type.
struct Mat2 {
  Int a, b, c, d;
  Mat2() : a(0), b(0), c(0), d(0) {}
  Mat2(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  static Mat2 identity() { return {1, 0, 0, 1}; }
  Int det() const { return a * d - b * c; }
  Int content() const { return gcd(gcd(a, b), gcd(c, d)); }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  // inverse for det = 1
  Mat2 inv_sl2() const {
    require(det() == 1, "NotUnimodular", "inverse of non-SL2 matrix");
    return {d, -b, -c, a};
  }
  // the paper-style flip (a b; c d)' = (d b; c a)
  Mat2 flip() const { return {d, b, c, a}; }
};

// Lift a matrix in SL2(Z/N) (given by integer entries, det == 1 mod N) to
// SL2(Z).
inline Mat2 sl2_lift_mod(const Mat2& m, const Int& n) {
  require(n >= 1, "DomainError", "sl2_lift modulus");
  if (n == 1) return Mat2::identity();
  require(mod_floor(m.det() - 1, n) == 0, "NotUnimodular",
          "matrix not in SL2(Z/N)");
  // First make the bottom row (c,d) coprime: d' = d + t*n with
  // gcd(c, d') = 1. If c == 0 mod n, replace c by n (gcd(c,d,n)=1 suffices).
  Int c = mod_floor(m.c, n), d = mod_floor(m.d, n);
  if (c == 0 && d == 0) fail("NotUnimodular", "zero bottom row mod N");
  if (c == 0) c = n;
  Int t = 0;
  while (gcd(c, d + t * n) != 1) {
    ++t;
    require(t < 2 * n + 4, "InternalError", "sl2 lift: coprime search stuck");
  }
  d += t * n;
  // Solve a*d - b*c = 1 with a = m.a mod n, b = m.b mod n adjusted:
  // pick x,y with x*d - y*c = 1, then the general row is
  // (x + s*c, y + s*d); choose s so that x + s*c == m.a mod n.
  Int g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(),
             c.get_mpz_t());
  assert(g == 1);
  y = -y;  // now x*d - y*c = 1
  // need s with x + s*c == m.a (mod n). Since a*d == 1 + b*c and x*d == 1 +
  // y*c mod n, (x - a)*d == (y - b)*c mod n; c,d generate 1 mod n, solvable:
  Int target = mod_floor(m.a - x, n);
  // solve s*c == target mod n; c may share factors with n only via d...
  // brute-force small s is fine here (n is a level, small), but do it
  // properly: s = target * c^{-1} modulo n/gcd when solvable, else shift x,y
  // by multiples of d-row.
  bool done = false;
  for (Int s = 0; s < n; ++s) {
    if (mod_floor(x + s * c - m.a, n) == 0 &&
        mod_floor(y + s * d - m.b, n) == 0) {
      x += s * c;
      y += s * d;
      done = true;
      break;
    }
  }
  require(done, "InternalError", "sl2 lift: row completion failed");
  Mat2 out{x, y, c, d};
  assert(out.det() == 1);
  assert(mod_floor(out.a - m.a, n) == 0 && mod_floor(out.b - m.b, n) == 0 &&
         mod_floor(out.c - m.c, n) == 0 && mod_floor(out.d - m.d, n) == 0);
  return out;
}

}  // namespace weilbasis

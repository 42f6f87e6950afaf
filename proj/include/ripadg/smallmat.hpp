#ifndef RIPADG_SMALLMAT_HPP_
#define RIPADG_SMALLMAT_HPP_

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ripadg {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// 2x2 matrix, row major.
struct Mat2 {
  std::array<double, 4> a{0, 0, 0, 0};
  double& operator()(int i, int j) { return a[2 * i + j]; }
  double operator()(int i, int j) const { return a[2 * i + j]; }
  static Mat2 identity() { return Mat2{{1, 0, 0, 1}}; }
  static Mat2 zero() { return Mat2{}; }
};

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}
inline Mat2 operator*(double s, const Mat2& x) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.a[i] = s * x.a[i];
  return r;
}
inline Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}
inline Vec2 operator*(const Mat2& m, Vec2 v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}
inline double det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
inline double trace(const Mat2& m) { return m(0, 0) + m(1, 1); }
inline Mat2 inverse(const Mat2& m) {
  double d = det(m);
  if (d == 0.0) throw std::runtime_error("singular 2x2 matrix");
  return Mat2{{m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d}};
}
inline Mat2 transpose(const Mat2& m) { return Mat2{{m(0, 0), m(1, 0), m(0, 1), m(1, 1)}}; }

// Eigen-decomposition of a symmetric 2x2: m = Q diag(l) Q^T with Q orthogonal.
struct SymEig2 {
  std::array<double, 2> lambda;
  Mat2 q;
};

inline SymEig2 sym_eig(const Mat2& m) {
  double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), c = m(1, 1);
  double tr = a + c;
  double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
  double l1 = 0.5 * tr - disc, l2 = 0.5 * tr + disc;
  Mat2 q = Mat2::identity();
  if (std::abs(b) > 1e-300) {
    Vec2 v1{l1 - c, b};
    if (norm(v1) < 1e-300) v1 = {b, l1 - a};
    double n1 = norm(v1);
    v1 = {v1[0] / n1, v1[1] / n1};
    q = Mat2{{v1[0], -v1[1], v1[1], v1[0]}};
  } else if (a > c) {
    // keep lambda sorted ascending; swap columns of identity
    q = Mat2{{0, 1, 1, 0}};
  }
  return SymEig2{{l1, l2}, q};
}

// Rebuild Q diag(f(lambda)) Q^T.
inline Mat2 sym_apply(const SymEig2& e, std::array<double, 2> f) {
  Mat2 d{{f[0], 0, 0, f[1]}};
  return e.q * d * transpose(e.q);
}

// Dense in-place Gaussian elimination with partial pivoting; A is n x n row
// major, b length n. Returns false on (near-)singularity.
inline bool solve_dense(int n, std::vector<double>& A, std::vector<double>& b) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (std::abs(A[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A[col * n + j], A[piv * n + j]);
      std::swap(b[col], b[piv]);
    }
    double d = A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = A[r * n + col] / d;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= A[r * n + j] * b[j];
    b[r] = s / A[r * n + r];
  }
  return true;
}

// Invert a small dense matrix (row major). Throws on singularity.
inline std::vector<double> invert_dense(int n, std::vector<double> A) {
  std::vector<double> inv(n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    std::vector<double> Ak = A;
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    if (!solve_dense(n, Ak, e)) throw std::runtime_error("singular matrix in invert_dense");
    for (int r = 0; r < n; ++r) inv[r * n + k] = e[r];
  }
  return inv;
}

}  // namespace ripadg

#endif  // RIPADG_SMALLMAT_HPP_

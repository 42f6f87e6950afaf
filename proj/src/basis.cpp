#include "ripadg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ripadg {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact monomial integrals on the reference elements.
double mono_integral_1d(int a) { return a % 2 == 0 ? 2.0 / (a + 1) : 0.0; }
double mono_integral_tri(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

// Collapsed tensor rule on the triangle: x = s, y = t(1-s) with 5x5
// Gauss-Legendre points. The Jacobian (1-s) raises the s-degree by one, so a
// total degree 8 integrand stays within the 5-point exactness (degree 9) in
// both directions. All weights positive, all points interior.
void triangle_rule_deg8(QuadRule& rule) {
  std::vector<double> gx, gw;
  gauss_legendre(5, gx, gw);
  rule.pts.clear();
  rule.w.clear();
  for (int i = 0; i < 5; ++i) {
    double s = 0.5 * (gx[i] + 1.0), ws = 0.5 * gw[i];
    for (int j = 0; j < 5; ++j) {
      double t = 0.5 * (gx[j] + 1.0), wt = 0.5 * gw[j];
      rule.pts.push_back({s, t * (1.0 - s)});
      rule.w.push_back(ws * wt * (1.0 - s));
    }
  }
  rule.degree = 8;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from Chebyshev initial guess
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = xi;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = xi;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
    x[n - 1 - i] = xi;
    w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

std::vector<double> gauss_lobatto(int n) {
  switch (n) {
    case 3:
      return {-1.0, 0.0, 1.0};
    case 4: {
      double a = 1.0 / std::sqrt(5.0);
      return {-1.0, -a, a, 1.0};
    }
    case 5: {
      double a = std::sqrt(3.0 / 7.0);
      return {-1.0, -a, 0.0, a, 1.0};
    }
    default:
      throw std::runtime_error("gauss_lobatto: unsupported point count");
  }
}

double ReferenceBasis::eval(int j, Vec2 ref) const {
  double v = 0.0;
  for (int m = 0; m < nmono_; ++m) {
    double c = coeff_[j * nmono_ + m];
    if (c == 0.0) continue;
    v += c * std::pow(ref[0], mono_[m][0]) * (dim == 2 ? std::pow(ref[1], mono_[m][1]) : 1.0);
  }
  return v;
}

Vec2 ReferenceBasis::eval_grad(int j, Vec2 ref) const {
  Vec2 g{0, 0};
  for (int m = 0; m < nmono_; ++m) {
    double c = coeff_[j * nmono_ + m];
    if (c == 0.0) continue;
    int a = mono_[m][0], b = mono_[m][1];
    double pb = dim == 2 ? std::pow(ref[1], b) : 1.0;
    if (a > 0) g[0] += c * a * std::pow(ref[0], a - 1) * pb;
    if (dim == 2 && b > 0) g[1] += c * b * std::pow(ref[0], a) * std::pow(ref[1], b - 1);
  }
  return g;
}

void ReferenceBasis::eval_all(Vec2 ref, double* out) const {
  for (int j = 0; j < nb; ++j) out[j] = eval(j, ref);
}

ReferenceBasis ReferenceBasis::make(int dim, int k) {
  if ((dim != 1 && dim != 2) || k < 1 || k > 3)
    throw std::runtime_error("build_basis: unsupported dim/degree");
  ReferenceBasis b;
  b.dim = dim;
  b.k = k;
  b.nb = dim == 1 ? k + 1 : (k + 1) * (k + 2) / 2;
  b.ref_measure = dim == 1 ? 2.0 : 0.5;

  // monomial list
  b.mono_.clear();
  if (dim == 1) {
    for (int a = 0; a <= k; ++a) b.mono_.push_back({a, 0});
  } else {
    for (int d = 0; d <= k; ++d)
      for (int a = d; a >= 0; --a) b.mono_.push_back({a, d - a});
  }
  b.nmono_ = static_cast<int>(b.mono_.size());

  // Gram matrix of the monomials, then Cholesky: phi = L^{-1} mono.
  int n = b.nb;
  std::vector<double> G(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = b.mono_[i][0] + b.mono_[j][0];
      int bb = b.mono_[i][1] + b.mono_[j][1];
      G[i * n + j] = dim == 1 ? mono_integral_1d(a) : mono_integral_tri(a, bb);
    }
  std::vector<double> L(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = G[i * n + j];
      for (int p = 0; p < j; ++p) s -= L[i * n + p] * L[j * n + p];
      if (i == j) {
        if (s <= 0) throw std::runtime_error("basis Gram matrix not SPD");
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  // invert lower triangular
  std::vector<double> Linv(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    Linv[i * n + i] = 1.0 / L[i * n + i];
    for (int j = 0; j < i; ++j) {
      double s = 0.0;
      for (int p = j; p < i; ++p) s += L[i * n + p] * Linv[p * n + j];
      Linv[i * n + j] = -s / L[i * n + i];
    }
  }
  b.coeff_ = Linv;

  // quadrature
  std::vector<double> gx, gw;
  gauss_legendre(5, gx, gw);
  if (dim == 1) {
    b.vol.pts.clear();
    b.vol.w.clear();
    for (int q = 0; q < 5; ++q) {
      b.vol.pts.push_back({gx[q], 0.0});
      b.vol.w.push_back(gw[q]);
    }
    b.vol.degree = 9;
    b.edge_s = {0.0};  // single interface point; location resolved per edge
    b.edge_w = {1.0};
    b.edge_degree = 1000;
  } else {
    triangle_rule_deg8(b.vol);
    b.edge_s.clear();
    b.edge_w.clear();
    for (int q = 0; q < 5; ++q) {
      b.edge_s.push_back(0.5 * (gx[q] + 1.0));
      b.edge_w.push_back(0.5 * gw[q]);
    }
    b.edge_degree = 9;
  }

  // positivity points G_p
  std::vector<double> lob = gauss_lobatto(k + 2);
  b.pp_pts.clear();
  if (dim == 1) {
    for (double x : lob) b.pp_pts.push_back({x, 0.0});
  } else {
    const Vec2 rv[3] = {{0, 0}, {1, 0}, {0, 1}};
    for (int loc = 0; loc < 3; ++loc) {
      Vec2 A = rv[(loc + 1) % 3], B = rv[(loc + 2) % 3], V = rv[loc];
      for (double s : b.edge_s) {
        Vec2 gpt = (1.0 - s) * A + s * B;
        for (double lx : lob) {
          double beta = 0.5 * (lx + 1.0);
          b.pp_pts.push_back((1.0 - beta) * gpt + beta * V);
        }
      }
    }
  }

  // tabulate
  b.vol_val.resize(b.n_vol() * n);
  b.vol_grad.resize(b.n_vol() * n);
  for (int q = 0; q < b.n_vol(); ++q)
    for (int j = 0; j < n; ++j) {
      b.vol_val[q * n + j] = b.eval(j, b.vol.pts[q]);
      b.vol_grad[q * n + j] = b.eval_grad(j, b.vol.pts[q]);
    }
  b.pp_val.resize(b.n_pp() * n);
  for (int p = 0; p < b.n_pp(); ++p)
    for (int j = 0; j < n; ++j) b.pp_val[p * n + j] = b.eval(j, b.pp_pts[p]);

  return b;
}

}  // namespace ripadg

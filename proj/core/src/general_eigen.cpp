#include <algorithm>
#include <cmath>
#include <limits>

#include "opineq/linalg.hpp"

namespace opineq {

namespace {

// Householder reduction to upper Hessenberg form (similarity transform).
CMat hessenberg(CMat h) {
  const std::size_t n = h.rows();
  if (n < 3) return h;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;

    std::vector<cplx> v(n, 0.0);
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vn = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vn;

    // H <- (I - 2 v v^*) H
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * dot;
    }
    // H <- H (I - 2 v v^*)
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

struct Givens {
  double c;
  cplx s;
};

// G [x; y] = [r; 0] with G = [[c, s], [-conj(s), c]].
Givens make_givens(cplx x, cplx y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

}  // namespace

std::vector<cplx> eigenvalues_general(const CMat& m) {
  require_square(m, "eigenvalues_general");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  CMat h = hessenberg(m);
  const double eps = std::numeric_limits<double>::epsilon();
  const double hnorm = std::max(h.frobenius(), std::numeric_limits<double>::min());

  std::vector<cplx> out(n);
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  const int budget = 60 * static_cast<int>(n) + 60;
  std::vector<Givens> rot;

  while (true) {
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(lo, lo - 1)) <= eps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > budget) throw Error(ErrorKind::NoConvergence, "complex QR iteration budget exhausted");

    // Wilkinson shift from the trailing 2x2 block.
    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    const cplx half = 0.5 * (a - d);
    const cplx disc = std::sqrt(half * half + b * c);
    cplx mu1 = 0.5 * (a + d) + disc;
    cplx mu2 = 0.5 * (a + d) - disc;
    cplx mu = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    if (++iter % 11 == 0) mu = d + std::abs(h(hi, hi - 1)) * cplx(0.75, 0.5);

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    rot.clear();
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot.push_back(g);
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx u = h(k, j);
        const cplx v = h(k + 1, j);
        h(k, j) = g.c * u + g.s * v;
        h(k + 1, j) = -std::conj(g.s) * u + g.c * v;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rot[k - lo];
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const cplx u = h(i, k);
        const cplx v = h(i, k + 1);
        h(i, k) = g.c * u + std::conj(g.s) * v;
        h(i, k + 1) = -g.s * u + g.c * v;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return out;
}

double spectral_radius(const CMat& m) {
  double r = 0.0;
  for (const cplx& v : eigenvalues_general(m)) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace opineq

#include "opineq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace opineq {

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows_) +
                    "x" + std::to_string(cols_));
  }
}

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(std::span<const double> values) {
  CMat m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMat CMat::diagonal(std::span<const cplx> values) {
  CMat m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMat CMat::adjoint() const {
  CMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conj() const {
  CMat r = *this;
  for (auto& v : r.data_) v = std::conj(v);
  return r;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CMat::frobenius() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool CMat::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

CMat CMat::column(std::size_t j) const { return block(0, j, rows_, 1); }

CMat CMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimensionMismatch, "block out of range");
  CMat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void CMat::set_block(std::size_t r0, std::size_t c0, const CMat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMat& CMat::operator+=(const CMat& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " and " +
                                                  std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  CMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

CMat schur_product(const CMat& a, const CMat& b) {
  require_same_dim(a, b, "schur_product");
  CMat r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) r.data()[k] = a.data()[k] * b.data()[k];
  return r;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

double hermitian_defect(const CMat& m) {
  require_square(m, "hermitian_defect");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

void require_same_dim(const CMat& a, const CMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.cols()));
  }
}

void require_square(const CMat& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected square, got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
}

// ---------------------------------------------------------------------------
// HermMat

HermMat::HermMat(const CMat& m, double tol) {
  require_square(m, "HermMat");
  const double defect = hermitian_defect(m);
  if (!(defect <= tol * (1.0 + m.max_abs()))) {
    throw Error(ErrorKind::NonHermitian, "max |M - M*| = " + std::to_string(defect));
  }
  *this = symmetrize(m);
}

HermMat HermMat::symmetrize(const CMat& m) {
  require_square(m, "HermMat::symmetrize");
  HermMat h;
  h.m_ = CMat(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h.m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h.m_(i, j) = v;
      h.m_(j, i) = std::conj(v);
    }
  }
  return h;
}

HermMat& HermMat::operator+=(const HermMat& o) {
  m_ += o.m_;
  return *this;
}

HermMat& HermMat::operator-=(const HermMat& o) {
  m_ -= o.m_;
  return *this;
}

HermMat& HermMat::operator*=(double s) {
  m_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

EigenSystem eigh(const HermMat& h) {
  const std::size_t n = h.dim();
  CMat a = h.mat();
  CMat v = CMat::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };
  const double scale = a.frobenius();

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiSweepBudget; ++sweep) {
    const double off = off_norm();
    if (off == 0.0 || off <= 1e-18 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx w = apq / mag;
        const cplx wc = std::conj(w);

        // A <- A G with G_pp = c, G_pq = s, G_qp = -s conj(w), G_qq = c conj(w).
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * wc * akq;
          a(k, q) = s * akp + c * wc * akq;
        }
        // A <- G^* A.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * w * aqk;
          a(q, k) = s * apk + c * w * aqk;
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * wc * vkq;
          v(k, q) = s * vkp + c * wc * vkq;
        }
      }
    }
  }
  if (!converged && off_norm() > 1e-18 * scale) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = CMat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

HermMat reconstruct(const CMat& q, std::span<const double> d) {
  const std::size_t n = q.rows();
  CMat r(n, n);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx qi = q(i, k) * d[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += qi * std::conj(q(j, k));
    }
  }
  return HermMat::symmetrize(r);
}

namespace {

double spectral_scale(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

HermMat matrix_function(const EigenSystem& es, const ScalarFunction& f, const Tolerance& tol) {
  const std::size_t n = es.values.size();
  const double floor = tol.cutoff(n) * spectral_scale(es.values);
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = es.values[k];
    if (f.domain == FunctionDomain::NonNegative) {
      if (lam < -std::max(floor, tol.abs * (1.0 + spectral_scale(es.values)))) {
        throw Error(ErrorKind::DomainError,
                    "eigenvalue " + std::to_string(lam) + " outside [0, inf) beyond rank cutoff");
      }
      lam = std::max(lam, 0.0);
    }
    d[k] = f.fn(lam);
  }
  return reconstruct(es.vectors, d);
}

HermMat matrix_function(const HermMat& h, const ScalarFunction& f, const Tolerance& tol) {
  return matrix_function(eigh(h), f, tol);
}

HermMat sqrt_psd(const HermMat& h, const Tolerance& tol) {
  return matrix_function(h, {[](double t) { return std::sqrt(t); }, FunctionDomain::NonNegative}, tol);
}

HermMat generalized_power(const HermMat& h, double p, const Tolerance& tol) {
  const EigenSystem es = eigh(h);
  const std::size_t n = es.values.size();
  const double lmax = spectral_scale(es.values);
  const double floor = tol.cutoff(n) * lmax;
  std::vector<double> d(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = es.values[k];
    if (lam < -std::max(floor, tol.abs * (1.0 + lmax))) {
      throw Error(ErrorKind::DomainError, "generalized_power of a non-PSD matrix (eigenvalue " +
                                              std::to_string(lam) + ")");
    }
    if (lam <= floor || lmax == 0.0) continue;
    d[k] = p == 0.0 ? 1.0 : std::pow(lam, p);
  }
  return reconstruct(es.vectors, d);
}

std::vector<double> eigenvalues(const HermMat& h) { return eigh(h).values; }

double lambda_max(const HermMat& h) {
  if (h.dim() == 0) return 0.0;
  return eigh(h).values.front();
}

double lambda_min(const HermMat& h) {
  if (h.dim() == 0) return 0.0;
  return eigh(h).values.back();
}

LoewnerResult loewner_leq(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "loewner_leq");
  const double slack = lambda_min(b - a);
  const double bnorm = spectral_scale(eigenvalues(b));
  return {slack >= -tol.abs * (1.0 + bnorm), slack};
}

double operator_norm(const CMat& m) {
  if (m.empty()) return 0.0;
  const HermMat g = HermMat::symmetrize(m.adjoint() * m);
  return std::sqrt(std::max(lambda_max(g), 0.0));
}

double spectral_radius_psd_product(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "spectral_radius_psd_product");
  const HermMat rb = sqrt_psd(b, tol);
  const HermMat c = HermMat::symmetrize(rb.mat() * a.mat() * rb.mat());
  return std::max(lambda_max(c), 0.0);
}

double unitarity_defect(const CMat& u) {
  return (u.adjoint() * u - CMat::identity(u.cols())).max_abs();
}

CMat orthonormalize_columns(const CMat& m) {
  const std::size_t n = m.rows();
  CMat q = m;
  std::size_t probe = 0;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    auto project_out = [&](std::size_t col) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < col; ++k) {
          cplx dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, col);
          for (std::size_t i = 0; i < n; ++i) q(i, col) -= dot * q(i, k);
        }
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, col));
      return std::sqrt(nrm);
    };
    double original = 0.0;
    for (std::size_t i = 0; i < n; ++i) original += std::norm(q(i, j));
    original = std::sqrt(original);
    double nrm = project_out(j);
    // Dependent column: replace it by the first canonical vector that is
    // not yet in the span.
    while (!(nrm > 1e-10 * std::max(original, 1.0)) && probe < n) {
      for (std::size_t i = 0; i < n; ++i) q(i, j) = i == probe ? 1.0 : 0.0;
      ++probe;
      original = 1.0;
      nrm = project_out(j);
    }
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  return q;
}

}  // namespace opineq

#pragma once

// Dense complex matrices, Hermitian eigendecomposition and the functional
// calculus every other part of the library is written against. Sizes are
// small (n <= 64), so everything is plain O(n^3) row-major code.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

using cplx = std::complex<double>;

/// Numerical tolerances shared by all checks.
///
/// `abs` drives the Loewner decision rule (slack >= -abs * (1 + |B|)),
/// `rel` is used for multiplicative comparisons (products of eigenvalues),
/// and `rank_cutoff` is a per-dimension factor: eigenvalues below
/// `rank_cutoff * n * lambda_max` are treated as exact zeros.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
  double rank_cutoff = 1e-12;

  double cutoff(std::size_t n) const { return rank_cutoff * static_cast<double>(n == 0 ? 1 : n); }
  bool valid() const { return abs > 0 && rel > 0 && rank_cutoff > 0; }
};

class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols);
  CMat(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  CMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMat zeros(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }
  static CMat identity(std::size_t n);
  static CMat diagonal(std::span<const double> values);
  static CMat diagonal(std::span<const cplx> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;

  cplx trace() const;
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  CMat column(std::size_t j) const;
  CMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMat& b);

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s);

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator-(CMat a) { return a *= -1.0; }
  friend CMat operator*(CMat a, cplx s) { return a *= s; }
  friend CMat operator*(cplx s, CMat a) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b);

  bool operator==(const CMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Entrywise (Schur/Hadamard) product.
CMat schur_product(const CMat& a, const CMat& b);

/// Block diagonal diag(a, b).
CMat direct_sum(const CMat& a, const CMat& b);

/// Max-norm of M - M^*.
double hermitian_defect(const CMat& m);

/// A square matrix that is Hermitian within the validation tolerance. The
/// stored matrix is exactly Hermitian ((M + M^*) / 2 is kept).
class HermMat {
 public:
  HermMat() = default;
  explicit HermMat(const CMat& m, double tol = Tolerance{}.abs);

  /// Symmetrizes without validation; for matrices Hermitian by construction.
  static HermMat symmetrize(const CMat& m);
  static HermMat identity(std::size_t n) { return symmetrize(CMat::identity(n)); }
  static HermMat zeros(std::size_t n) { return symmetrize(CMat(n, n)); }
  static HermMat diagonal(std::span<const double> values) { return symmetrize(CMat::diagonal(values)); }

  std::size_t dim() const { return m_.rows(); }
  const CMat& mat() const { return m_; }
  operator const CMat&() const { return m_; }
  double operator()(std::size_t i) const { return m_(i, i).real(); }

  HermMat& operator+=(const HermMat& o);
  HermMat& operator-=(const HermMat& o);
  HermMat& operator*=(double s);
  friend HermMat operator+(HermMat a, const HermMat& b) { return a += b; }
  friend HermMat operator-(HermMat a, const HermMat& b) { return a -= b; }
  friend HermMat operator*(HermMat a, double s) { return a *= s; }
  friend HermMat operator*(double s, HermMat a) { return a *= s; }

 private:
  CMat m_;
};

/// Spectrum sorted descending plus orthonormal eigenvectors (columns).
struct EigenSystem {
  std::vector<double> values;
  CMat vectors;
};

constexpr int kJacobiSweepBudget = 100;

/// Cyclic complex Jacobi eigensolver. Deterministic sweep order.
EigenSystem eigh(const HermMat& h);

/// Unitary similarity Q diag(d) Q^*.
HermMat reconstruct(const CMat& q, std::span<const double> d);

enum class FunctionDomain { Real, NonNegative };

struct ScalarFunction {
  std::function<double(double)> fn;
  FunctionDomain domain = FunctionDomain::Real;
};

/// Q f(Lambda) Q^*. For nonnegative domains, eigenvalues within the rank
/// cutoff below zero are clamped to 0; anything more negative is a
/// DomainError.
HermMat matrix_function(const HermMat& h, const ScalarFunction& f, const Tolerance& tol = {});
HermMat matrix_function(const EigenSystem& es, const ScalarFunction& f, const Tolerance& tol = {});

/// Principal square root of a PSD matrix.
HermMat sqrt_psd(const HermMat& h, const Tolerance& tol = {});

/// Generalized power of a PSD matrix: eigenvalues at or below
/// rank_cutoff * n * lambda_max are treated as zero, and zero maps to zero
/// for every exponent. p = 0 gives the support projection.
HermMat generalized_power(const HermMat& h, double p, const Tolerance& tol = {});
inline HermMat generalized_inverse(const HermMat& h, double p, const Tolerance& tol = {}) {
  return generalized_power(h, p, tol);
}

struct LoewnerResult {
  bool pass = false;
  double slack = 0.0;  ///< lambda_min(B - A)
};

/// A <= B in the Loewner order, decided by lambda_min(B - A) >= -abs (1 + |B|).
LoewnerResult loewner_leq(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

double lambda_max(const HermMat& h);
double lambda_min(const HermMat& h);
std::vector<double> eigenvalues(const HermMat& h);

/// Largest singular value.
double operator_norm(const CMat& m);

/// rho(A B) for PSD A, B, computed as lambda_max(B^{1/2} A B^{1/2}).
double spectral_radius_psd_product(const HermMat& a, const HermMat& b, const Tolerance& tol = {});

/// Eigenvalues of a general square matrix (Hessenberg reduction followed by
/// shifted complex QR). Order is unspecified.
std::vector<cplx> eigenvalues_general(const CMat& m);
double spectral_radius(const CMat& m);

/// Max-norm of U^*U - I.
double unitarity_defect(const CMat& u);

/// Modified Gram-Schmidt (two passes) on the columns, in order.
CMat orthonormalize_columns(const CMat& m);

void require_same_dim(const CMat& a, const CMat& b, const char* what);
void require_square(const CMat& a, const char* what);

}  // namespace opineq

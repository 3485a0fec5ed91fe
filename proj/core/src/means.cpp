#include "opineq/means.hpp"

#include "opineq/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opineq {

namespace {

struct Split {
  CMat range;   // orthonormal basis of the eigenvectors above the cutoff
  CMat kernel;  // the rest
  std::vector<double> range_values;
};

Split split_by_rank(const EigenSystem& es, const Tolerance& tol) {
  const std::size_t n = es.values.size();
  const double lmax = n == 0 ? 0.0 : std::max(es.values.front(), 0.0);
  const double floor = tol.cutoff(n) * lmax;
  std::size_t rank = 0;
  while (rank < n && lmax > 0.0 && es.values[rank] > floor) ++rank;
  Split s;
  s.range = es.vectors.block(0, 0, n, rank);
  s.kernel = es.vectors.block(0, rank, n, n - rank);
  s.range_values.assign(es.values.begin(), es.values.begin() + static_cast<long>(rank));
  return s;
}

double largest_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Base must be positive definite; other is PSD.
HermMat mean_with_pd_base(const EigenSystem& base, const HermMat& other, const Tolerance& tol) {
  std::vector<double> root(base.values.size()), inv_root(base.values.size());
  for (std::size_t k = 0; k < base.values.size(); ++k) {
    root[k] = std::sqrt(base.values[k]);
    inv_root[k] = 1.0 / root[k];
  }
  const HermMat r = reconstruct(base.vectors, root);
  const HermMat ir = reconstruct(base.vectors, inv_root);
  const HermMat inner = HermMat::symmetrize(ir.mat() * other.mat() * ir.mat());
  const HermMat mid =
      matrix_function(inner, {[](double t) { return std::sqrt(std::max(t, 0.0)); }}, tol);
  return HermMat::symmetrize(r.mat() * mid.mat() * r.mat());
}

bool positive_definite(const EigenSystem& es, const Tolerance& tol) {
  if (es.values.empty()) return true;
  const double lmax = es.values.front();
  return lmax > 0.0 && es.values.back() > tol.cutoff(es.values.size()) * lmax;
}

double condition_ratio(const EigenSystem& es) {
  if (es.values.empty() || es.values.front() <= 0.0) return 0.0;
  return es.values.back() / es.values.front();
}

HermMat power_sum_root(const HermMat& a, const HermMat& b, double p, double weight,
                       const Tolerance& tol) {
  const EigenSystem ea = eigh(a);
  const EigenSystem eb = eigh(b);
  const double s = std::max(largest_abs(ea.values), largest_abs(eb.values));
  if (s == 0.0) return HermMat::zeros(a.dim());
  const ScalarFunction pw{[p, s](double t) { return std::pow(t / s, p); }, FunctionDomain::NonNegative};
  const HermMat sum = (matrix_function(ea, pw, tol) + matrix_function(eb, pw, tol)) * weight;
  const HermMat root = matrix_function(
      sum, {[p](double t) { return std::pow(std::max(t, 0.0), 1.0 / p); }}, tol);
  return root * s;
}

}  // namespace

MeanResult geometric_mean_detailed(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "geometric_mean");
  const std::size_t n = a.dim();
  const EigenSystem ea = eigh(a);
  const EigenSystem eb = eigh(b);
  for (const EigenSystem* es : {&ea, &eb}) {
    const double lmax = largest_abs(es->values);
    if (!es->values.empty() && es->values.back() < -tol.cutoff(n) * lmax) {
      throw Error(ErrorKind::DomainError, "geometric_mean of a non-PSD matrix");
    }
  }

  const bool pd_a = positive_definite(ea, tol);
  const bool pd_b = positive_definite(eb, tol);
  if (pd_a && pd_b) {
    // Better-conditioned argument as the base.
    if (condition_ratio(ea) >= condition_ratio(eb)) return {mean_with_pd_base(ea, b, tol), false};
    return {mean_with_pd_base(eb, a, tol), false};
  }
  if (pd_a) return {mean_with_pd_base(ea, b, tol), true};
  if (pd_b) return {mean_with_pd_base(eb, a, tol), true};

  const Split sa = split_by_rank(ea, tol);
  const std::size_t r = sa.range.cols();
  if (r == 0 || largest_abs(eb.values) == 0.0) return {HermMat::zeros(n), true};

  // Short B to ran(A).
  const CMat b11 = sa.range.adjoint() * b.mat() * sa.range;
  CMat shorted = b11;
  if (r < n) {
    const CMat b12 = sa.range.adjoint() * b.mat() * sa.kernel;
    const HermMat b22 = HermMat::symmetrize(sa.kernel.adjoint() * b.mat() * sa.kernel);
    const HermMat b22_pinv = generalized_power(b22, -1.0, tol);
    shorted = b11 - b12 * b22_pinv.mat() * b12.adjoint();
  }
  // Cancellation leaves rounding-size eigenvalues that the square root would amplify.
  {
    const EigenSystem es = eigh(HermMat::symmetrize(shorted));
    const double floor = tol.cutoff(n) * largest_abs(eb.values);
    std::vector<double> d(es.values.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = es.values[k] > floor ? es.values[k] : 0.0;
    shorted = reconstruct(es.vectors, d).mat();
  }
  EigenSystem base;
  base.values = sa.range_values;
  base.vectors = CMat::identity(r);
  const HermMat inner_mean = mean_with_pd_base(base, HermMat::symmetrize(shorted), tol);
  return {HermMat::symmetrize(sa.range * inner_mean.mat() * sa.range.adjoint()), true};
}

HermMat geometric_mean(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  return geometric_mean_detailed(a, b, tol).value;
}

HermMat geometric_mean_regularized(const HermMat& a, const HermMat& b, double eps) {
  require_same_dim(a, b, "geometric_mean_regularized");
  const double s = std::max({largest_abs(eigenvalues(a)), largest_abs(eigenvalues(b)), 0.0});
  if (s == 0.0) return HermMat::zeros(a.dim());
  const HermMat shift = HermMat::identity(a.dim()) * (eps * s);
  return geometric_mean(a + shift, b + shift);
}

HermMat geometric_mean_limit(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "geometric_mean_limit");
  const MeanResult direct = geometric_mean_detailed(a, b, tol);
  if (!direct.singular_input) return direct.value;
  const double s = std::max(largest_abs(eigenvalues(a)), largest_abs(eigenvalues(b)));
  HermMat prev = geometric_mean_regularized(a, b, 1e-4);
  HermMat last = prev;
  double diff = 0.0;
  for (double eps : {1e-6, 1e-8}) {
    last = geometric_mean_regularized(a, b, eps);
    diff = operator_norm((last - prev).mat());
    prev = last;
  }
  // Tail estimate for a sequence converging linearly in eps.
  const double tail = diff * 1e-8 / (1e-6 - 1e-8);
  if (tail > 1e-6 * (1.0 + s)) {
    throw Error(ErrorKind::NoConvergence, "regularized geometric mean not Cauchy: successive difference " +
                                              std::to_string(diff) + ", tail estimate " + std::to_string(tail));
  }
  return last;
}

LoewnerResult agm_check(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  return loewner_leq(geometric_mean(a, b, tol), (a + b) * 0.5, tol);
}

HermMat spectral_supremum(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "spectral_supremum");
  const std::size_t n = a.dim();
  if (n == 0) return HermMat{};
  const EigenSystem ea = eigh(a);
  const EigenSystem eb = eigh(b);
  const double scale = std::max(largest_abs(ea.values), largest_abs(eb.values));
  if (scale == 0.0) return HermMat::zeros(n);

  // Candidate levels: union of both spectra, merged within rel * scale.
  std::vector<double> levels(ea.values);
  levels.insert(levels.end(), eb.values.begin(), eb.values.end());
  std::sort(levels.begin(), levels.end());
  const double merge = tol.rel * scale;
  std::vector<double> distinct;
  for (double v : levels) {
    if (distinct.empty() || v - distinct.back() > merge) {
      distinct.push_back(v);
    } else {
      distinct.back() = v;  // keep the top of each cluster
    }
  }

  // Orthonormal basis of span{eigenvectors with eigenvalue <= t}.
  auto lower_space = [&](const EigenSystem& es, double t) {
    std::size_t first = es.values.size();
    while (first > 0 && es.values[first - 1] <= t + merge) --first;
    return es.vectors.block(0, first, n, es.values.size() - first);
  };

  // Principal vectors with cos^2 >= 1 - eta span the intersection.
  constexpr double eta = 1e-10;
  auto intersection_projection = [&](const CMat& qa, const CMat& qb) -> CMat {
    if (qa.cols() == 0 || qb.cols() == 0) return CMat(n, n);
    const CMat m = qa.adjoint() * qb;
    const EigenSystem es = eigh(HermMat::symmetrize(m * m.adjoint()));
    CMat proj(n, n);
    for (std::size_t k = 0; k < es.values.size(); ++k) {
      if (es.values[k] < 1.0 - eta) break;
      const CMat x = qa * es.vectors.column(k);
      proj += x * x.adjoint();
    }
    return proj;
  };

  // H = t_max I - sum_i (t_{i+1} - t_i) P_{S(t_i)} with S(t) nested.
  CMat h = CMat::identity(n) * distinct.back();
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    const double t = distinct[i];
    const CMat p = intersection_projection(lower_space(ea, t), lower_space(eb, t));
    h -= p * (distinct[i + 1] - t);
  }
  return HermMat::symmetrize(h);
}

HermMat kato_supremum(const CMat& z, const Tolerance& tol) {
  require_square(z, "kato_supremum");
  return spectral_supremum(modulus(z, tol), comodulus(z, tol), tol);
}

HermMat kato_power_mean(const CMat& z, double p, const Tolerance& tol) {
  require_square(z, "kato_power_mean");
  if (!(p >= 1.0)) throw Error(ErrorKind::DomainError, "kato_power_mean needs p >= 1");
  return power_sum_root(modulus(z, tol), comodulus(z, tol), p, 0.5, tol);
}

HermMat q_mean(const CMat& z, double q, const Tolerance& tol) {
  require_square(z, "q_mean");
  if (!(q >= 1.0)) throw Error(ErrorKind::DomainError, "q_mean needs q >= 1");
  return power_sum_root(modulus(z, tol), comodulus(z, tol), q, 1.0, tol);
}

std::vector<double> clamped_spectrum(const HermMat& h, const Tolerance& tol) {
  std::vector<double> v = eigenvalues(h);
  const double floor = tol.cutoff(v.size()) * largest_abs(v);
  for (double& x : v)
    if (std::abs(x) <= floor) x = 0.0;
  return v;
}

MajorizationReport weak_log_majorizes(const HermMat& a, const HermMat& b, const Tolerance& tol) {
  require_same_dim(a, b, "weak_log_majorizes");
  const std::vector<double> la = clamped_spectrum(a, tol);
  const std::vector<double> lb = clamped_spectrum(b, tol);
  MajorizationReport rep;
  rep.pass = true;
  double pa = 1.0, pb = 1.0;
  for (std::size_t k = 0; k < la.size(); ++k) {
    pa *= std::max(la[k], 0.0);
    pb *= std::max(lb[k], 0.0);
    rep.k_products_lhs.push_back(pa);
    rep.k_products_rhs.push_back(pb);
    double ratio;
    if (pb == 0.0) {
      ratio = pa == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      ratio = pa / pb;
    }
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (!(pa <= pb * (1.0 + tol.rel))) {
      if (rep.pass) rep.first_failure = k + 1;
      rep.pass = false;
    }
  }
  return rep;
}

HermMat compress(const HermMat& a, const CMat& s, const Tolerance& tol) {
  if (s.rows() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "compress: isometry rows != dim");
  const double defect = unitarity_defect(s);
  if (defect > tol.abs) {
    throw Error(ErrorKind::NotIsometry, "max |S*S - I| = " + std::to_string(defect));
  }
  return HermMat::symmetrize(s.adjoint() * a.mat() * s);
}

LoewnerResult ando_compression_check(const HermMat& a, const HermMat& b, const CMat& s,
                                     const Tolerance& tol) {
  const HermMat lhs = compress(geometric_mean(a, b, tol), s, tol);
  const HermMat rhs = geometric_mean(compress(a, s, tol), compress(b, s, tol), tol);
  return loewner_leq(lhs, rhs, tol);
}

}  // namespace opineq

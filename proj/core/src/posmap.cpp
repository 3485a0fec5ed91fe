#include "opineq/posmap.hpp"

#include <algorithm>
#include <string>

#include "opineq/generators.hpp"
#include "opineq/rng.hpp"

namespace opineq {

std::string_view to_string(PositivityClass c) {
  switch (c) {
    case PositivityClass::Positive: return "positive";
    case PositivityClass::TwoPositive: return "two_positive";
    case PositivityClass::CompletelyPositive: return "completely_positive";
  }
  return "unknown";
}

std::string_view to_string(MapFamily f) {
  switch (f) {
    case MapFamily::Identity: return "identity";
    case MapFamily::Transpose: return "transpose";
    case MapFamily::PartialTrace2x2: return "partial_trace_2x2";
    case MapFamily::KrausSum: return "kraus_sum";
    case MapFamily::SchurMultiplier: return "schur_multiplier";
    case MapFamily::Congruence: return "congruence";
    case MapFamily::Sum: return "sum";
    case MapFamily::Compose: return "compose";
  }
  return "unknown";
}

PositivityClass positivity_class_from_string(std::string_view s) {
  for (auto c : {PositivityClass::Positive, PositivityClass::TwoPositive, PositivityClass::CompletelyPositive})
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::ParseError, "unknown positivity class '" + std::string(s) + "'");
}

MapFamily map_family_from_string(std::string_view s) {
  for (auto f : {MapFamily::Identity, MapFamily::Transpose, MapFamily::PartialTrace2x2, MapFamily::KrausSum,
                 MapFamily::SchurMultiplier, MapFamily::Congruence, MapFamily::Sum, MapFamily::Compose})
    if (to_string(f) == s) return f;
  throw Error(ErrorKind::ParseError, "unknown map family '" + std::string(s) + "'");
}

struct PosMap::Node {
  MapFamily family;
  std::size_t in_dim;
  std::size_t out_dim;
  PositivityClass derived;
  PositivityClass declared;
  std::vector<CMat> mats;
  std::vector<PosMap> children;
};

namespace {

PositivityClass weakest(PositivityClass a, PositivityClass b) { return std::min(a, b); }

}  // namespace

PosMap PosMap::identity(std::size_t n) {
  return PosMap(std::make_shared<const Node>(
      Node{MapFamily::Identity, n, n, PositivityClass::CompletelyPositive, PositivityClass::CompletelyPositive, {}, {}}));
}

PosMap PosMap::transpose(std::size_t n) {
  return PosMap(std::make_shared<const Node>(
      Node{MapFamily::Transpose, n, n, PositivityClass::Positive, PositivityClass::Positive, {}, {}}));
}

PosMap PosMap::partial_trace_2x2(std::size_t block_dim) {
  return PosMap(std::make_shared<const Node>(Node{MapFamily::PartialTrace2x2, 2 * block_dim, block_dim,
                                                  PositivityClass::CompletelyPositive,
                                                  PositivityClass::CompletelyPositive, {}, {}}));
}

PosMap PosMap::kraus_sum(std::vector<CMat> operators) {
  if (operators.empty()) throw Error(ErrorKind::InvalidSpec, "kraus_sum needs at least one operator");
  const std::size_t m = operators.front().rows();
  const std::size_t n = operators.front().cols();
  for (const auto& k : operators) {
    if (k.rows() != m || k.cols() != n) throw Error(ErrorKind::DimensionMismatch, "kraus operators differ in shape");
  }
  return PosMap(std::make_shared<const Node>(Node{MapFamily::KrausSum, n, m, PositivityClass::CompletelyPositive,
                                                  PositivityClass::CompletelyPositive, std::move(operators), {}}));
}

PosMap PosMap::schur_multiplier(const HermMat& s, const Tolerance& tol) {
  const auto ev = eigenvalues(s);
  const double scale = ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
  if (!ev.empty() && ev.back() < -tol.abs * (1.0 + scale)) {
    throw Error(ErrorKind::ClassViolation, "schur multiplier factor is not PSD");
  }
  return PosMap(std::make_shared<const Node>(Node{MapFamily::SchurMultiplier, s.dim(), s.dim(),
                                                  PositivityClass::CompletelyPositive,
                                                  PositivityClass::CompletelyPositive, {s.mat()}, {}}));
}

PosMap PosMap::congruence(const CMat& k) {
  return PosMap(std::make_shared<const Node>(Node{MapFamily::Congruence, k.cols(), k.rows(),
                                                  PositivityClass::CompletelyPositive,
                                                  PositivityClass::CompletelyPositive, {k}, {}}));
}

PosMap PosMap::sum(std::vector<PosMap> terms) {
  if (terms.empty()) throw Error(ErrorKind::InvalidSpec, "sum needs at least one term");
  PositivityClass cls = PositivityClass::CompletelyPositive;
  PositivityClass decl = PositivityClass::CompletelyPositive;
  for (const auto& t : terms) {
    if (t.in_dim() != terms.front().in_dim() || t.out_dim() != terms.front().out_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "sum terms differ in dimensions");
    }
    cls = weakest(cls, t.derived_class());
    decl = weakest(decl, t.declared_class());
  }
  const std::size_t n = terms.front().in_dim();
  const std::size_t m = terms.front().out_dim();
  return PosMap(std::make_shared<const Node>(Node{MapFamily::Sum, n, m, cls, decl, {}, std::move(terms)}));
}

PosMap PosMap::compose(const PosMap& outer, const PosMap& inner) {
  if (outer.in_dim() != inner.out_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: outer.in_dim " + std::to_string(outer.in_dim()) +
                                                  " != inner.out_dim " + std::to_string(inner.out_dim()));
  }
  return PosMap(std::make_shared<const Node>(Node{MapFamily::Compose, inner.in_dim(), outer.out_dim(),
                                                  weakest(outer.derived_class(), inner.derived_class()),
                                                  weakest(outer.declared_class(), inner.declared_class()),
                                                  {},
                                                  {outer, inner}}));
}

PosMap PosMap::with_declared_class(PositivityClass c) const {
  if (c > derived_class()) {
    throw Error(ErrorKind::ClassViolation, "cannot declare " + std::string(to_string(c)) + " for a " +
                                               std::string(to_string(derived_class())) + " construction");
  }
  Node copy = *node_;
  copy.declared = c;
  return PosMap(std::make_shared<const Node>(std::move(copy)));
}

MapFamily PosMap::family() const { return node_->family; }
std::size_t PosMap::in_dim() const { return node_->in_dim; }
std::size_t PosMap::out_dim() const { return node_->out_dim; }
PositivityClass PosMap::declared_class() const { return node_->declared; }
PositivityClass PosMap::derived_class() const { return node_->derived; }
const std::vector<CMat>& PosMap::operators() const { return node_->mats; }
const std::vector<PosMap>& PosMap::children() const { return node_->children; }

CMat PosMap::apply(const CMat& x) const {
  const std::size_t n = node_->in_dim;
  if (x.rows() != n || x.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(to_string(node_->family)) + " expects " +
                                                  std::to_string(n) + "x" + std::to_string(n) + " input, got " +
                                                  std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  switch (node_->family) {
    case MapFamily::Identity: return x;
    case MapFamily::Transpose: return x.transpose();
    case MapFamily::PartialTrace2x2: {
      const std::size_t b = node_->out_dim;
      return x.block(0, 0, b, b) + x.block(b, b, b, b);
    }
    case MapFamily::KrausSum: {
      CMat r(node_->out_dim, node_->out_dim);
      for (const auto& k : node_->mats) r += k * x * k.adjoint();
      return r;
    }
    case MapFamily::SchurMultiplier: return schur_product(node_->mats.front(), x);
    case MapFamily::Congruence: {
      const CMat& k = node_->mats.front();
      return k * x * k.adjoint();
    }
    case MapFamily::Sum: {
      CMat r(node_->out_dim, node_->out_dim);
      for (const auto& t : node_->children) r += t.apply(x);
      return r;
    }
    case MapFamily::Compose: return node_->children[0].apply(node_->children[1].apply(x));
  }
  throw Error(ErrorKind::InvalidSpec, "unhandled map family");
}

CMat PosMap::apply_amplified(const CMat& x, std::size_t level) const {
  const std::size_t n = in_dim();
  const std::size_t m = out_dim();
  if (x.rows() != level * n || x.cols() != level * n) {
    throw Error(ErrorKind::DimensionMismatch, "apply_amplified: input is not level x level blocks of in_dim");
  }
  CMat out(level * m, level * m);
  for (std::size_t i = 0; i < level; ++i)
    for (std::size_t j = 0; j < level; ++j) out.set_block(i * m, j * m, apply(x.block(i * n, j * n, n, n)));
  return out;
}

PosMap compress_map(const PosMap& phi, const HermMat& j, const Tolerance& tol) {
  if (j.dim() != phi.in_dim()) throw Error(ErrorKind::DimensionMismatch, "compress_map: J dimension != in_dim");
  return PosMap::compose(phi, PosMap::congruence(sqrt_psd(j, tol).mat()));
}

ChoiMatrix choi_matrix(const PosMap& phi) {
  const std::size_t n = phi.in_dim();
  const std::size_t m = phi.out_dim();
  CMat c(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CMat e(n, n);
      e(i, j) = 1.0;
      c.set_block(i * m, j * m, phi.apply(e));
    }
  }
  return {HermMat::symmetrize(c), phi};
}

std::optional<PositivityWitness> sample_positivity_falsifier(const PosMap& phi, std::size_t level,
                                                             std::size_t trials, std::uint64_t seed,
                                                             const Tolerance& tol) {
  if (level != 1 && level != 2) throw Error(ErrorKind::InvalidSpec, "falsifier level must be 1 or 2");
  if (trials == 0) throw Error(ErrorKind::InvalidSpec, "falsifier needs trials >= 1");
  const std::size_t dim = level * phi.in_dim();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, 0x9057, t));
    const std::size_t rank = rng.coin(0.5) ? 1 : 1 + rng.index(dim);
    const HermMat x = wishart_psd(dim, rank, rng);
    const HermMat y = HermMat::symmetrize(phi.apply_amplified(x.mat(), level));
    const auto ev = eigenvalues(y);
    const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
    if (ev.back() < -tol.abs * (1.0 + scale)) return PositivityWitness{x.mat(), ev.back(), t};
  }
  return std::nullopt;
}

}  // namespace opineq

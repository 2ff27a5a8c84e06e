#include "paracos/tensor.hpp"

namespace paracos {

TensorField::TensorField(ContextPtr ctx, int up, int down)
    : ctx_(std::move(ctx)), dim_(ctx_->dim()), up_(up), down_(down) {
  std::size_t n = 1;
  for (int k = 0; k < up + down; ++k) n *= static_cast<std::size_t>(dim_);
  comps_.assign(n, ScalarField(ctx_));
}

std::size_t TensorField::flatten(const Index& idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw Error("tensor index has wrong rank");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw Error("tensor index out of range");
    flat = flat * dim_ + i;
  }
  return flat;
}

void TensorField::unflatten(std::size_t flat, Index& idx) const {
  idx.resize(rank());
  for (int k = rank() - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % dim_);
    flat /= dim_;
  }
}

bool TensorField::is_zero() const {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<Index> TensorField::first_nonzero() const {
  for (std::size_t flat = 0; flat < comps_.size(); ++flat) {
    if (!comps_[flat].is_zero()) {
      Index idx;
      unflatten(flat, idx);
      return idx;
    }
  }
  return std::nullopt;
}

std::string TensorField::index_label(const Index& idx) const {
  std::string out = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + ctx_->coord_name(idx[k]);
  return out + ")";
}

void TensorField::require_same_shape(const TensorField& other) const {
  require_same_context(ctx_, other.ctx_);
  if (up_ != other.up_ || down_ != other.down_) throw Error("tensor valence mismatch");
}

TensorField TensorField::operator+(const TensorField& other) const {
  require_same_shape(other);
  TensorField t = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) t.comps_[i] += other.comps_[i];
  return t;
}

TensorField TensorField::operator-(const TensorField& other) const {
  require_same_shape(other);
  TensorField t = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) t.comps_[i] -= other.comps_[i];
  return t;
}

TensorField TensorField::operator-() const {
  TensorField t = *this;
  for (auto& c : t.comps_) c = -c;
  return t;
}

TensorField TensorField::operator*(const ScalarField& f) const {
  TensorField t = *this;
  for (auto& c : t.comps_) c *= f;
  return t;
}

TensorField TensorField::operator*(const Rational& c) const {
  TensorField t = *this;
  for (auto& x : t.comps_) x = x * c;
  return t;
}

bool TensorField::operator==(const TensorField& other) const {
  require_same_shape(other);
  return comps_ == other.comps_;
}

TensorField TensorField::in_context(const ContextPtr& wider) const {
  TensorField t(wider, up_, down_);
  for (std::size_t i = 0; i < comps_.size(); ++i) t.comps_[i] = comps_[i].in_context(wider);
  return t;
}

ScalarField delta(const ContextPtr& ctx, int a, int b) { return ScalarField(ctx, a == b ? 1 : 0); }

TensorField compose(const TensorField& a, const TensorField& b) {
  const auto& ctx = a.context();
  return TensorField::generate(ctx, 1, 1, [&](const Index& i) {
    return sum_over(ctx, a.dim(), [&](int k) { return a(i[0], k) * b(k, i[1]); });
  });
}

TensorField apply(const TensorField& op, const TensorField& v) {
  const auto& ctx = op.context();
  return TensorField::generate(ctx, 1, 0, [&](const Index& i) {
    return sum_over(ctx, op.dim(), [&](int k) { return op(i[0], k) * v(k); });
  });
}

ScalarField trace(const TensorField& op) {
  return sum_over(op.context(), op.dim(), [&](int k) { return op(k, k); });
}

TensorField identity_operator(const ContextPtr& ctx) {
  return TensorField::generate(ctx, 1, 1, [&](const Index& i) { return delta(ctx, i[0], i[1]); });
}

TensorField outer_vector_covector(const TensorField& v, const TensorField& w) {
  return TensorField::generate(v.context(), 1, 1, [&](const Index& i) { return v(i[0]) * w(i[1]); });
}

TensorField lower_operator(const TensorField& op, const TensorField& g) {
  const auto& ctx = op.context();
  return TensorField::generate(ctx, 0, 2, [&](const Index& i) {
    return sum_over(ctx, op.dim(), [&](int k) { return op(k, i[0]) * g(k, i[1]); });
  });
}

TensorField lower_vector(const TensorField& v, const TensorField& g) {
  const auto& ctx = v.context();
  return TensorField::generate(ctx, 0, 1, [&](const Index& i) {
    return sum_over(ctx, v.dim(), [&](int k) { return g(i[0], k) * v(k); });
  });
}

TensorField raise_covector(const TensorField& w, const TensorField& ginv) {
  const auto& ctx = w.context();
  return TensorField::generate(ctx, 1, 0, [&](const Index& i) {
    return sum_over(ctx, w.dim(), [&](int k) { return ginv(i[0], k) * w(k); });
  });
}

ScalarField pair(const TensorField& covector, const TensorField& vector) {
  return sum_over(covector.context(), covector.dim(), [&](int k) { return covector(k) * vector(k); });
}

ScalarField metric_product(const TensorField& g, const TensorField& u, const TensorField& v) {
  const auto& ctx = g.context();
  return sum_over(ctx, g.dim(), [&](int a) {
    if (u(a).is_zero()) return ScalarField(ctx);
    return u(a) * sum_over(ctx, g.dim(), [&](int b) { return g(a, b) * v(b); });
  });
}

TensorField coordinate_vector(const ContextPtr& ctx, int i) {
  return TensorField::generate(ctx, 1, 0, [&](const Index& a) { return delta(ctx, a[0], i); });
}

}  // namespace paracos

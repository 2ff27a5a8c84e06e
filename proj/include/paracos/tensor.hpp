#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracos/scalar_field.hpp"

namespace paracos {

using Index = std::vector<int>;

// Components of a tensor field of valence (up, down); contravariant indices come first.
class TensorField {
 public:
  TensorField() = default;
  TensorField(ContextPtr ctx, int up, int down);

  template <class F>
  static TensorField generate(const ContextPtr& ctx, int up, int down, F&& f) {
    TensorField t(ctx, up, down);
    Index idx(up + down, 0);
    for (std::size_t flat = 0; flat < t.comps_.size(); ++flat) {
      t.unflatten(flat, idx);
      t.comps_[flat] = f(idx);
    }
    return t;
  }

  const ContextPtr& context() const { return ctx_; }
  int dim() const { return dim_; }
  int up() const { return up_; }
  int down() const { return down_; }
  int rank() const { return up_ + down_; }
  std::size_t size() const { return comps_.size(); }

  ScalarField& at(const Index& idx) { return comps_[flatten(idx)]; }
  const ScalarField& at(const Index& idx) const { return comps_[flatten(idx)]; }
  template <class... I>
  const ScalarField& operator()(I... i) const {
    return comps_[flatten(Index{static_cast<int>(i)...})];
  }
  template <class... I>
  ScalarField& operator()(I... i) {
    return comps_[flatten(Index{static_cast<int>(i)...})];
  }
  const std::vector<ScalarField>& components() const { return comps_; }

  bool is_zero() const;
  // First nonzero component in index order, if any.
  std::optional<Index> first_nonzero() const;
  std::string index_label(const Index& idx) const;

  TensorField operator+(const TensorField& other) const;
  TensorField operator-(const TensorField& other) const;
  TensorField operator-() const;
  TensorField operator*(const ScalarField& f) const;
  TensorField operator*(const Rational& c) const;
  bool operator==(const TensorField& other) const;
  bool operator!=(const TensorField& other) const { return !(*this == other); }

  TensorField in_context(const ContextPtr& wider) const;

  std::size_t flatten(const Index& idx) const;
  void unflatten(std::size_t flat, Index& idx) const;

 private:
  void require_same_shape(const TensorField& other) const;

  ContextPtr ctx_;
  int dim_ = 0;
  int up_ = 0;
  int down_ = 0;
  std::vector<ScalarField> comps_;
};

// Sum of f(k) for k = 0..n-1; returns the zero field when n = 0.
template <class F>
ScalarField sum_over(const ContextPtr& ctx, int n, F&& f) {
  ScalarField total(ctx);
  for (int k = 0; k < n; ++k) total += f(k);
  return total;
}

ScalarField delta(const ContextPtr& ctx, int a, int b);

// Contractions used throughout: (1,1)∘(1,1), (1,1) applied to a vector, traces, lowering.
TensorField compose(const TensorField& a, const TensorField& b);
TensorField apply(const TensorField& op, const TensorField& v);
ScalarField trace(const TensorField& op);
TensorField identity_operator(const ContextPtr& ctx);
TensorField outer_vector_covector(const TensorField& v, const TensorField& w);
// g(T·,·) as a (0,2) tensor: result(x,y) = g(T d_x, d_y).
TensorField lower_operator(const TensorField& op, const TensorField& g);
// Covector g(v,·).
TensorField lower_vector(const TensorField& v, const TensorField& g);
// Vector g^{-1}(w,·).
TensorField raise_covector(const TensorField& w, const TensorField& ginv);
ScalarField pair(const TensorField& covector, const TensorField& vector);
ScalarField metric_product(const TensorField& g, const TensorField& u, const TensorField& v);

TensorField coordinate_vector(const ContextPtr& ctx, int i);

}  // namespace paracos

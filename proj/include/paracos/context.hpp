#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paracos/rational.hpp"

namespace paracos {

// E = exp(rate * x_coord), treated as an extra polynomial variable.
struct Generator {
  std::string name;
  int coord = 0;
  Rational rate;
};

class Context {
 public:
  explicit Context(std::vector<std::string> coords, std::vector<Generator> generators = {});

  int dim() const { return static_cast<int>(coords_.size()); }
  int num_generators() const { return static_cast<int>(generators_.size()); }
  int num_vars() const { return dim() + num_generators(); }

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::string& coord_name(int i) const { return coords_.at(i); }
  const Generator& generator(int k) const { return generators_.at(k); }
  const std::string& var_name(int v) const;

  std::optional<int> find_coord(const std::string& name) const;
  std::optional<int> find_generator(const std::string& name) const;
  std::optional<int> generator_for_coord(int coord) const;

  bool same_as(const Context& other) const;
  std::string describe() const;

  std::shared_ptr<const Context> with_generator(const Generator& generator) const;

 private:
  std::vector<std::string> coords_;
  std::vector<Generator> generators_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(std::vector<std::string> coords, std::vector<Generator> generators = {});

// Throws ContextMismatchError naming both variable sets unless the contexts agree.
void require_same_context(const ContextPtr& a, const ContextPtr& b);

}  // namespace paracos

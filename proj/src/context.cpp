#include "paracos/context.hpp"

#include <set>

#include "paracos/errors.hpp"

namespace paracos {

Context::Context(std::vector<std::string> coords, std::vector<Generator> generators)
    : coords_(std::move(coords)), generators_(std::move(generators)) {
  std::set<std::string> names;
  for (const auto& c : coords_) {
    if (c.empty()) throw DefinitionError("empty coordinate name");
    if (!names.insert(c).second) throw DefinitionError("duplicate name '" + c + "'");
  }
  std::set<int> used;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw DefinitionError("empty generator name");
    if (!names.insert(g.name).second) throw DefinitionError("duplicate name '" + g.name + "'");
    if (g.coord < 0 || g.coord >= dim()) {
      throw DefinitionError("generator '" + g.name + "' refers to an unknown coordinate");
    }
    if (g.rate == 0) throw DefinitionError("generator '" + g.name + "' has zero rate");
    if (!used.insert(g.coord).second) {
      throw DefinitionError("generator '" + g.name + "': at most one generator per coordinate is supported (coordinate '" +
                            coords_[g.coord] + "')");
    }
  }
}

const std::string& Context::var_name(int v) const {
  if (v < dim()) return coords_.at(v);
  return generators_.at(v - dim()).name;
}

std::optional<int> Context::find_coord(const std::string& name) const {
  for (int i = 0; i < dim(); ++i) {
    if (coords_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<int> Context::find_generator(const std::string& name) const {
  for (int k = 0; k < num_generators(); ++k) {
    if (generators_[k].name == name) return k;
  }
  return std::nullopt;
}

std::optional<int> Context::generator_for_coord(int coord) const {
  for (int k = 0; k < num_generators(); ++k) {
    if (generators_[k].coord == coord) return k;
  }
  return std::nullopt;
}

bool Context::same_as(const Context& other) const {
  if (this == &other) return true;
  if (coords_ != other.coords_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& a = generators_[k];
    const auto& b = other.generators_[k];
    if (a.name != b.name || a.coord != b.coord || a.rate != b.rate) return false;
  }
  return true;
}

std::string Context::describe() const {
  std::string out = "coords {";
  for (int i = 0; i < dim(); ++i) out += (i ? "," : "") + coords_[i];
  out += "} generators {";
  for (int k = 0; k < num_generators(); ++k) {
    const auto& g = generators_[k];
    out += (k ? "," : "") + g.name + "=exp(" + to_string(g.rate) + "*" + coords_[g.coord] + ")";
  }
  return out + "}";
}

ContextPtr Context::with_generator(const Generator& generator) const {
  auto gens = generators_;
  gens.push_back(generator);
  return std::make_shared<const Context>(coords_, gens);
}

ContextPtr make_context(std::vector<std::string> coords, std::vector<Generator> generators) {
  return std::make_shared<const Context>(std::move(coords), std::move(generators));
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) {
    throw ContextMismatchError("context mismatch: " + (a ? a->describe() : std::string("<none>")) + " vs " +
                               (b ? b->describe() : std::string("<none>")));
  }
}

}  // namespace paracos

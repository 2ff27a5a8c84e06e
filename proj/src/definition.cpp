#include "paracos/definition.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "paracos/errors.hpp"
#include "paracos/expression.hpp"

namespace paracos {
namespace {

struct Value {
  enum class Kind { Scalar, List, Table };
  Kind kind = Kind::Scalar;
  std::string text;
  std::vector<Value> items;
  std::map<std::string, Value> fields;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

class ValueParser {
 public:
  ValueParser(const std::string& text, const std::string& key) : text_(text), key_(key) {}

  Value run() {
    Value v = value();
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw DefinitionError("key '" + key_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Value value() {
    skip();
    if (pos_ >= text_.size()) fail("missing value");
    char c = text_[pos_];
    if (c == '[') return list();
    if (c == '{') return table();
    if (c == '"') return quoted();
    return bare();
  }

  Value list() {
    Value v;
    v.kind = Value::Kind::List;
    ++pos_;
    skip();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      v.items.push_back(value());
      skip();
      if (pos_ >= text_.size()) fail("unterminated list");
      if (text_[pos_] == ',') {
        ++pos_;
        skip();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          return v;
        }
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']'");
    }
  }

  Value table() {
    Value v;
    v.kind = Value::Kind::Table;
    ++pos_;
    while (true) {
      skip();
      if (pos_ >= text_.size()) fail("unterminated table");
      if (text_[pos_] == '}') {
        ++pos_;
        return v;
      }
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (name.empty()) fail("expected a field name");
      skip();
      if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected '='");
      ++pos_;
      v.fields[name] = value();
      skip();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
    }
  }

  Value quoted() {
    Value v;
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated string");
    v.text = text_.substr(start, pos_ - start);
    ++pos_;
    return v;
  }

  Value bare() {
    Value v;
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) fail("unbalanced ')'");
        --depth;
      }
      if (depth == 0 && (c == ',' || c == ']' || c == '}')) break;
      ++pos_;
    }
    v.text = trim(text_.substr(start, pos_ - start));
    if (v.text.empty()) fail("empty value");
    return v;
  }

  const std::string& text_;
  std::string key_;
  std::size_t pos_ = 0;
};

using Section = std::map<std::string, Value>;

std::map<std::string, Section> parse_sections(const std::string& contents) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in(contents);
  std::string line;
  std::string pending_key;
  std::string pending_value;
  int depth = 0;
  int line_no = 0;

  auto finish = [&]() {
    auto& section = sections[current];
    if (section.count(pending_key)) throw DefinitionError("duplicate key '" + pending_key + "' in [" + current + "]");
    section[pending_key] = ValueParser(pending_value, pending_key).run();
    pending_key.clear();
    pending_value.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line = line.substr(0, i);
        break;
      }
    }
    if (!pending_key.empty()) {
      pending_value += "\n" + line;
    } else {
      std::string t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
        current = trim(t.substr(1, t.size() - 2));
        if (sections.count(current)) throw DefinitionError("duplicate section [" + current + "]");
        sections[current];
        continue;
      }
      auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw DefinitionError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      if (current.empty()) throw DefinitionError("line " + std::to_string(line_no) + ": key outside of a section");
      pending_key = trim(t.substr(0, eq));
      pending_value = t.substr(eq + 1);
      depth = 0;
    }
    depth = 0;
    bool in_str = false;
    for (char c : pending_value) {
      if (c == '"') in_str = !in_str;
      if (in_str) continue;
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
    }
    if (depth <= 0) finish();
  }
  if (!pending_key.empty()) throw DefinitionError("unterminated value for key '" + pending_key + "'");
  return sections;
}

const Value& require(const Section& section, const std::string& section_name, const std::string& key) {
  auto it = section.find(key);
  if (it == section.end()) throw DefinitionError("missing required key '" + key + "' in [" + section_name + "]");
  return it->second;
}

std::vector<std::string> scalar_list(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::List) throw DefinitionError("key '" + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& item : v.items) {
    if (item.kind != Value::Kind::Scalar) throw DefinitionError("key '" + key + "' must be a flat list");
    out.push_back(item.text);
  }
  return out;
}

std::vector<std::vector<std::string>> matrix(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::List) throw DefinitionError("key '" + key + "' must be a list of rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : v.items) out.push_back(scalar_list(row, key));
  return out;
}

Rational constant_expression(const std::string& text, const std::string& what) {
  auto empty = make_context({});
  try {
    ScalarField f = parse_scalar(text, empty);
    return f.constant_value();
  } catch (const Error& e) {
    throw DefinitionError(what + ": '" + text + "' is not a rational constant (" + e.what() + ")");
  }
}

void check_keys(const Section& section, const std::string& name, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : section) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == key;
    if (!ok) throw DefinitionError("unknown key '" + key + "' in [" + name + "]");
  }
}

}  // namespace

ContextPtr ManifoldDefinition::context() const { return make_context(coords, generators); }

ManifoldDefinition load_definition(const std::string& contents) {
  auto sections = parse_sections(contents);
  for (const auto& [name, section] : sections) {
    if (name != "chart" && name != "generators" && name != "structure") {
      throw DefinitionError("unknown section [" + name + "]");
    }
  }
  if (!sections.count("chart")) throw DefinitionError("missing required section [chart]");
  if (!sections.count("structure")) throw DefinitionError("missing required section [structure]");
  const auto& chart = sections.at("chart");
  const auto& structure = sections.at("structure");
  check_keys(chart, "chart", {"dim", "coords", "base_point"});
  check_keys(structure, "structure", {"xi", "eta", "phi", "metric", "alpha"});

  ManifoldDefinition def;
  const Value& dim = require(chart, "chart", "dim");
  if (dim.kind != Value::Kind::Scalar) throw DefinitionError("key 'dim' must be an integer");
  Rational d = constant_expression(dim.text, "dim");
  if (d.get_den() != 1 || !d.get_num().fits_sint_p()) throw DefinitionError("key 'dim' must be an integer");
  def.dim = static_cast<int>(d.get_num().get_si());
  def.coords = scalar_list(require(chart, "chart", "coords"), "coords");
  for (const auto& text : scalar_list(require(chart, "chart", "base_point"), "base_point")) {
    def.base_point.push_back(constant_expression(text, "base_point"));
  }

  if (sections.count("generators")) {
    for (const auto& [name, value] : sections.at("generators")) {
      if (value.kind != Value::Kind::Table) throw DefinitionError("generator '" + name + "' must be a table");
      auto coord = value.fields.find("coord");
      auto rate = value.fields.find("rate");
      if (coord == value.fields.end()) throw DefinitionError("missing required key 'coord' for generator '" + name + "'");
      if (rate == value.fields.end()) throw DefinitionError("missing required key 'rate' for generator '" + name + "'");
      for (const auto& [field, unused] : value.fields) {
        if (field != "coord" && field != "rate") throw DefinitionError("unknown key '" + field + "' in generator '" + name + "'");
      }
      Generator g;
      g.name = name;
      g.coord = -1;
      for (std::size_t i = 0; i < def.coords.size(); ++i) {
        if (def.coords[i] == coord->second.text) g.coord = static_cast<int>(i);
      }
      if (g.coord < 0) throw DefinitionError("generator '" + name + "' refers to unknown coordinate '" + coord->second.text + "'");
      g.rate = constant_expression(rate->second.text, "rate");
      def.generators.push_back(g);
    }
  }

  def.xi = scalar_list(require(structure, "structure", "xi"), "xi");
  def.eta = scalar_list(require(structure, "structure", "eta"), "eta");
  def.phi = matrix(require(structure, "structure", "phi"), "phi");
  def.metric = matrix(require(structure, "structure", "metric"), "metric");
  if (structure.count("alpha")) {
    const Value& a = structure.at("alpha");
    if (a.kind != Value::Kind::Scalar) throw DefinitionError("key 'alpha' must be an expression");
    def.alpha = a.text;
  }
  validate_definition(def);
  return def;
}

ManifoldDefinition load_definition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DefinitionError("cannot read definition file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_definition(buffer.str());
}

void validate_definition(const ManifoldDefinition& def) {
  const int n = def.dim;
  if (n < 3 || n % 2 == 0) throw DefinitionError("dimension must be odd and at least 3, got " + std::to_string(n));
  auto shape = [&](std::size_t got, const std::string& what) {
    if (static_cast<int>(got) != n) {
      throw DefinitionError("dimension mismatch: '" + what + "' has " + std::to_string(got) + " entries, expected " +
                            std::to_string(n));
    }
  };
  shape(def.coords.size(), "coords");
  shape(def.base_point.size(), "base_point");
  shape(def.xi.size(), "xi");
  shape(def.eta.size(), "eta");
  shape(def.phi.size(), "phi");
  shape(def.metric.size(), "metric");
  for (int i = 0; i < n; ++i) {
    shape(def.phi[i].size(), "phi row " + std::to_string(i));
    shape(def.metric[i].size(), "metric row " + std::to_string(i));
  }
  ContextPtr ctx;
  try {
    ctx = def.context();
  } catch (const Error& e) {
    throw DefinitionError(e.what());
  }
  auto parse = [&](const std::string& text, const std::string& what) {
    try {
      return parse_scalar(text, ctx);
    } catch (const ParseError& e) {
      throw DefinitionError(what + ": " + e.what());
    } catch (const DivisionByZeroError& e) {
      throw DefinitionError(what + ": " + e.what());
    }
  };
  for (int i = 0; i < n; ++i) {
    parse(def.xi[i], "xi[" + std::to_string(i) + "]");
    parse(def.eta[i], "eta[" + std::to_string(i) + "]");
    for (int j = 0; j < n; ++j) parse(def.phi[i][j], "phi[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto a = parse(def.metric[i][j], "metric[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      auto b = parse(def.metric[j][i], "metric[" + std::to_string(j) + "][" + std::to_string(i) + "]");
      if (a != b) {
        throw DefinitionError("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (def.alpha) parse(*def.alpha, "alpha");
}

std::string emit_definition(const ManifoldDefinition& def) {
  std::ostringstream out;
  auto list = [](const std::vector<std::string>& items) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s + "]";
  };
  auto rows = [&](const std::vector<std::vector<std::string>>& m, const std::string& indent) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ",\n" + indent : "") + list(m[i]);
    return s + "]";
  };
  out << "[chart]\n";
  out << "dim = " << def.dim << "\n";
  out << "coords = " << list(def.coords) << "\n";
  std::vector<std::string> bp;
  for (const auto& q : def.base_point) bp.push_back(to_string(q));
  out << "base_point = " << list(bp) << "\n";
  if (!def.generators.empty()) {
    out << "\n[generators]\n";
    for (const auto& g : def.generators) {
      out << g.name << " = { coord = " << def.coords.at(g.coord) << ", rate = " << to_string(g.rate) << " }\n";
    }
  }
  out << "\n[structure]\n";
  out << "xi = " << list(def.xi) << "\n";
  out << "eta = " << list(def.eta) << "\n";
  out << "phi = " << rows(def.phi, "       ") << "\n";
  out << "metric = " << rows(def.metric, "          ") << "\n";
  if (def.alpha) out << "alpha = " << *def.alpha << "\n";
  return out.str();
}

}  // namespace paracos

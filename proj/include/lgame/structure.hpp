#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgame/syntax.hpp"

namespace lgame {

/// Domain elements are interned ids. Declared elements are numbered from 0 in
/// declaration order; inserted elements get ids from kFreshBase upwards, so
/// sorting by id gives declaration/insertion order.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

inline constexpr Element kFreshBase = 0x80000000u;

enum class RelStatus { Positive, Negative, Undefined };
enum class RelationMode { Partial, Total };

std::string_view to_string(RelStatus status);
std::string_view to_string(RelationMode mode);

/// Positive and negative parts of a relation. In total mode `negative` stays
/// empty and every tuple outside `positive` counts as negative.
struct RelationTable {
  RelationMode mode = RelationMode::Partial;
  std::set<Tuple> positive;
  std::set<Tuple> negative;

  friend bool operator==(const RelationTable&, const RelationTable&) = default;
};

using FunctionTable = std::map<Tuple, Element>;

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partial variable assignment g. Bindings are kept sorted by variable name.
class Assignment {
 public:
  using Binding = std::pair<std::string, Element>;

  Assignment() = default;
  Assignment(std::initializer_list<Binding> bindings);

  std::optional<Element> get(std::string_view var) const;
  bool binds(std::string_view var) const { return get(var).has_value(); }

  /// g[x -> a]
  Assignment with(std::string_view var, Element value) const;
  /// Drops every pair (y, value).
  Assignment without_element(Element value) const;

  std::span<const Binding> bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// Finite model with three-valued relations, partial functions and partial
/// constants. Values are immutable; every operation returns a new structure
/// and shares unchanged relation and function tables with its source.
class PartialStructure {
 public:
  PartialStructure();
  explicit PartialStructure(Vocabulary vocab);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const std::vector<Element>& domain() const { return domain_; }
  bool contains(Element e) const;
  std::size_t domain_index(Element e) const;
  std::string element_name(Element e) const;
  std::optional<Element> find_element(std::string_view name) const;
  std::uint32_t fresh_counter() const { return fresh_counter_; }
  bool fresh_tuples_negative() const { return fresh_negative_; }

  const RelationTable& relation(std::size_t index) const { return *relations_.at(index); }
  RelStatus status(std::size_t relation, std::span<const Element> tuple) const;
  RelStatus status(std::string_view relation, std::span<const Element> tuple) const;

  const FunctionTable& function(std::size_t index) const { return *functions_.at(index); }
  std::optional<Element> function_value(std::size_t function,
                                        std::span<const Element> args) const;
  std::optional<Element> constant_value(std::size_t constant) const {
    return constants_.at(constant);
  }

  /// Adds a fresh isolated element; no table changes.
  std::pair<PartialStructure, Element> insert_element() const;
  /// Removes `u` and everything that mentions it.
  PartialStructure delete_element(Element u) const;
  /// Makes `tuple` positive regardless of its previous status.
  PartialStructure insert_tuple(std::size_t relation, Tuple tuple) const;
  /// Makes `tuple` negative (partial mode) or drops it from the positive part
  /// (total mode).
  PartialStructure delete_tuple(std::size_t relation, Tuple tuple) const;

  // Construction helpers used by the model reader and tests.
  PartialStructure with_element(std::string name) const;
  PartialStructure with_mode(std::size_t relation, RelationMode mode) const;
  PartialStructure with_status(std::size_t relation, Tuple tuple, RelStatus status) const;
  PartialStructure with_function_entry(std::size_t function, Tuple args,
                                       std::optional<Element> value) const;
  PartialStructure with_constant(std::size_t constant, std::optional<Element> value) const;
  PartialStructure with_fresh_tuples_negative(bool negative) const;
  /// Extends the vocabulary with new symbols appended after the existing ones;
  /// new relations start empty and partial.
  PartialStructure with_vocabulary(Vocabulary extended) const;

  /// Canonical byte serialization of everything that affects play.
  void append_key(std::string& out) const;

  friend bool operator==(const PartialStructure& a, const PartialStructure& b);

 private:
  void check_tuple(std::size_t relation, std::span<const Element> tuple) const;
  void check_element(Element e) const;
  bool is_fresh_tuple(std::span<const Element> tuple) const;

  std::shared_ptr<const Vocabulary> vocab_;
  std::shared_ptr<const std::vector<std::string>> names_;
  std::vector<Element> domain_;
  std::vector<std::shared_ptr<const RelationTable>> relations_;
  std::vector<std::shared_ptr<const FunctionTable>> functions_;
  std::vector<std::optional<Element>> constants_;
  std::uint32_t fresh_counter_ = 0;
  bool fresh_negative_ = false;
};

// Free-function forms of the structure operations.

/// Value of a term, or nullopt when a variable is unbound, a constant has no
/// interpretation, or a function is undefined on its arguments.
std::optional<Element> eval_term(const PartialStructure& s, const Assignment& g,
                                 const Term& t);

inline std::pair<PartialStructure, Element> insert_element(const PartialStructure& s) {
  return s.insert_element();
}
inline PartialStructure delete_element(const PartialStructure& s, Element u) {
  return s.delete_element(u);
}
PartialStructure insert_tuple(const PartialStructure& s, std::string_view relation,
                              Tuple tuple);
PartialStructure delete_tuple(const PartialStructure& s, std::string_view relation,
                              Tuple tuple);

// Model files.

class ModelError : public std::runtime_error {
 public:
  ModelError(std::string message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

struct Model {
  Vocabulary vocabulary;
  PartialStructure structure;
};

Model parse_model(std::string_view text);
std::string print_model(const PartialStructure& s);

/// "n=<k>;" followed by one section per relation, function and constant in
/// lexicographic name order. Relations: "<name>:<arity>:" then one of '+', '-'
/// or '?' per tuple over domain indices in lexicographic order, then ';'.
/// Functions: "<name>:<arity>:" then, per argument tuple, the value index or
/// '?', each followed by ':', then ';'. Constants: "<name>=<index>;" or
/// "<name>=?;".
std::string encode_model(const PartialStructure& s);

}  // namespace lgame

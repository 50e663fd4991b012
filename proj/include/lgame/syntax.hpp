#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgame {

// ---------------------------------------------------------------------------
// Vocabulary

enum class RelationKind { Declared, Auxiliary };

struct RelationSymbol {
  std::string name;
  int arity = 1;
  RelationKind kind = RelationKind::Declared;
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

struct FunctionSymbol {
  std::string name;
  int arity = 1;
  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relation, function and constant symbols. Names are unique across all
/// three categories and symbols keep their declaration order.
class Vocabulary {
 public:
  std::size_t add_relation(std::string name, int arity,
                           RelationKind kind = RelationKind::Declared);
  std::size_t add_function(std::string name, int arity);
  std::size_t add_constant(std::string name);

  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> function_index(std::string_view name) const;
  std::optional<std::size_t> constant_index(std::string_view name) const;
  bool declares(std::string_view name) const;

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  void check_fresh(std::string_view name) const;

  std::vector<RelationSymbol> relations_;
  std::vector<FunctionSymbol> functions_;
  std::vector<std::string> constants_;
};

bool is_reserved_word(std::string_view word);
bool is_identifier(std::string_view word);

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum class Kind { Variable, Constant, Apply };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string function, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::span<const Term> args() const { return args_; }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind {
  RelAtom,
  EqAtom,
  ClaimAtom,
  Not,
  WNot,
  Det,
  And,
  Or,
  Exists,
  Forall,
  InsertElem,
  DeleteElem,
  InsertTuple,
  DeleteTuple,
  Claim,
};

std::string_view to_string(FormulaKind kind);

/// Immutable formula tree. Copies share nodes.
class Formula {
 public:
  static Formula rel_atom(std::string relation, std::vector<Term> args);
  static Formula eq_atom(Term lhs, Term rhs);
  static Formula claim_atom(unsigned index);
  static Formula negation(Formula body);
  static Formula weak_negation(Formula body);
  static Formula determinacy(Formula body);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);
  static Formula insert_element(std::string var, Formula body);
  static Formula delete_element(std::string var, Formula body);
  static Formula insert_tuple(std::string relation, std::vector<std::string> vars,
                              Formula body);
  static Formula delete_tuple(std::string relation, std::vector<std::string> vars,
                              Formula body);
  static Formula claim(unsigned index, Formula body);

  FormulaKind kind() const { return node_->kind; }

  /// Relation name for atoms and tuple operators, bound variable for
  /// quantifiers and element operators, empty otherwise.
  const std::string& symbol() const { return node_->symbol; }
  std::span<const Term> terms() const { return node_->terms; }
  std::span<const std::string> variables() const { return node_->variables; }
  unsigned claim_index() const { return node_->claim_index; }
  std::span<const Formula> children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }

  /// Number of constructors in the tree.
  std::size_t size() const { return node_->size; }

  bool is_atom() const;
  bool is_fo_atom() const;

  /// True when any InsertElem/DeleteElem/InsertTuple/DeleteTuple/Claim/ClaimAtom
  /// occurs.
  bool has_game_only_constructs() const;
  bool contains(FormulaKind kind) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string symbol;
    std::vector<Term> terms;
    std::vector<std::string> variables;
    unsigned claim_index = 0;
    std::vector<Formula> children;
    std::size_t size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Well-formedness, parsing, printing

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// Checks symbol use against the vocabulary (known names, arities, variables
/// that do not clash with vocabulary names) and that `wnot`/`det` never occur
/// below an insertion, deletion or claim operator. Throws SyntaxError with
/// line/column 0 on violation.
void validate_formula(const Formula& formula, const Vocabulary& vocab);

Formula parse_formula(std::string_view text, const Vocabulary& vocab);

/// Like parse_formula, but unknown relation symbols become auxiliary
/// relations of the arity they are used with; they are added to `vocab`.
Formula parse_formula_extending(std::string_view text, Vocabulary& vocab);

std::string print_term(const Term& term);
std::string print_formula(const Formula& formula);

/// Plain-English reading of a formula where truth is read as verification:
/// negation becomes "it is falsifiable that", the insertion, deletion and
/// claim operators read as possibilities. The claim clause is rendered as
/// "it is possible to verify the claim Ci which states that ...".
std::string render_natural_language(const Formula& formula);

// ---------------------------------------------------------------------------
// Subformula table

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct TableNode {
  Formula formula;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  std::vector<std::string> free_vars;  // sorted
};

/// Every subformula occurrence of a root formula, numbered in pre-order
/// (left-to-right source order). The root is node 0.
class FormulaTable {
 public:
  const Formula& root() const { return nodes_.front().formula; }
  std::size_t size() const { return nodes_.size(); }
  bool valid(NodeId id) const { return id < nodes_.size(); }
  const TableNode& node(NodeId id) const { return nodes_.at(id); }
  const Formula& formula(NodeId id) const { return nodes_.at(id).formula; }

  /// Occurrences of `claim Ci. ...`, in source order. Empty when unbound.
  std::span<const NodeId> claim_binders(unsigned index) const;
  const std::map<unsigned, std::vector<NodeId>>& all_claim_binders() const {
    return claim_binders_;
  }

  /// Identity shared by copies of the same table; positions record it so that a
  /// position cannot be used with a table built from another formula.
  std::uint64_t id() const { return id_; }

  friend FormulaTable index_subformulas(const Formula& formula);

 private:
  FormulaTable() = default;

  std::vector<TableNode> nodes_;
  std::map<unsigned, std::vector<NodeId>> claim_binders_;
  std::uint64_t id_ = 0;
};

FormulaTable index_subformulas(const Formula& formula);

/// Pretty-prints the table's root with the subformula at `active` wrapped in
/// `[[ ]]`.
std::string print_highlighted(const FormulaTable& table, NodeId active);

}  // namespace lgame

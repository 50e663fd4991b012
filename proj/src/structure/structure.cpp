#include <algorithm>

#include "lgame/structure.hpp"

namespace lgame {

std::string_view to_string(RelStatus status) {
  switch (status) {
    case RelStatus::Positive: return "+";
    case RelStatus::Negative: return "-";
    case RelStatus::Undefined: return "?";
  }
  return "?";
}

std::string_view to_string(RelationMode mode) {
  return mode == RelationMode::Partial ? "partial" : "total";
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::initializer_list<Binding> bindings) {
  for (const auto& [var, value] : bindings) *this = with(var, value);
}

std::optional<Element> Assignment::get(std::string_view var) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                             [](const Binding& b, std::string_view v) { return b.first < v; });
  if (it == bindings_.end() || it->first != var) return std::nullopt;
  return it->second;
}

Assignment Assignment::with(std::string_view var, Element value) const {
  Assignment out = *this;
  auto it = std::lower_bound(out.bindings_.begin(), out.bindings_.end(), var,
                             [](const Binding& b, std::string_view v) { return b.first < v; });
  if (it != out.bindings_.end() && it->first == var) {
    it->second = value;
  } else {
    out.bindings_.insert(it, Binding{std::string(var), value});
  }
  return out;
}

Assignment Assignment::without_element(Element value) const {
  Assignment out = *this;
  std::erase_if(out.bindings_, [value](const Binding& b) { return b.second == value; });
  return out;
}

// ---------------------------------------------------------------------------
// PartialStructure

PartialStructure::PartialStructure() : PartialStructure(Vocabulary{}) {}

PartialStructure::PartialStructure(Vocabulary vocab)
    : vocab_(std::make_shared<const Vocabulary>(std::move(vocab))),
      names_(std::make_shared<const std::vector<std::string>>()) {
  auto empty_rel = std::make_shared<const RelationTable>();
  relations_.assign(vocab_->relations().size(), empty_rel);
  auto empty_fn = std::make_shared<const FunctionTable>();
  functions_.assign(vocab_->functions().size(), empty_fn);
  constants_.assign(vocab_->constants().size(), std::nullopt);
}

bool PartialStructure::contains(Element e) const {
  return std::binary_search(domain_.begin(), domain_.end(), e);
}

std::size_t PartialStructure::domain_index(Element e) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), e);
  if (it == domain_.end() || *it != e) throw StructureError("element not in domain");
  return static_cast<std::size_t>(it - domain_.begin());
}

std::string PartialStructure::element_name(Element e) const {
  if (e < kFreshBase) return names_->at(e);
  std::string name = "u" + std::to_string(e - kFreshBase);
  while (std::find(names_->begin(), names_->end(), name) != names_->end()) name += '_';
  return name;
}

std::optional<Element> PartialStructure::find_element(std::string_view name) const {
  for (Element e : domain_) {
    if (element_name(e) == name) return e;
  }
  return std::nullopt;
}

void PartialStructure::check_element(Element e) const {
  if (!contains(e)) throw StructureError("element not in domain");
}

void PartialStructure::check_tuple(std::size_t relation, std::span<const Element> tuple) const {
  const auto& sym = vocab_->relations().at(relation);
  if (tuple.size() != static_cast<std::size_t>(sym.arity)) {
    throw StructureError("tuple arity does not match relation '" + sym.name + "'");
  }
  for (Element e : tuple) check_element(e);
}

bool PartialStructure::is_fresh_tuple(std::span<const Element> tuple) const {
  return std::any_of(tuple.begin(), tuple.end(), [](Element e) { return e >= kFreshBase; });
}

RelStatus PartialStructure::status(std::size_t relation, std::span<const Element> tuple) const {
  const RelationTable& table = *relations_.at(relation);
  const Tuple key(tuple.begin(), tuple.end());
  if (table.positive.contains(key)) return RelStatus::Positive;
  if (table.mode == RelationMode::Total) return RelStatus::Negative;
  if (table.negative.contains(key)) return RelStatus::Negative;
  if (fresh_negative_ && is_fresh_tuple(tuple)) return RelStatus::Negative;
  return RelStatus::Undefined;
}

RelStatus PartialStructure::status(std::string_view relation,
                                   std::span<const Element> tuple) const {
  auto idx = vocab_->relation_index(relation);
  if (!idx) throw StructureError("unknown relation '" + std::string(relation) + "'");
  return status(*idx, tuple);
}

std::optional<Element> PartialStructure::function_value(std::size_t function,
                                                        std::span<const Element> args) const {
  const auto& table = *functions_.at(function);
  auto it = table.find(Tuple(args.begin(), args.end()));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::pair<PartialStructure, Element> PartialStructure::insert_element() const {
  PartialStructure out = *this;
  const Element fresh = kFreshBase + out.fresh_counter_++;
  out.domain_.push_back(fresh);
  return {std::move(out), fresh};
}

PartialStructure PartialStructure::delete_element(Element u) const {
  check_element(u);
  PartialStructure out = *this;
  out.domain_.erase(std::lower_bound(out.domain_.begin(), out.domain_.end(), u));

  auto mentions = [u](const Tuple& t) { return std::find(t.begin(), t.end(), u) != t.end(); };
  for (auto& rel : out.relations_) {
    const bool hit = std::any_of(rel->positive.begin(), rel->positive.end(), mentions) ||
                     std::any_of(rel->negative.begin(), rel->negative.end(), mentions);
    if (!hit) continue;
    auto copy = std::make_shared<RelationTable>(*rel);
    std::erase_if(copy->positive, mentions);
    std::erase_if(copy->negative, mentions);
    rel = std::move(copy);
  }
  for (auto& fn : out.functions_) {
    auto dead = [&](const FunctionTable::value_type& entry) {
      return entry.second == u || mentions(entry.first);
    };
    if (std::none_of(fn->begin(), fn->end(), dead)) continue;
    auto copy = std::make_shared<FunctionTable>(*fn);
    std::erase_if(*copy, dead);
    fn = std::move(copy);
  }
  for (auto& c : out.constants_) {
    if (c == u) c.reset();
  }
  return out;
}

PartialStructure PartialStructure::insert_tuple(std::size_t relation, Tuple tuple) const {
  check_tuple(relation, tuple);
  PartialStructure out = *this;
  auto copy = std::make_shared<RelationTable>(*relations_[relation]);
  copy->negative.erase(tuple);
  copy->positive.insert(std::move(tuple));
  out.relations_[relation] = std::move(copy);
  return out;
}

PartialStructure PartialStructure::delete_tuple(std::size_t relation, Tuple tuple) const {
  check_tuple(relation, tuple);
  PartialStructure out = *this;
  auto copy = std::make_shared<RelationTable>(*relations_[relation]);
  copy->positive.erase(tuple);
  if (copy->mode == RelationMode::Partial) copy->negative.insert(std::move(tuple));
  out.relations_[relation] = std::move(copy);
  return out;
}

PartialStructure PartialStructure::with_element(std::string name) const {
  if (fresh_counter_ != 0) {
    throw StructureError("declared elements must precede inserted ones");
  }
  if (!is_identifier(name)) throw StructureError("invalid element name '" + name + "'");
  if (std::find(names_->begin(), names_->end(), name) != names_->end()) {
    throw StructureError("element '" + name + "' declared twice");
  }
  PartialStructure out = *this;
  auto names = std::make_shared<std::vector<std::string>>(*names_);
  const auto id = static_cast<Element>(names->size());
  names->push_back(std::move(name));
  out.names_ = std::move(names);
  out.domain_.insert(std::upper_bound(out.domain_.begin(), out.domain_.end(), id), id);
  return out;
}

PartialStructure PartialStructure::with_mode(std::size_t relation, RelationMode mode) const {
  PartialStructure out = *this;
  auto copy = std::make_shared<RelationTable>(*relations_.at(relation));
  copy->mode = mode;
  if (mode == RelationMode::Total) copy->negative.clear();
  out.relations_[relation] = std::move(copy);
  return out;
}

PartialStructure PartialStructure::with_status(std::size_t relation, Tuple tuple,
                                               RelStatus status) const {
  check_tuple(relation, tuple);
  PartialStructure out = *this;
  auto copy = std::make_shared<RelationTable>(*relations_[relation]);
  copy->positive.erase(tuple);
  copy->negative.erase(tuple);
  if (status == RelStatus::Positive) {
    copy->positive.insert(std::move(tuple));
  } else if (status == RelStatus::Negative) {
    if (copy->mode == RelationMode::Partial) copy->negative.insert(std::move(tuple));
  } else if (copy->mode == RelationMode::Total) {
    throw StructureError("total relations have no undefined tuples");
  }
  out.relations_[relation] = std::move(copy);
  return out;
}

PartialStructure PartialStructure::with_function_entry(std::size_t function, Tuple args,
                                                       std::optional<Element> value) const {
  const auto& sym = vocab_->functions().at(function);
  if (args.size() != static_cast<std::size_t>(sym.arity)) {
    throw StructureError("argument count does not match function '" + sym.name + "'");
  }
  for (Element e : args) check_element(e);
  PartialStructure out = *this;
  auto copy = std::make_shared<FunctionTable>(*functions_[function]);
  if (value) {
    check_element(*value);
    (*copy)[std::move(args)] = *value;
  } else {
    copy->erase(args);
  }
  out.functions_[function] = std::move(copy);
  return out;
}

PartialStructure PartialStructure::with_constant(std::size_t constant,
                                                 std::optional<Element> value) const {
  if (value) check_element(*value);
  PartialStructure out = *this;
  out.constants_.at(constant) = value;
  return out;
}

PartialStructure PartialStructure::with_fresh_tuples_negative(bool negative) const {
  PartialStructure out = *this;
  out.fresh_negative_ = negative;
  return out;
}

PartialStructure PartialStructure::with_vocabulary(Vocabulary extended) const {
  const Vocabulary& cur = *vocab_;
  auto prefix = [](const auto& a, const auto& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
  };
  auto same_rel = [](const RelationSymbol& a, const RelationSymbol& b) {
    return a.name == b.name && a.arity == b.arity && a.kind == b.kind;
  };
  auto same_fn = [](const FunctionSymbol& a, const FunctionSymbol& b) {
    return a.name == b.name && a.arity == b.arity;
  };
  if (cur.relations().size() > extended.relations().size() ||
      !std::equal(cur.relations().begin(), cur.relations().end(),
                  extended.relations().begin(), same_rel) ||
      cur.functions().size() > extended.functions().size() ||
      !std::equal(cur.functions().begin(), cur.functions().end(),
                  extended.functions().begin(), same_fn) ||
      !prefix(cur.constants(), extended.constants())) {
    throw StructureError("vocabulary is not an extension of the current one");
  }
  PartialStructure out = *this;
  out.relations_.resize(extended.relations().size(), std::make_shared<const RelationTable>());
  out.functions_.resize(extended.functions().size(), std::make_shared<const FunctionTable>());
  out.constants_.resize(extended.constants().size());
  out.vocab_ = std::make_shared<const Vocabulary>(std::move(extended));
  return out;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_tuples(std::string& out, const std::set<Tuple>& tuples) {
  put_u32(out, static_cast<std::uint32_t>(tuples.size()));
  for (const auto& t : tuples) {
    for (Element e : t) put_u32(out, e);
  }
}

}  // namespace

void PartialStructure::append_key(std::string& out) const {
  put_u32(out, static_cast<std::uint32_t>(domain_.size()));
  for (Element e : domain_) put_u32(out, e);
  put_u32(out, fresh_counter_);
  for (const auto& rel : relations_) {
    put_tuples(out, rel->positive);
    put_tuples(out, rel->negative);
  }
  for (const auto& fn : functions_) {
    put_u32(out, static_cast<std::uint32_t>(fn->size()));
    for (const auto& [args, value] : *fn) {
      for (Element e : args) put_u32(out, e);
      put_u32(out, value);
    }
  }
  for (const auto& c : constants_) put_u32(out, c ? *c : 0xffffffffu);
}

bool operator==(const PartialStructure& a, const PartialStructure& b) {
  if (a.domain_ != b.domain_ || a.fresh_counter_ != b.fresh_counter_ ||
      a.fresh_negative_ != b.fresh_negative_ || a.constants_ != b.constants_ ||
      *a.names_ != *b.names_ || *a.vocab_ != *b.vocab_) {
    return false;
  }
  for (std::size_t i = 0; i < a.relations_.size(); ++i) {
    if (a.relations_[i] != b.relations_[i] && *a.relations_[i] != *b.relations_[i]) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.functions_.size(); ++i) {
    if (a.functions_[i] != b.functions_[i] && *a.functions_[i] != *b.functions_[i]) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free functions

std::optional<Element> eval_term(const PartialStructure& s, const Assignment& g,
                                 const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return g.get(t.name());
    case Term::Kind::Constant: {
      auto idx = s.vocabulary().constant_index(t.name());
      if (!idx) return std::nullopt;
      return s.constant_value(*idx);
    }
    case Term::Kind::Apply: {
      auto idx = s.vocabulary().function_index(t.name());
      if (!idx) return std::nullopt;
      Tuple args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) {
        auto v = eval_term(s, g, a);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      return s.function_value(*idx, args);
    }
  }
  return std::nullopt;
}

PartialStructure insert_tuple(const PartialStructure& s, std::string_view relation,
                              Tuple tuple) {
  auto idx = s.vocabulary().relation_index(relation);
  if (!idx) throw StructureError("unknown relation '" + std::string(relation) + "'");
  return s.insert_tuple(*idx, std::move(tuple));
}

PartialStructure delete_tuple(const PartialStructure& s, std::string_view relation,
                              Tuple tuple) {
  auto idx = s.vocabulary().relation_index(relation);
  if (!idx) throw StructureError("unknown relation '" + std::string(relation) + "'");
  return s.delete_tuple(*idx, std::move(tuple));
}

}  // namespace lgame

#include "lgame/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace lgame {

namespace {

constexpr std::array kReserved = {
    std::string_view{"not"},    std::string_view{"wnot"},   std::string_view{"det"},
    std::string_view{"exists"}, std::string_view{"forall"}, std::string_view{"insert"},
    std::string_view{"delete"}, std::string_view{"insertT"}, std::string_view{"deleteT"},
    std::string_view{"claim"},
};

bool is_claim_name(std::string_view word) {
  return word.size() >= 2 && word[0] == 'C' &&
         std::all_of(word.begin() + 1, word.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

template <class Seq, class Proj>
std::optional<std::size_t> find_index(const Seq& seq, std::string_view name, Proj proj) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (proj(seq[i]) == name) return i;
  }
  return std::nullopt;
}

}  // namespace

bool is_reserved_word(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end() ||
         is_claim_name(word);
}

bool is_identifier(std::string_view word) {
  if (word.empty()) return false;
  auto head = static_cast<unsigned char>(word[0]);
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(word.begin(), word.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

void Vocabulary::check_fresh(std::string_view name) const {
  if (!is_identifier(name)) {
    throw VocabularyError("invalid symbol name '" + std::string(name) + "'");
  }
  if (is_reserved_word(name)) {
    throw VocabularyError("symbol name '" + std::string(name) + "' is reserved");
  }
  if (declares(name)) {
    throw VocabularyError("symbol '" + std::string(name) + "' declared twice");
  }
}

std::size_t Vocabulary::add_relation(std::string name, int arity, RelationKind kind) {
  check_fresh(name);
  if (arity < 1) throw VocabularyError("relation '" + name + "' needs arity >= 1");
  relations_.push_back({std::move(name), arity, kind});
  return relations_.size() - 1;
}

std::size_t Vocabulary::add_function(std::string name, int arity) {
  check_fresh(name);
  if (arity < 1) throw VocabularyError("function '" + name + "' needs arity >= 1");
  functions_.push_back({std::move(name), arity});
  return functions_.size() - 1;
}

std::size_t Vocabulary::add_constant(std::string name) {
  check_fresh(name);
  constants_.push_back(std::move(name));
  return constants_.size() - 1;
}

std::optional<std::size_t> Vocabulary::relation_index(std::string_view name) const {
  return find_index(relations_, name, [](const RelationSymbol& r) -> const std::string& {
    return r.name;
  });
}

std::optional<std::size_t> Vocabulary::function_index(std::string_view name) const {
  return find_index(functions_, name, [](const FunctionSymbol& f) -> const std::string& {
    return f.name;
  });
}

std::optional<std::size_t> Vocabulary::constant_index(std::string_view name) const {
  return find_index(constants_, name, [](const std::string& c) -> const std::string& {
    return c;
  });
}

bool Vocabulary::declares(std::string_view name) const {
  return relation_index(name) || function_index(name) || constant_index(name);
}

}  // namespace lgame

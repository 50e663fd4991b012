#include <cctype>
#include <sstream>

#include "lgame/structure.hpp"

namespace lgame {

ModelError::ModelError(std::string message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  for (int number = 1;; ++number) {
    const auto nl = text.find('\n', start);
    std::string_view raw =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

// "R/2" -> ("R", 2)
std::pair<std::string, int> symbol_with_arity(std::string_view word, int line) {
  auto slash = word.find('/');
  if (slash == std::string_view::npos) {
    throw ModelError("expected NAME/ARITY, found '" + std::string(word) + "'", line);
  }
  std::string name(word.substr(0, slash));
  std::string digits(word.substr(slash + 1));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](unsigned char c) { return std::isdigit(c); })) {
    throw ModelError("bad arity in '" + std::string(word) + "'", line);
  }
  return {name, std::stoi(digits)};
}

// Parses "(a,b) (c,d)" into element-name tuples.
std::vector<std::vector<std::string>> tuple_list(std::string_view s, int line) {
  std::vector<std::vector<std::string>> out;
  s = trim(s);
  while (!s.empty()) {
    if (s.front() != '(') throw ModelError("expected '(' to start a tuple", line);
    auto close = s.find(')');
    if (close == std::string_view::npos) throw ModelError("unterminated tuple", line);
    std::vector<std::string> names;
    std::string_view inner = s.substr(1, close - 1);
    while (true) {
      auto comma = inner.find(',');
      std::string_view item = trim(inner.substr(0, comma));
      if (item.empty()) throw ModelError("empty tuple component", line);
      names.emplace_back(item);
      if (comma == std::string_view::npos) break;
      inner = inner.substr(comma + 1);
    }
    out.push_back(std::move(names));
    s = trim(s.substr(close + 1));
  }
  return out;
}

struct Reader {
  Vocabulary vocab;
  std::vector<std::string> elements;
  std::vector<std::pair<std::size_t, RelationMode>> modes;

  void declarations(const std::vector<Line>& lines) {
    bool have_domain = false;
    for (const auto& [number, text] : lines) {
      auto words = split_words(text);
      const std::string& head = words.front();
      try {
        if (head == "domain:" || head.rfind("domain:", 0) == 0) {
          if (have_domain) throw ModelError("domain declared twice", number);
          have_domain = true;
          std::string rest(trim(text.substr(text.find(':') + 1)));
          for (auto& w : split_words(rest)) {
            if (!is_identifier(w)) throw ModelError("invalid element name '" + w + "'", number);
            if (std::find(elements.begin(), elements.end(), w) != elements.end()) {
              throw ModelError("element '" + w + "' declared twice", number);
            }
            elements.push_back(w);
          }
        } else if (head == "relation" || head == "aux") {
          if (words.size() < 2 || words.size() > 3) {
            throw ModelError("expected '" + head + " NAME/ARITY [partial|total]'", number);
          }
          auto [name, arity] = symbol_with_arity(words[1], number);
          RelationMode mode = RelationMode::Partial;
          if (words.size() == 3) {
            if (words[2] == "total") {
              mode = RelationMode::Total;
            } else if (words[2] != "partial") {
              throw ModelError("unknown relation mode '" + words[2] + "'", number);
            }
          }
          auto idx = vocab.add_relation(name, arity,
                                        head == "aux" ? RelationKind::Auxiliary
                                                      : RelationKind::Declared);
          modes.emplace_back(idx, mode);
        } else if (head == "function") {
          if (words.size() != 2) throw ModelError("expected 'function NAME/ARITY:'", number);
          std::string sym = words[1];
          if (!sym.empty() && sym.back() == ':') sym.pop_back();
          auto [name, arity] = symbol_with_arity(sym, number);
          vocab.add_function(name, arity);
        } else if (head == "constant") {
          auto eq = text.find('=');
          std::string name(trim(text.substr(8, eq == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : eq - 8)));
          vocab.add_constant(name);
        } else if (head[0] != '+' && head[0] != '-' && head[0] != '(') {
          throw ModelError("unrecognized line '" + std::string(text) + "'", number);
        }
      } catch (const VocabularyError& e) {
        throw ModelError(e.what(), number);
      }
    }
  }

  Element element(const std::string& name, int line) const {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end()) throw ModelError("unknown element '" + name + "'", line);
    return static_cast<Element>(it - elements.begin());
  }

  Tuple tuple(const std::vector<std::string>& names, int line) const {
    Tuple t;
    for (const auto& n : names) t.push_back(element(n, line));
    return t;
  }

  PartialStructure tables(const std::vector<Line>& lines) const {
    PartialStructure s(vocab);
    for (const auto& e : elements) s = s.with_element(e);
    for (auto [idx, mode] : modes) s = s.with_mode(idx, mode);

    enum class Block { None, Relation, Function } block = Block::None;
    std::size_t current = 0;
    for (const auto& [number, text] : lines) {
      auto words = split_words(text);
      const std::string& head = words.front();
      try {
        if (head == "relation" || head == "aux") {
          block = Block::Relation;
          current = *vocab.relation_index(symbol_with_arity(words[1], number).first);
        } else if (head == "function") {
          block = Block::Function;
          std::string sym = words[1];
          if (sym.back() == ':') sym.pop_back();
          current = *vocab.function_index(symbol_with_arity(sym, number).first);
        } else if (head == "constant") {
          block = Block::None;
          auto eq = text.find('=');
          std::string name(trim(text.substr(8, eq == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : eq - 8)));
          std::optional<Element> value;
          if (eq != std::string_view::npos) {
            std::string v(trim(text.substr(eq + 1)));
            if (v != "undef") value = element(v, number);
          }
          s = s.with_constant(*vocab.constant_index(name), value);
        } else if (head[0] == '+' || head[0] == '-') {
          if (block != Block::Relation) {
            throw ModelError("tuple list outside a relation block", number);
          }
          const bool positive = head[0] == '+';
          const auto& rel = s.relation(current);
          if (!positive && rel.mode == RelationMode::Total) {
            throw ModelError("total relation '" + vocab.relations()[current].name +
                                 "' cannot list negative tuples",
                             number);
          }
          for (const auto& names : tuple_list(text.substr(1), number)) {
            Tuple t = tuple(names, number);
            if (t.size() != static_cast<std::size_t>(vocab.relations()[current].arity)) {
              throw ModelError("arity mismatch in tuple for '" +
                                   vocab.relations()[current].name + "'",
                               number);
            }
            const RelStatus before = s.status(current, t);
            const bool listed_other = positive ? s.relation(current).negative.contains(t)
                                               : before == RelStatus::Positive;
            if (listed_other) {
              throw ModelError("tuple listed as both positive and negative", number);
            }
            s = s.with_status(current, std::move(t),
                              positive ? RelStatus::Positive : RelStatus::Negative);
          }
        } else if (head[0] == '(') {
          if (block != Block::Function) {
            throw ModelError("function entry outside a function block", number);
          }
          auto arrow = text.find("->");
          if (arrow == std::string_view::npos) throw ModelError("expected '->'", number);
          auto args = tuple_list(text.substr(0, arrow), number);
          if (args.size() != 1) throw ModelError("expected one argument tuple", number);
          Tuple t = tuple(args.front(), number);
          if (t.size() != static_cast<std::size_t>(vocab.functions()[current].arity)) {
            throw ModelError("arity mismatch in entry for '" +
                                 vocab.functions()[current].name + "'",
                             number);
          }
          std::string v(trim(text.substr(arrow + 2)));
          std::optional<Element> value;
          if (v != "undef") value = element(v, number);
          auto existing = s.function_value(current, t);
          if (existing && existing != value) {
            throw ModelError("conflicting entries for the same arguments", number);
          }
          s = s.with_function_entry(current, std::move(t), value);
        } else {
          block = Block::None;
        }
      } catch (const StructureError& e) {
        throw ModelError(e.what(), number);
      }
    }
    return s;
  }
};

std::string tuple_text(const PartialStructure& s, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += s.element_name(t[i]);
  }
  return out + ")";
}

}  // namespace

Model parse_model(std::string_view text) {
  auto lines = logical_lines(text);
  Reader reader;
  reader.declarations(lines);
  PartialStructure s = reader.tables(lines);
  return Model{reader.vocab, std::move(s)};
}

std::string print_model(const PartialStructure& s) {
  std::ostringstream out;
  const Vocabulary& v = s.vocabulary();
  out << "domain:";
  for (Element e : s.domain()) out << ' ' << s.element_name(e);
  out << '\n';
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const auto& sym = v.relations()[r];
    const auto& table = s.relation(r);
    out << (sym.kind == RelationKind::Auxiliary ? "aux " : "relation ") << sym.name << '/'
        << sym.arity << ' ' << to_string(table.mode) << '\n';
    if (!table.positive.empty()) {
      out << "  +";
      for (const auto& t : table.positive) out << ' ' << tuple_text(s, t);
      out << '\n';
    }
    if (!table.negative.empty()) {
      out << "  -";
      for (const auto& t : table.negative) out << ' ' << tuple_text(s, t);
      out << '\n';
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    out << "function " << v.functions()[f].name << '/' << v.functions()[f].arity << ":\n";
    for (const auto& [args, value] : s.function(f)) {
      out << "  " << tuple_text(s, args) << " -> " << s.element_name(value) << '\n';
    }
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    auto value = s.constant_value(c);
    out << "constant " << v.constants()[c] << " = "
        << (value ? s.element_name(*value) : std::string("undef")) << '\n';
  }
  return out.str();
}

}  // namespace lgame

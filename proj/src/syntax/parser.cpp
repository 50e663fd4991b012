#include <functional>

#include "lexer.hpp"
#include "lgame/syntax.hpp"

namespace lgame {

namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  Parser(std::string_view text, const Vocabulary& vocab, Vocabulary* extend)
      : tokens_(detail::tokenize(text)), vocab_(vocab), extend_(extend) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw SyntaxError(message, at.line, at.column);
  }

  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) {
      const Token& t = peek();
      fail(t, "expected " + std::string(what) + " but found " +
                  (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"));
    }
    return next();
  }

  const Vocabulary& vocab() const { return extend_ ? *extend_ : vocab_; }

  std::string variable_name(std::string_view what) {
    const Token& t = expect(Tok::Ident, what);
    if (vocab().declares(t.text)) {
      fail(t, "'" + t.text + "' is a vocabulary symbol, not a variable");
    }
    return t.text;
  }

  Formula under_game_operator(const std::function<Formula()>& body) {
    ++game_depth_;
    Formula f = body();
    --game_depth_;
    return f;
  }

  Formula formula() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Formula::negation(formula());
      case Tok::WNot:
      case Tok::Det: {
        if (game_depth_ > 0) {
          fail(t, "'" + t.text +
                      "' may not occur below an insertion, deletion or claim operator");
        }
        next();
        Formula body = formula();
        return t.kind == Tok::WNot ? Formula::weak_negation(std::move(body))
                                   : Formula::determinacy(std::move(body));
      }
      case Tok::Exists:
      case Tok::Forall:
      case Tok::Insert:
      case Tok::Delete: {
        const Tok kind = next().kind;
        std::string var = variable_name("a variable");
        expect(Tok::Dot, "'.'");
        switch (kind) {
          case Tok::Exists: return Formula::exists(std::move(var), formula());
          case Tok::Forall: return Formula::forall(std::move(var), formula());
          case Tok::Insert:
            return Formula::insert_element(std::move(var),
                                           under_game_operator([&] { return formula(); }));
          default:
            return Formula::delete_element(std::move(var),
                                           under_game_operator([&] { return formula(); }));
        }
      }
      case Tok::InsertT:
      case Tok::DeleteT: {
        const Tok kind = next().kind;
        const Token& rel = expect(Tok::Ident, "a relation name");
        expect(Tok::LParen, "'('");
        std::vector<std::string> vars;
        vars.push_back(variable_name("a variable"));
        while (peek().kind == Tok::Comma) {
          next();
          vars.push_back(variable_name("a variable"));
        }
        expect(Tok::RParen, "')'");
        check_relation(rel, vars.size());
        expect(Tok::Dot, "'.'");
        Formula body = under_game_operator([&] { return formula(); });
        return kind == Tok::InsertT
                   ? Formula::insert_tuple(rel.text, std::move(vars), std::move(body))
                   : Formula::delete_tuple(rel.text, std::move(vars), std::move(body));
      }
      case Tok::ClaimKw: {
        next();
        const Token& c = expect(Tok::Claim, "a claim name such as C0");
        unsigned index = claim_number(c);
        expect(Tok::Dot, "'.'");
        return Formula::claim(index, under_game_operator([&] { return formula(); }));
      }
      case Tok::LParen: {
        next();
        Formula lhs = formula();
        const Token& op = peek();
        if (op.kind != Tok::Amp && op.kind != Tok::Bar) {
          fail(op, "expected '&' or '|' in parenthesized formula");
        }
        next();
        Formula rhs = formula();
        expect(Tok::RParen, "')'");
        return op.kind == Tok::Amp ? Formula::conjunction(std::move(lhs), std::move(rhs))
                                   : Formula::disjunction(std::move(lhs), std::move(rhs));
      }
      case Tok::Claim:
        return Formula::claim_atom(claim_number(next()));
      case Tok::Ident:
        return atom();
      default:
        fail(t, t.kind == Tok::End ? "expected a formula but input ended"
                                   : "expected a formula but found '" + t.text + "'");
    }
  }

  static unsigned claim_number(const Token& t) {
    try {
      return static_cast<unsigned>(std::stoul(t.text.substr(1)));
    } catch (const std::exception&) {
      fail(t, "claim index out of range");
    }
  }

  void check_relation(const Token& name, std::size_t arity) {
    if (auto idx = vocab().relation_index(name.text)) {
      int expected = vocab().relations()[*idx].arity;
      if (static_cast<std::size_t>(expected) != arity) {
        fail(name, "relation '" + name.text + "' has arity " + std::to_string(expected) +
                       ", used with " + std::to_string(arity) + " arguments");
      }
      return;
    }
    if (vocab().declares(name.text)) fail(name, "'" + name.text + "' is not a relation");
    if (!extend_) fail(name, "unknown symbol '" + name.text + "'");
    extend_->add_relation(name.text, static_cast<int>(arity), RelationKind::Auxiliary);
  }

  std::vector<Term> argument_list() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  Term application(const Token& name, std::vector<Term> args) {
    auto idx = vocab().function_index(name.text);
    if (!idx) {
      if (vocab().declares(name.text)) fail(name, "'" + name.text + "' is not a function");
      fail(name, "unknown symbol '" + name.text + "'");
    }
    int expected = vocab().functions()[*idx].arity;
    if (static_cast<std::size_t>(expected) != args.size()) {
      fail(name, "function '" + name.text + "' has arity " + std::to_string(expected) +
                     ", used with " + std::to_string(args.size()) + " arguments");
    }
    return Term::apply(name.text, std::move(args));
  }

  Term simple_term(const Token& name) {
    if (vocab().constant_index(name.text)) return Term::constant(name.text);
    if (vocab().declares(name.text)) {
      fail(name, "'" + name.text + "' needs arguments");
    }
    return Term::variable(name.text);
  }

  Term term() {
    const Token& name = expect(Tok::Ident, "a term");
    if (peek().kind == Tok::LParen) {
      auto args = argument_list();
      return application(name, std::move(args));
    }
    return simple_term(name);
  }

  Formula atom() {
    const Token& name = next();
    if (peek().kind == Tok::LParen) {
      auto args = argument_list();
      if (peek().kind == Tok::Equals) {
        Term lhs = application(name, std::move(args));
        next();
        return Formula::eq_atom(std::move(lhs), term());
      }
      check_relation(name, args.size());
      return Formula::rel_atom(name.text, std::move(args));
    }
    Term lhs = simple_term(name);
    expect(Tok::Equals, "'=' or '('");
    return Formula::eq_atom(std::move(lhs), term());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Vocabulary& vocab_;
  Vocabulary* extend_;
  int game_depth_ = 0;
};

void validate_term(const Term& t, const Vocabulary& vocab) {
  auto bad = [](const std::string& m) { throw SyntaxError(m, 0, 0); };
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!is_identifier(t.name()) || is_reserved_word(t.name())) {
        bad("invalid variable name '" + t.name() + "'");
      }
      if (vocab.declares(t.name())) bad("'" + t.name() + "' is a vocabulary symbol");
      return;
    case Term::Kind::Constant:
      if (!vocab.constant_index(t.name())) bad("unknown constant '" + t.name() + "'");
      return;
    case Term::Kind::Apply: {
      auto idx = vocab.function_index(t.name());
      if (!idx) bad("unknown function '" + t.name() + "'");
      if (static_cast<std::size_t>(vocab.functions()[*idx].arity) != t.args().size()) {
        bad("arity mismatch for function '" + t.name() + "'");
      }
      for (const auto& a : t.args()) validate_term(a, vocab);
      return;
    }
  }
}

void validate_rec(const Formula& f, const Vocabulary& vocab, bool under_game) {
  auto bad = [](const std::string& m) { throw SyntaxError(m, 0, 0); };
  auto check_var = [&](const std::string& v) {
    validate_term(Term::variable(v), vocab);
  };
  auto check_rel = [&](const std::string& r, std::size_t arity) {
    auto idx = vocab.relation_index(r);
    if (!idx) bad("unknown relation '" + r + "'");
    if (static_cast<std::size_t>(vocab.relations()[*idx].arity) != arity) {
      bad("arity mismatch for relation '" + r + "'");
    }
  };
  switch (f.kind()) {
    case FormulaKind::RelAtom:
      check_rel(f.symbol(), f.terms().size());
      for (const auto& t : f.terms()) validate_term(t, vocab);
      return;
    case FormulaKind::EqAtom:
      for (const auto& t : f.terms()) validate_term(t, vocab);
      return;
    case FormulaKind::ClaimAtom:
      return;
    case FormulaKind::WNot:
    case FormulaKind::Det:
      if (under_game) {
        bad(std::string(to_string(f.kind())) +
            " may not occur below an insertion, deletion or claim operator");
      }
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      check_var(f.symbol());
      break;
    case FormulaKind::InsertElem:
    case FormulaKind::DeleteElem:
      check_var(f.symbol());
      under_game = true;
      break;
    case FormulaKind::InsertTuple:
    case FormulaKind::DeleteTuple:
      check_rel(f.symbol(), f.variables().size());
      for (const auto& v : f.variables()) check_var(v);
      under_game = true;
      break;
    case FormulaKind::Claim:
      under_game = true;
      break;
    default:
      break;
  }
  for (const auto& c : f.children()) validate_rec(c, vocab, under_game);
}

}  // namespace

void validate_formula(const Formula& formula, const Vocabulary& vocab) {
  validate_rec(formula, vocab, false);
}

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  return Parser(text, vocab, nullptr).parse();
}

Formula parse_formula_extending(std::string_view text, Vocabulary& vocab) {
  // Work on a copy so a failed parse leaves the caller's vocabulary untouched.
  Vocabulary scratch = vocab;
  Formula f = Parser(text, scratch, &scratch).parse();
  vocab = std::move(scratch);
  return f;
}

}  // namespace lgame

#include "lexer.hpp"

#include <cctype>
#include <unordered_map>

#include "lgame/syntax.hpp"

namespace lgame::detail {

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"not", Tok::Not},         {"wnot", Tok::WNot},     {"det", Tok::Det},
      {"exists", Tok::Exists},   {"forall", Tok::Forall}, {"insert", Tok::Insert},
      {"delete", Tok::Delete},   {"insertT", Tok::InsertT}, {"deleteT", Tok::DeleteT},
      {"claim", Tok::ClaimKw},
  };
  return table;
}

bool is_claim_token(std::string_view word) {
  if (word.size() < 2 || word[0] != 'C') return false;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(word[i]))) return false;
  }
  return true;
}

}  // namespace

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Claim: return "claim name";
    case Tok::Not: return "'not'";
    case Tok::WNot: return "'wnot'";
    case Tok::Det: return "'det'";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::Insert: return "'insert'";
    case Tok::Delete: return "'delete'";
    case Tok::InsertT: return "'insertT'";
    case Tok::DeleteT: return "'deleteT'";
    case Tok::ClaimKw: return "'claim'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const int tl = line;
    const int tc = column;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (auto it = keywords().find(word); it != keywords().end()) {
        kind = it->second;
      } else if (is_claim_token(word)) {
        kind = Tok::Claim;
      }
      out.push_back({kind, std::move(word), tl, tc});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw SyntaxError("unexpected character '" + std::string(1, text[i]) + "'", tl, tc);
    }
    out.push_back({kind, std::string(1, text[i]), tl, tc});
    advance(1);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

}  // namespace lgame::detail

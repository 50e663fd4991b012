#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lgame::detail {

enum class Tok {
  Ident,
  Claim,
  Not,
  WNot,
  Det,
  Exists,
  Forall,
  Insert,
  Delete,
  InsertT,
  DeleteT,
  ClaimKw,
  LParen,
  RParen,
  Comma,
  Dot,
  Amp,
  Bar,
  Equals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string_view describe(Tok kind);

/// Splits formula text into tokens; throws SyntaxError on an unexpected
/// character.
std::vector<Token> tokenize(std::string_view text);

}  // namespace lgame::detail

#pragma once

#include <stdexcept>

#include "lgame/structure.hpp"
#include "lgame/syntax.hpp"

namespace lgame {

/// Outcome of the two judgments M,g |=+ phi and M,g |=- phi.
struct TruthStatus {
  bool plus = false;
  bool minus = false;

  friend bool operator==(const TruthStatus&, const TruthStatus&) = default;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compositional semantics of first-order logic over partial structures, with
/// weak negation and the determinacy operator.
///
/// Atoms need every term defined (and, for relations, the tuple's status
/// defined) to hold either way. Conjunction holds positively when both
/// conjuncts do and negatively when either does; disjunction and the universal
/// quantifier are the duals. Quantifiers range over the current domain, so on
/// an empty domain `exists` is vacuously false and its negative judgment
/// vacuously true. `wnot` flips each judgment independently; `det` holds
/// positively exactly when its body is determined.
///
/// Throws EvaluationError if the formula contains insertion, deletion or
/// claim constructs; those only have a game semantics.
TruthStatus evaluate(const PartialStructure& s, const Assignment& g, const Formula& phi);

}  // namespace lgame

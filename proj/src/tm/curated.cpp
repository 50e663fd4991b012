#include "lgame/tm.hpp"

namespace lgame {

// Each machine reads the encoding produced by encode_model, which starts with
// "n=<domain size>;" and lists relation statuses in lexicographic tuple order.

const std::vector<CuratedPair>& curated_pairs() {
  static const std::vector<CuratedPair> pairs{
      {
          "empty-domain",
          R"(states: q0 q1 q2 yes no
start: q0
accept: yes
reject: no
delta: (q0,n) -> (q1,n,R)
delta: (q1,=) -> (q2,=,R)
delta: (q2,0) -> (yes,0,R)
delta: (q2,*) -> (no,*,R)
)",
          "not exists x. x = x",
          "",
          "Sizes are written without leading zeros, so the first digit is 0 exactly when the "
          "domain is empty. The formula hands the witness choice to Abelard, who wins at the "
          "true atom x = x whenever there is an element, and loses on the empty domain.",
      },
      {
          "reject-all",
          R"(states: q0 yes
start: q0
accept: yes
reject: q0
)",
          "exists x. not x = x",
          "",
          "The machine starts in its reject state. Whatever witness Eloise names, the negation "
          "makes Abelard the verifier of a true equality, and on the empty domain Eloise has no "
          "witness at all.",
      },
      {
          "truth-teller",
          R"(states: q0 q1 yes no
start: q0
accept: yes
reject: no
delta: (q0,*) -> (q1,*,R)
delta: (q1,*) -> (q0,*,L)
)",
          "claim C0. C0",
          "",
          "The machine steps right and back forever, returning to its start configuration "
          "after two steps. The game alternates between the claim and its only atom and never "
          "reaches a terminal.",
      },
      {
          "some-positive",
          R"(states: skip1 skip2 scan undecided loop1 loop2 yes no
start: skip1
accept: yes
reject: no
# "n=<k>;R:1:" precedes the statuses of R
delta: (skip1,:) -> (skip2,:,R)
delta: (skip1,*) -> (skip1,*,R)
delta: (skip2,:) -> (scan,:,R)
delta: (skip2,*) -> (skip2,*,R)
delta: (scan,+) -> (yes,+,R)
delta: (scan,-) -> (scan,-,R)
delta: (scan,?) -> (undecided,?,R)
delta: (scan,;) -> (no,;,R)
delta: (undecided,+) -> (yes,+,R)
delta: (undecided,;) -> (loop1,;,R)
delta: (undecided,*) -> (undecided,*,R)
delta: (loop1,*) -> (loop2,*,R)
delta: (loop2,*) -> (loop1,*,L)
)",
          "exists x. R(x)",
          "relation R/1 partial\n",
          "Eloise wins by naming a positive element. If every element is negative, or there "
          "are none, each choice loses. Otherwise she can only steer to an undefined atom, "
          "which Abelard cannot turn into a win, so nobody wins. The machine accepts on a '+', "
          "rejects when it sees only '-', and loops in place after the list otherwise.",
      },
      {
          "even-domain",
          R"(states: q0 q1 even odd yes no
start: q0
accept: yes
reject: no
delta: (q0,n) -> (q1,n,R)
delta: (q1,=) -> (even,=,R)
delta: (even,0) -> (even,0,R)
delta: (even,1) -> (odd,1,R)
delta: (even,2) -> (even,2,R)
delta: (even,3) -> (odd,3,R)
delta: (even,4) -> (even,4,R)
delta: (even,5) -> (odd,5,R)
delta: (even,6) -> (even,6,R)
delta: (even,7) -> (odd,7,R)
delta: (even,8) -> (even,8,R)
delta: (even,9) -> (odd,9,R)
delta: (odd,0) -> (even,0,R)
delta: (odd,1) -> (odd,1,R)
delta: (odd,2) -> (even,2,R)
delta: (odd,3) -> (odd,3,R)
delta: (odd,4) -> (even,4,R)
delta: (odd,5) -> (odd,5,R)
delta: (odd,6) -> (even,6,R)
delta: (odd,7) -> (odd,7,R)
delta: (odd,8) -> (even,8,R)
delta: (odd,9) -> (odd,9,R)
delta: (even,;) -> (yes,;,R)
delta: (odd,;) -> (no,;,R)
)",
          "claim C0. (not exists x. x = x | exists x. delete x. exists y. delete y. C0)",
          "",
          "Eloise may claim the domain is empty, or delete two elements of her choice and "
          "return to the claim. From an even domain she deletes pairs until it is empty; from "
          "an odd one she eventually faces a single element, where the left disjunct is false "
          "and the right one leaves her without a second witness. The machine checks the last "
          "digit of the domain size.",
      },
  };
  return pairs;
}

}  // namespace lgame

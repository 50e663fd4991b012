#include <algorithm>
#include <numeric>

#include "lgame/structure.hpp"

namespace lgame {

namespace {

// Calls `visit` on every tuple of domain indices of length `arity`, in
// lexicographic order.
template <class Visit>
void for_each_index_tuple(std::size_t n, int arity, Visit&& visit) {
  if (n == 0) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  while (true) {
    visit(idx);
    int pos = arity - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

template <class Symbols, class Name>
std::vector<std::size_t> sorted_by_name(const Symbols& symbols, Name name) {
  std::vector<std::size_t> order(symbols.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return name(symbols[a]) < name(symbols[b]);
  });
  return order;
}

}  // namespace

std::string encode_model(const PartialStructure& s) {
  const auto& dom = s.domain();
  const auto& vocab = s.vocabulary();
  std::string out = "n=" + std::to_string(dom.size()) + ";";

  auto to_tuple = [&](const std::vector<std::size_t>& idx) {
    Tuple t;
    t.reserve(idx.size());
    for (auto i : idx) t.push_back(dom[i]);
    return t;
  };

  for (auto r : sorted_by_name(vocab.relations(), [](const auto& x) { return x.name; })) {
    const auto& sym = vocab.relations()[r];
    out += sym.name + ":" + std::to_string(sym.arity) + ":";
    for_each_index_tuple(dom.size(), sym.arity, [&](const auto& idx) {
      out += to_string(s.status(r, to_tuple(idx)));
    });
    out += ';';
  }
  for (auto f : sorted_by_name(vocab.functions(), [](const auto& x) { return x.name; })) {
    const auto& sym = vocab.functions()[f];
    out += sym.name + ":" + std::to_string(sym.arity) + ":";
    for_each_index_tuple(dom.size(), sym.arity, [&](const auto& idx) {
      auto v = s.function_value(f, to_tuple(idx));
      out += v ? std::to_string(s.domain_index(*v)) : std::string("?");
      out += ':';
    });
    out += ';';
  }
  for (auto c : sorted_by_name(vocab.constants(), [](const auto& x) { return x; })) {
    auto v = s.constant_value(c);
    out += vocab.constants()[c] + "=" + (v ? std::to_string(s.domain_index(*v)) : "?") + ";";
  }
  return out;
}

}  // namespace lgame

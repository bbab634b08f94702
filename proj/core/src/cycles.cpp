#include "matching/cycles.hpp"

namespace matching {

Cycle cycle_of(const Matching& mu_prime, const Matching& mu, WomanId w) {
  Cycle cyc;
  WomanId cur = w;
  for (;;) {
    auto m = mu_prime.man_of(cur);
    if (!m)
      throw PreconditionError("woman " + std::to_string(cur.value()) +
                              " unmatched in the provisional matching");
    cyc.women.push_back(cur);
    cyc.men.push_back(*m);
    auto nxt = mu.woman_of(*m);
    if (!nxt)
      throw PreconditionError("man " + std::to_string(m->value()) +
                              " unmatched in the target matching");
    if (*nxt == w) break;
    cur = *nxt;
    if (cyc.women.size() > mu.n_women())
      throw PreconditionError("cycle walk failed to close");
  }
  return cyc;
}

std::vector<Cycle> cycle_partition(const Matching& mu_prime, const Matching& mu) {
  std::vector<Cycle> out;
  std::vector<std::uint8_t> seen(mu.n_women(), 0);
  for (std::size_t w = 0; w < mu.n_women(); ++w) {
    if (seen[w] || !mu_prime.matched(WomanId(w))) continue;
    Cycle cyc = cycle_of(mu_prime, mu, WomanId(w));
    for (WomanId cw : cyc.women) seen[cw] = 1;
    out.push_back(std::move(cyc));
  }
  return out;
}

TodoSet TodoSet::initialize(const Matching& mu_prime, const Matching& mu) {
  TodoSet todo(mu.n_women());
  for (std::size_t w = 0; w < mu.n_women(); ++w) {
    const auto a = mu_prime.man_of(WomanId(w));
    const auto b = mu.man_of(WomanId(w));
    const bool differ = a.has_value() != b.has_value() ||
                        (a.has_value() && !(*a == *b));
    if (differ) todo.insert(WomanId(w));
  }
  return todo;
}

std::optional<WomanId> TodoSet::lowest() const {
  for (std::size_t w = 0; w < member_.size(); ++w)
    if (member_[w]) return WomanId(w);
  return std::nullopt;
}

}  // namespace matching

// Cycle structure of a provisional matching relative to a target matching,
// and the working set the synthesizer drains.
//
// For perfect matchings mu_prime and mu over the same participants, the
// cycle through w alternates "current partner" and "target partner" hops:
// w_1 -> m_1 = mu_prime(w_1) -> w_2 = mu(m_1) -> m_2 = mu_prime(w_2) -> ...
// until it closes at w_1. These cycles partition the women and mirror the
// cycles of the permutation mu o mu_prime^{-1}.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matching/types.hpp"

namespace matching {

struct Cycle {
  std::vector<WomanId> women;
  std::vector<ManId> men;  // men[i] = mu_prime(women[i]); same length

  std::size_t length() const { return women.size(); }
};

// The cycle through w. Singleton {w, mu_prime(w)} iff mu(w) == mu_prime(w).
// Throws PreconditionError if any participant on the orbit is unmatched.
Cycle cycle_of(const Matching& mu_prime, const Matching& mu, WomanId w);

// All cycles, each reported starting at its lowest woman id, ordered by that
// id. Covers every matched woman exactly once.
std::vector<Cycle> cycle_partition(const Matching& mu_prime, const Matching& mu);

// Working set over woman ids with O(1) insert/erase/membership.
class TodoSet {
 public:
  explicit TodoSet(std::size_t n_women) : member_(n_women, 0) {}

  // {w : mu_prime(w) != mu(w)}, treating unmatched as a distinct partner.
  static TodoSet initialize(const Matching& mu_prime, const Matching& mu);

  bool contains(WomanId w) const { return member_[w] != 0; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void insert(WomanId w) {
    if (!member_[w]) {
      member_[w] = 1;
      ++size_;
    }
  }
  void erase(WomanId w) {
    if (member_[w]) {
      member_[w] = 0;
      --size_;
    }
  }

  // Lowest member, if any. O(n) scan; the synthesizer's loop budget covers it.
  std::optional<WomanId> lowest() const;

 private:
  std::vector<std::uint8_t> member_;
  std::size_t size_ = 0;
};

}  // namespace matching

#include "matching/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "matching/engine.hpp"

namespace matching {
namespace {

constexpr std::int32_t kNoReq = std::numeric_limits<std::int32_t>::max();

// Recursive assignment of women to mutually-listed men (or to nobody), with
// blocking-pair constraints propagated forward:
//   - when woman w takes partner p, every mutual man she strictly prefers to
//     p must end up matched to someone he strictly prefers to w, else (w, m)
//     blocks; `req[m]` holds the tightest such bound as a rank in m's list;
//   - a man already matched is checked against the bound immediately;
//   - an unmatched man with a pending bound invalidates the leaf.
class StableEnumerator {
 public:
  StableEnumerator(const Instance& inst) : inst_(inst) {
    mutual_.resize(inst.n_women);
    for (std::size_t w = 0; w < inst.n_women; ++w)
      for (ManId m : inst.prefs_w[w].order())
        if (inst.prefs_m[m].contains(WomanId(w))) mutual_[w].push_back(m);
    partner_of_man_.assign(inst.n_men, -1);
    req_.assign(inst.n_men, kNoReq);
    w2m_.assign(inst.n_women, -1);
  }

  std::vector<Matching> enumerate() {
    results_.clear();
    recurse(0);
    std::sort(results_.begin(), results_.end(),
              [](const Matching& a, const Matching& b) {
                for (std::size_t w = 0; w < a.n_women(); ++w) {
                  const auto ma = a.man_of(WomanId(w));
                  const auto mb = b.man_of(WomanId(w));
                  const std::int32_t va = ma ? ma->value() : -1;
                  const std::int32_t vb = mb ? mb->value() : -1;
                  if (va != vb) return va < vb;
                }
                return false;
              });
    return results_;
  }

 private:
  // Applies the "m must end strictly better than w" constraint for every
  // mutual man of w ranked strictly better than `chosen_rank` in w's list.
  // Returns false (after undoing nothing visible: entries are recorded in
  // `undo`) if a already-matched man makes the pair block.
  bool constrain(std::size_t w, std::int32_t chosen_rank,
                 std::vector<std::pair<std::int32_t, std::int32_t>>& undo) {
    const auto& wlist = inst_.prefs_w[w];
    for (ManId m : mutual_[w]) {
      if (chosen_rank != -1 && wlist.rank_of(m) >= chosen_rank) continue;
      const std::int32_t rank_w_for_m = inst_.prefs_m[m].rank_of(WomanId(w));
      if (partner_of_man_[m] != -1) {
        const std::int32_t partner_rank = inst_.prefs_m[m].rank_of(
            WomanId(partner_of_man_[m]));
        if (rank_w_for_m < partner_rank) return false;  // (w, m) blocks
        continue;
      }
      if (rank_w_for_m < req_[m]) {
        undo.emplace_back(static_cast<std::int32_t>(static_cast<std::size_t>(m)),
                          req_[m]);
        if (req_[m] == kNoReq) ++pending_unmatched_;
        req_[m] = rank_w_for_m;
      }
    }
    return true;
  }

  void undo_constraints(
      const std::vector<std::pair<std::int32_t, std::int32_t>>& undo) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      if (it->second == kNoReq) --pending_unmatched_;
      req_[static_cast<std::size_t>(it->first)] = it->second;
    }
  }

  void recurse(std::size_t w) {
    if (w == inst_.n_women) {
      if (pending_unmatched_ != 0) return;
      Matching mu(inst_.n_women, inst_.n_men);
      for (std::size_t i = 0; i < inst_.n_women; ++i)
        if (w2m_[i] != -1) mu.link(WomanId(i), ManId(w2m_[i]));
      results_.push_back(std::move(mu));
      return;
    }

    std::vector<std::pair<std::int32_t, std::int32_t>> undo;

    // Option 1: w stays unmatched; every mutual man must end better off.
    if (constrain(w, -1, undo)) {
      w2m_[w] = -1;
      recurse(w + 1);
    }
    undo_constraints(undo);

    // Option 2: w takes a mutual man who is free and within his bound.
    for (ManId m : mutual_[w]) {
      if (partner_of_man_[m] != -1) continue;
      const std::int32_t rank_w_for_m = inst_.prefs_m[m].rank_of(WomanId(w));
      if (rank_w_for_m >= req_[m]) continue;
      undo.clear();
      if (constrain(w, inst_.prefs_w[w].rank_of(m), undo)) {
        const std::int32_t saved_req = req_[m];
        if (saved_req != kNoReq) --pending_unmatched_;
        req_[m] = kNoReq;
        partner_of_man_[m] = static_cast<std::int32_t>(w);
        w2m_[w] = m.value();
        recurse(w + 1);
        partner_of_man_[m] = -1;
        if (saved_req != kNoReq) ++pending_unmatched_;
        req_[m] = saved_req;
      }
      undo_constraints(undo);
    }
    w2m_[w] = -1;
  }

  const Instance& inst_;
  std::vector<std::vector<ManId>> mutual_;
  std::vector<std::int32_t> partner_of_man_;
  std::vector<std::int32_t> req_;   // rank bound in the man's own list
  std::vector<std::int32_t> w2m_;
  std::size_t pending_unmatched_ = 0;
  std::vector<Matching> results_;
};

}  // namespace

std::vector<Matching> enumerate_stable(const Instance& inst, std::uint64_t limit) {
  inst.validate();
  // Saturating unpruned-space estimate: each woman independently picks one of
  // her mutually-listed men or nobody.
  std::uint64_t space = 1;
  for (std::size_t w = 0; w < inst.n_women; ++w) {
    std::uint64_t options = 1;
    for (ManId m : inst.prefs_w[w].order())
      if (inst.prefs_m[m].contains(WomanId(w))) ++options;
    if (space > limit / options + 1) {
      space = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    space *= options;
  }
  if (space > limit)
    throw OracleLimitError("stable-matching candidate space " +
                           (space == std::numeric_limits<std::uint64_t>::max()
                                ? std::string("overflows")
                                : std::to_string(space)) +
                           " exceeds limit " + std::to_string(limit));

  StableEnumerator en(inst);
  return en.enumerate();
}

bool is_unique_stable(const Instance& inst, const Matching& target,
                      std::uint64_t limit) {
  const Matching m_opt = run(inst, Side::Men).matching;
  if (m_opt == target) {
    const Matching w_opt = run(inst, Side::Women).matching;
    if (w_opt == target) return true;
  }
  const auto all = enumerate_stable(inst, limit);
  return all.size() == 1 && all.front() == target;
}

namespace {

// Ordered sublists of {0..n_men-1} by (length, lexicographic).
std::vector<std::vector<ManId>> all_ordered_sublists(std::size_t n_men) {
  std::vector<std::vector<ManId>> out;
  std::vector<ManId> cur;
  std::vector<std::uint8_t> used(n_men, 0);
  // Depth-first by target length keeps the (length, lex) order.
  std::function<void(std::size_t)> rec = [&](std::size_t want) {
    if (cur.size() == want) {
      out.push_back(cur);
      return;
    }
    for (std::size_t m = 0; m < n_men; ++m) {
      if (used[m]) continue;
      used[m] = 1;
      cur.push_back(ManId(m));
      rec(want);
      cur.pop_back();
      used[m] = 0;
    }
  };
  for (std::size_t k = 0; k <= n_men; ++k) rec(k);
  return out;
}

}  // namespace

std::optional<WomenProfile> exhaust_w_profiles(
    const MenProfile& prefs_m, const Matching& target,
    const std::function<bool(const WomenProfile&)>& predicate,
    std::uint64_t limit, unsigned jobs) {
  const std::size_t n_men = prefs_m.size();
  const std::size_t n_women = prefs_m.opposite_count();
  if (target.n_women() != n_women || target.n_men() != n_men)
    throw PreconditionError("target matching shape mismatch");

  const auto sublists = all_ordered_sublists(n_men);
  const std::uint64_t radix = sublists.size();

  std::uint64_t space = 1;
  for (std::size_t w = 0; w < n_women; ++w) {
    if (space > limit / radix + 1) {
      space = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    space *= radix;
  }
  if (space > limit)
    throw OracleLimitError(
        "profile space " +
        (space == std::numeric_limits<std::uint64_t>::max()
             ? std::string("overflows")
             : std::to_string(space)) +
        " exceeds limit " + std::to_string(limit));

  if (n_women == 0) return std::nullopt;

  std::atomic<std::uint64_t> best(std::numeric_limits<std::uint64_t>::max());

  auto worker = [&](std::uint64_t from, std::uint64_t to) {
    Instance inst(n_women, n_men);
    for (std::size_t m = 0; m < n_men; ++m) {
      std::vector<WomanId> order(prefs_m[m].order());
      inst.prefs_m.set_list(m, std::move(order));
    }
    // Odometer over per-woman sublist indices, woman 0 most significant.
    std::vector<std::uint64_t> digit(n_women, 0);
    std::uint64_t v = from;
    for (std::size_t w = n_women; w-- > 0;) {
      digit[w] = v % radix;
      v /= radix;
    }
    for (std::size_t w = 0; w < n_women; ++w)
      inst.prefs_w.set_list(w, sublists[digit[w]]);

    for (std::uint64_t idx = from; idx < to; ++idx) {
      if (idx >= best.load(std::memory_order_relaxed)) break;
      const Matching got = run(inst, Side::Men).matching;
      if (got == target && !predicate(inst.prefs_w)) {
        std::uint64_t prev = best.load(std::memory_order_relaxed);
        while (idx < prev &&
               !best.compare_exchange_weak(prev, idx, std::memory_order_relaxed)) {
        }
        break;
      }
      // Advance the odometer, updating only the lists that change.
      for (std::size_t w = n_women; w-- > 0;) {
        if (++digit[w] < radix) {
          inst.prefs_w.set_list(w, sublists[digit[w]]);
          break;
        }
        digit[w] = 0;
        inst.prefs_w.set_list(w, sublists[0]);
      }
    }
  };

  const std::uint64_t total = space;
  if (jobs <= 1) {
    worker(0, total);
  } else {
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t from = static_cast<std::uint64_t>(j) * chunk;
      if (from >= total) break;
      threads.emplace_back(worker, from, std::min(total, from + chunk));
    }
    for (auto& t : threads) t.join();
  }

  const std::uint64_t found = best.load();
  if (found == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;

  WomenProfile prof(n_women, n_men);
  std::uint64_t v = found;
  std::vector<std::uint64_t> digit(n_women, 0);
  for (std::size_t w = n_women; w-- > 0;) {
    digit[w] = v % radix;
    v /= radix;
  }
  for (std::size_t w = 0; w < n_women; ++w) prof.set_list(w, sublists[digit[w]]);
  return prof;
}

}  // namespace matching

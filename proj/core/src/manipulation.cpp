#include "matching/manipulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "matching/engine.hpp"

namespace matching {
namespace {

constexpr std::int32_t kNoPtr = -1;

void require_men_list_partners(const Instance& inst, const Matching& mu) {
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    const auto w = mu.woman_of(ManId(m));
    if (w && !inst.prefs_m[m].contains(*w))
      throw PreconditionError("target matching pairs man " + std::to_string(m) +
                              " with a woman he does not list");
  }
}

bool is_perfect_balanced(const Instance& inst, const Matching& mu) {
  if (inst.n_women != inst.n_men) return false;
  return mu.size() == inst.n_women;
}

// [mu(w)] followed by the remaining men ascending, unmatched-in-mu men last.
std::vector<ManId> headed_list(const Matching& mu, WomanId w, std::size_t n_men) {
  const ManId head = *mu.man_of(w);
  std::vector<ManId> order;
  order.reserve(n_men);
  order.push_back(head);
  for (std::size_t m = 0; m < n_men; ++m)
    if (mu.matched(ManId(m)) && !(ManId(m) == head)) order.push_back(ManId(m));
  for (std::size_t m = 0; m < n_men; ++m)
    if (!mu.matched(ManId(m))) order.push_back(ManId(m));
  return order;
}

void promote_to_second(WomenProfile& prefs_w, WomanId w, ManId m) {
  const auto& old = prefs_w[w].order();
  if (old.empty() || old[0] == m)
    throw std::logic_error("cannot promote the list head to second place");
  if (prefs_w[w].rank_of(m) == -1)
    throw std::logic_error("cannot promote an unlisted man");
  if (old.size() > 1 && old[1] == m) return;
  std::vector<ManId> order;
  order.reserve(old.size());
  order.push_back(old[0]);
  order.push_back(m);
  for (std::size_t i = 1; i < old.size(); ++i)
    if (!(old[i] == m)) order.push_back(old[i]);
  prefs_w.set_list(w, std::move(order));
}

}  // namespace

ManipulationStats blacklist_stats(const WomenProfile& prefs_w, const Matching& mu,
                                  bool matched_only) {
  ManipulationStats st;
  std::vector<std::uint32_t> seen(prefs_w.opposite_count(), 0);
  for (std::size_t w = 0; w < prefs_w.size(); ++w) {
    if (matched_only && !mu.matched(WomanId(w))) continue;
    const std::size_t b = prefs_w[w].blacklist_size();
    if (b == 0) continue;
    ++st.n_b;
    st.combined_size += b;
    for (ManId m : prefs_w[w].blacklist()) {
      if (seen[m]) st.disjoint = false;
      ++seen[m];
    }
  }
  return st;
}

Matching compute_build_cor(const Matching& mu_prime, const Matching& mu,
                           const MenProfile& prefs_m, WomanId w_tilde,
                           WomenProfile& prefs_w, TodoSet& todo,
                           std::uint64_t* steps) {
  const std::size_t n_men = prefs_m.size();
  const std::size_t n_women = prefs_w.size();

  const auto final_man = mu.man_of(w_tilde);
  const auto current_man = mu_prime.man_of(w_tilde);
  if (!final_man || !current_man)
    throw PreconditionError("trigger woman must be matched in both matchings");
  if (*final_man == *current_man)
    throw PreconditionError("trigger woman already holds her target partner");

  // Every matched man must list both partners, provisional weakly preferred.
  for (std::size_t m = 0; m < n_men; ++m) {
    const auto wp = mu_prime.woman_of(ManId(m));
    const auto wt = mu.woman_of(ManId(m));
    if (wp.has_value() != wt.has_value())
      throw PreconditionError("matchings cover different sets of men");
    if (!wp) continue;
    const std::int32_t rp = prefs_m[m].rank_of(*wp);
    const std::int32_t rt = prefs_m[m].rank_of(*wt);
    if (rp == -1 || rt == -1 || rp > rt)
      throw PreconditionError("men's lists are incompatible with the matchings");
  }

  Matching provisional = mu_prime;

  std::vector<std::uint8_t> should_blacklist(n_men, 0);
  std::vector<std::int32_t> upcoming(n_men, kNoPtr);

  auto mark_done_cycle_of = [&](WomanId w) {
    WomanId cur = w;
    std::size_t guard = 0;
    do {
      todo.erase(cur);
      const auto m = mu_prime.man_of(cur);
      if (!m) throw PreconditionError("cycle walk hit an unmatched woman");
      const auto nxt = mu.woman_of(*m);
      if (!nxt) throw PreconditionError("cycle walk hit an unmatched man");
      cur = *nxt;
      if (++guard > n_women)
        throw PreconditionError("cycle walk failed to close");
    } while (!(cur == w));
  };

  prefs_w.set_list(w_tilde, {*final_man});

  ManId mover = *current_man;
  should_blacklist[mover] = 1;
  provisional.unlink(w_tilde);
  mark_done_cycle_of(w_tilde);
  upcoming[mover] = prefs_m[mover].rank_of(w_tilde) + 1;

  const std::uint64_t cap = static_cast<std::uint64_t>(n_men) * n_women + 2;
  std::uint64_t iters = 0;

  auto deref = [&](ManId m) -> WomanId {
    const std::int32_t p = upcoming[m];
    if (p < 0 || p >= static_cast<std::int32_t>(prefs_m[m].size()))
      throw PreconditionError("mover ran off the end of his list; inputs violate the contract");
    return prefs_m[m].at(static_cast<std::size_t>(p));
  };

  while (!(mover == *final_man && deref(mover) == w_tilde)) {
    if (++iters > cap)
      throw PreconditionError("trigger step failed to converge; inputs violate the contract");

    const WomanId w = deref(mover);
    ++upcoming[mover];

    bool swap = false;
    if (w == w_tilde) {
      should_blacklist[mover] = 1;
    } else if (mu.man_of(w) && *mu.man_of(w) == mover) {
      swap = true;
      upcoming[mover] = kNoPtr;
    } else if (todo.contains(w)) {
      promote_to_second(prefs_w, w, mover);
      mark_done_cycle_of(w);
      swap = true;
    }

    if (swap) {
      const auto displaced = provisional.man_of(w);
      if (!displaced)
        throw PreconditionError("mover accepted by a woman holding nobody");
      provisional.unlink(w);
      provisional.link(w, mover);
      mover = *displaced;
      if (upcoming[mover] == kNoPtr)
        upcoming[mover] = prefs_m[mover].rank_of(w) + 1;
    }
  }

  provisional.link(w_tilde, mover);

  if (should_blacklist[*final_man])
    throw std::logic_error("trigger woman's target partner reached her refusal set");

  std::vector<ManId> order;
  order.reserve(n_men);
  order.push_back(*final_man);
  for (std::size_t m = 0; m < n_men; ++m)
    if (!should_blacklist[m] && !(ManId(m) == *final_man)) order.push_back(ManId(m));
  prefs_w.set_list(w_tilde, std::move(order));

  if (steps) *steps += iters;
  return provisional;
}

namespace {

// Shared induction driver for the balanced and partial entry points. `work`
// carries the men's lists plus the women's profile being synthesized; mu_i
// must already reproduce as run(work). `relevant` masks the women the
// statistics and shape checks range over (matched women).
struct InductionState {
  Instance& work;
  const Matching& mu;
  Matching mu_i;
  std::vector<std::uint8_t> relevant;
  ManipulationStats stats;
};

std::vector<WomanId> working_set(const InductionState& st) {
  std::vector<WomanId> T;
  for (std::size_t w = 0; w < st.work.n_women; ++w) {
    const auto a = st.mu_i.man_of(WomanId(w));
    const auto b = st.mu.man_of(WomanId(w));
    const bool differ =
        a.has_value() != b.has_value() || (a.has_value() && !(*a == *b));
    if (differ) T.push_back(WomanId(w));
  }
  return T;
}

void check_shapes(const InductionState& st) {
  for (std::size_t w = 0; w < st.work.n_women; ++w) {
    if (!st.relevant[w]) continue;
    const auto& list = st.work.prefs_w[w].order();
    const auto head = st.mu.man_of(WomanId(w));
    if (list.empty() || !head || !(list[0] == *head))
      throw std::logic_error("profile lost its target-partner-first shape");
    const auto cur = st.mu_i.man_of(WomanId(w));
    if (cur && !(*cur == *head) && (list.size() < 2 || !(list[1] == *cur)))
      throw std::logic_error("pending woman lost her provisional-second shape");
  }
}

void run_induction(InductionState& st, const ManipulateOptions& opts) {
  const std::size_t n_w = st.work.n_women;
  const std::size_t n_m = st.work.n_men;
  std::size_t prev_t_size = n_w + 1;

  for (;;) {
    const std::vector<WomanId> T = working_set(st);
    if (T.size() >= prev_t_size)
      throw std::logic_error("working set failed to shrink");
    prev_t_size = T.size();
    if (T.empty()) break;
    if (opts.validate) check_shapes(st);

    RunOptions ro;
    ro.keep_trace = true;
    const RunResult R = run(st.work, Side::Men, ro);
    st.stats.engine_proposals += R.counters.proposals;
    if (!(R.matching == st.mu_i))
      throw std::logic_error("run does not reproduce the provisional matching");

    std::vector<std::uint8_t> rejected_at(n_w, 0);
    for (const auto& night : R.trace.nights)
      for (const auto& rej : night.rejections)
        rejected_at[static_cast<std::size_t>(rej.receiver)] = 1;

    WomanId w_tilde;
    bool picked = false;
    if (opts.cheap_shortcut) {
      for (WomanId w : T) {
        if (!rejected_at[w]) {
          w_tilde = w;
          picked = true;
          break;
        }
      }
    }
    if (!picked) {
      std::int64_t best = -1;
      for (WomanId w : T) {
        if (R.last_new_proposal[w] > best) {
          best = R.last_new_proposal[w];
          w_tilde = w;
        }
      }
    }

    if (!rejected_at[w_tilde]) {
      TodoSet todo = TodoSet::initialize(st.mu_i, st.mu);
      st.mu_i = compute_build_cor(st.mu_i, st.mu, st.work.prefs_m, w_tilde,
                                  st.work.prefs_w, todo, &st.stats.build_steps);
      ++st.stats.cheap_iterations;
      continue;
    }

    // Contested step. Everything read from the current profile must be
    // extracted before the trigger call rewrites it.
    const std::int64_t t = R.last_new_proposal[w_tilde];
    if (t <= 0 || t > static_cast<std::int64_t>(R.trace.nights.size()))
      throw std::logic_error("contested night index out of range");

    const auto& wt_list = st.work.prefs_w[w_tilde];
    ManId m_tilde;
    std::int32_t worst_rank = -1;
    for (const auto& rej : R.trace.nights[static_cast<std::size_t>(t - 1)].rejections) {
      if (static_cast<std::size_t>(rej.receiver) != static_cast<std::size_t>(w_tilde))
        continue;
      const std::int32_t r = wt_list.rank_of(ManId(rej.proposer));
      if (r > worst_rank) {
        worst_rank = r;
        m_tilde = ManId(rej.proposer);
      }
    }
    if (worst_rank < 0)
      throw std::logic_error("contested night has no rejection at the trigger woman");

    const std::vector<ManId> snapshot = wt_list.order();

    // Replay with the chosen man frozen at the trigger woman: reveals the
    // woman left unserved and each woman's end-of-replay hold (the demotion
    // pivots).
    RunOptions io;
    io.immune = std::make_pair(w_tilde, m_tilde);
    const RunResult Rt = run(st.work, Side::Men, io);
    st.stats.engine_proposals += Rt.counters.proposals;

    {
      const auto held = Rt.matching.man_of(w_tilde);
      const auto want = st.mu_i.man_of(w_tilde);
      if (!held || !want || !(*held == *want))
        throw std::logic_error("frozen replay did not keep the trigger woman's provisional partner");
      if (Rt.state.next[m_tilde] !=
          st.work.prefs_m[m_tilde].rank_of(WomanId(w_tilde)))
        throw std::logic_error("frozen replay did not leave the chosen man standing at the trigger woman");
    }

    WomanId hat_w;
    std::size_t holes = 0;
    for (std::size_t w = 0; w < n_w; ++w) {
      if (!st.relevant[w]) continue;
      if (!Rt.matching.matched(WomanId(w))) {
        hat_w = WomanId(w);
        ++holes;
      }
    }
    if (holes != 1)
      throw std::logic_error("frozen replay left " + std::to_string(holes) +
                             " women unserved, expected exactly one");
    std::vector<std::uint8_t> in_t(n_w, 0);
    for (WomanId w : T) in_t[w] = 1;
    if (in_t[hat_w])
      throw std::logic_error("frozen replay's hole landed inside the working set");

    const std::vector<std::int32_t> pivots = Rt.state.held;

    TodoSet todo = TodoSet::initialize(st.mu_i, st.mu);
    const Matching next = compute_build_cor(st.mu_i, st.mu, st.work.prefs_m,
                                            w_tilde, st.work.prefs_w, todo,
                                            &st.stats.build_steps);
    ++st.stats.expensive_iterations;

    // First adjustment: the trigger woman keeps her full list, with the
    // chosen man promoted to second place (her refusal set stays empty).
    {
      std::vector<ManId> order;
      order.reserve(snapshot.size());
      order.push_back(snapshot[0]);
      order.push_back(m_tilde);
      for (std::size_t i = 1; i < snapshot.size(); ++i)
        if (!(snapshot[i] == m_tilde)) order.push_back(snapshot[i]);
      st.work.prefs_w.set_list(w_tilde, std::move(order));
    }

    // Second adjustment: men who settled onto their target this step must
    // not be capturable at the women they pass over on the way; those
    // outside the working set either blacklist them (the unserved woman) or
    // rank them below their end-of-replay hold.
    std::vector<std::vector<ManId>> demote(n_w);
    std::vector<std::uint8_t> drop_at_hat(n_m, 0);
    bool any_drop = false;
    for (std::size_t m = 0; m < n_m; ++m) {
      const auto target = st.mu.woman_of(ManId(m));
      if (!target) continue;
      const auto now = next.woman_of(ManId(m));
      if (!now || !(*now == *target)) continue;
      const auto before = st.mu_i.woman_of(ManId(m));
      if (!before)
        throw std::logic_error("settling man was unmatched in the provisional matching");
      if (*before == *target) continue;

      const auto& ml = st.work.prefs_m[m];
      const std::int32_t from = ml.rank_of(*before);
      const std::int32_t to = ml.rank_of(*target);
      for (std::int32_t pos = from + 1; pos < to; ++pos) {
        const WomanId w = ml.at(static_cast<std::size_t>(pos));
        if (in_t[w]) continue;
        if (w == hat_w) {
          drop_at_hat[m] = 1;
          any_drop = true;
        } else {
          demote[w].push_back(ManId(m));
        }
      }
    }

    if (any_drop) {
      std::vector<ManId> order;
      for (ManId x : st.work.prefs_w[hat_w].order())
        if (!drop_at_hat[x]) order.push_back(x);
      st.work.prefs_w.set_list(hat_w, std::move(order));
    }

    for (std::size_t w = 0; w < n_w; ++w) {
      if (demote[w].empty()) continue;
      const auto& wlist = st.work.prefs_w[w];
      std::vector<ManId> moving;
      for (ManId m : demote[w])
        if (wlist.rank_of(m) != -1) moving.push_back(m);
      if (moving.empty()) continue;
      if (pivots[w] == -1)
        throw std::logic_error("demotion pivot missing: woman held nobody at replay end");
      const ManId pivot(pivots[w]);
      std::sort(moving.begin(), moving.end(), [&](ManId a, ManId b) {
        return wlist.rank_of(a) < wlist.rank_of(b);
      });
      if (std::find(moving.begin(), moving.end(), pivot) != moving.end())
        throw std::logic_error("demotion pivot is itself being demoted");

      std::vector<ManId> order;
      order.reserve(wlist.size());
      for (ManId x : wlist.order()) {
        if (std::find(moving.begin(), moving.end(), x) != moving.end()) continue;
        order.push_back(x);
        if (x == pivot)
          for (ManId m : moving) order.push_back(m);
      }
      st.work.prefs_w.set_list(w, std::move(order));
    }

    st.mu_i = next;
  }
}

ManipulationResult finish(InductionState& st, bool matched_only) {
  ManipulationStats out = blacklist_stats(st.work.prefs_w, st.mu, matched_only);
  out.cheap_iterations = st.stats.cheap_iterations;
  out.expensive_iterations = st.stats.expensive_iterations;
  out.helper_iterations = st.stats.helper_iterations;
  out.build_steps = st.stats.build_steps;
  out.engine_proposals = st.stats.engine_proposals;
  return {st.work.prefs_w, out};
}

}  // namespace

ManipulationResult manipulate_flat(const Instance& inst, const Matching& mu,
                                   const ManipulateOptions& opts) {
  (void)opts;  // every step here is a plain trigger step; nothing to tune
  inst.validate();
  if (inst.n_women != inst.n_men)
    throw PreconditionError("flat entry point requires equally sized sides");
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  if (mu.size() != inst.n_women)
    throw PreconditionError("flat entry point requires a perfect target matching");
  require_men_list_partners(inst, mu);

  const std::size_t n = inst.n_women;
  Matching first_night(n, n);
  {
    std::vector<std::uint8_t> taken(n, 0);
    for (std::size_t m = 0; m < n; ++m) {
      if (inst.prefs_m[m].empty())
        throw PreconditionError(
            "wrong entry point: man " + std::to_string(m) +
            " has an empty list; use the general entry point");
      const WomanId top = inst.prefs_m[m].at(0);
      if (taken[top])
        throw PreconditionError(
            "wrong entry point: men's top choices collide; use the general entry point");
      taken[top] = 1;
      first_night.link(top, ManId(m));
    }
  }

  Instance work(n, n);
  work.prefs_m = inst.prefs_m;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<ManId> order = headed_list(mu, WomanId(w), n);
    work.prefs_w.set_list(w, std::move(order));
    const ManId mp = *first_night.man_of(WomanId(w));
    if (!(mp == *mu.man_of(WomanId(w)))) promote_to_second(work.prefs_w, WomanId(w), mp);
  }

  ManipulationStats counters;
  TodoSet todo = TodoSet::initialize(first_night, mu);
  Matching cur = first_night;
  while (const auto wt = todo.lowest()) {
    cur = compute_build_cor(cur, mu, work.prefs_m, *wt, work.prefs_w, todo,
                            &counters.build_steps);
    ++counters.cheap_iterations;
  }
  if (!(cur == mu))
    throw std::logic_error("flat synthesis did not land on the target matching");

  ManipulationStats out = blacklist_stats(work.prefs_w, mu, false);
  out.cheap_iterations = counters.cheap_iterations;
  out.build_steps = counters.build_steps;
  return {work.prefs_w, out};
}

ManipulationResult manipulate_general(const Instance& inst, const Matching& mu,
                                      const ManipulateOptions& opts) {
  inst.validate();
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  if (!is_perfect_balanced(inst, mu))
    throw PreconditionError("general entry point requires equal sides and a perfect matching");
  require_men_list_partners(inst, mu);

  const std::size_t n = inst.n_women;
  Instance work(n, n);
  work.prefs_m = inst.prefs_m;
  for (std::size_t w = 0; w < n; ++w)
    work.prefs_w.set_list(w, headed_list(mu, WomanId(w), n));

  InductionState st{work, mu, Matching(), std::vector<std::uint8_t>(n, 1), {}};
  {
    const RunResult r0 = run(work, Side::Men);
    st.stats.engine_proposals += r0.counters.proposals;
    st.mu_i = r0.matching;
  }
  if (st.mu_i.size() != n)
    throw std::logic_error("initial run left someone unmatched on a balanced instance");
  for (std::size_t w = 0; w < n; ++w) {
    const ManId got = *st.mu_i.man_of(WomanId(w));
    if (!(got == *mu.man_of(WomanId(w)))) promote_to_second(work.prefs_w, WomanId(w), got);
  }

  run_induction(st, opts);
  return finish(st, false);
}

ManipulationResult manipulate_partial(const Instance& inst, const Matching& mu,
                                      const ManipulateOptions& opts) {
  inst.validate();
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  require_men_list_partners(inst, mu);

  const std::size_t n_w = inst.n_women;
  const std::size_t n_m = inst.n_men;

  Instance work(n_w, n_m);
  work.prefs_m = inst.prefs_m;
  std::vector<std::uint8_t> relevant(n_w, 0);
  for (std::size_t w = 0; w < n_w; ++w) {
    if (!mu.matched(WomanId(w))) continue;  // unmatched women keep empty lists
    relevant[w] = 1;
    work.prefs_w.set_list(w, headed_list(mu, WomanId(w), n_m));
  }

  InductionState st{work, mu, Matching(), std::move(relevant), {}};
  {
    const RunResult r0 = run(work, Side::Men);
    st.stats.engine_proposals += r0.counters.proposals;
    st.mu_i = r0.matching;
  }
  for (std::size_t w = 0; w < n_w; ++w)
    if (st.mu_i.matched(WomanId(w)) != mu.matched(WomanId(w)))
      throw std::logic_error("initial run changed the set of matched women");
  for (std::size_t m = 0; m < n_m; ++m)
    if (st.mu_i.matched(ManId(m)) != mu.matched(ManId(m)))
      throw std::logic_error("initial run changed the set of matched men");
  for (std::size_t w = 0; w < n_w; ++w) {
    if (!mu.matched(WomanId(w))) continue;
    const ManId got = *st.mu_i.man_of(WomanId(w));
    if (!(got == *mu.man_of(WomanId(w)))) promote_to_second(work.prefs_w, WomanId(w), got);
  }

  // Helper pre-phase: any pending woman some unmatched man lists can be
  // resolved by a trigger step plus a single promotion of that man; no
  // demotions or blacklists are ever needed for these.
  std::vector<std::int32_t> helper_for(n_w, -1);  // lowest unmatched man listing w
  for (std::size_t m = n_m; m-- > 0;) {
    if (mu.matched(ManId(m))) continue;
    for (WomanId w : inst.prefs_m[m].order()) helper_for[w] = static_cast<std::int32_t>(m);
  }

  for (;;) {
    WomanId w_tilde;
    bool found = false;
    for (std::size_t w = 0; w < n_w && !found; ++w) {
      if (helper_for[w] == -1 || !mu.matched(WomanId(w))) continue;
      const auto cur = st.mu_i.man_of(WomanId(w));
      if (cur && !(*cur == *mu.man_of(WomanId(w)))) {
        w_tilde = WomanId(w);
        found = true;
      }
    }
    if (!found) break;

    const ManId m_tilde(helper_for[w_tilde]);
    const std::vector<ManId> snapshot = work.prefs_w[w_tilde].order();

    TodoSet todo = TodoSet::initialize(st.mu_i, st.mu);
    st.mu_i = compute_build_cor(st.mu_i, st.mu, work.prefs_m, w_tilde,
                                work.prefs_w, todo, &st.stats.build_steps);
    ++st.stats.helper_iterations;

    std::vector<ManId> order;
    order.reserve(snapshot.size());
    order.push_back(snapshot[0]);
    order.push_back(m_tilde);
    for (std::size_t i = 1; i < snapshot.size(); ++i)
      if (!(snapshot[i] == m_tilde)) order.push_back(snapshot[i]);
    work.prefs_w.set_list(w_tilde, std::move(order));
  }

  run_induction(st, opts);
  return finish(st, true);
}

ManipulationResult naive_truncation(const Instance& inst, const Matching& mu) {
  inst.validate();
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  for (std::size_t w = 0; w < inst.n_women; ++w)
    if (!mu.matched(WomanId(w)))
      throw PreconditionError("baseline requires every woman matched");
  require_men_list_partners(inst, mu);

  WomenProfile prof(inst.n_women, inst.n_men);
  for (std::size_t w = 0; w < inst.n_women; ++w)
    prof.set_list(w, {*mu.man_of(WomanId(w))});
  ManipulationStats stats = blacklist_stats(prof, mu, false);
  return {std::move(prof), stats};
}

ManipulationMode pick_mode(const Instance& inst, const Matching& mu) {
  if (inst.n_women != inst.n_men || mu.size() != inst.n_women)
    return ManipulationMode::Partial;
  std::vector<std::uint8_t> taken(inst.n_women, 0);
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    if (inst.prefs_m[m].empty()) return ManipulationMode::General;
    const WomanId top = inst.prefs_m[m].at(0);
    if (taken[top]) return ManipulationMode::General;
    taken[top] = 1;
  }
  return ManipulationMode::Flat;
}

ManipulationResult manipulate(const Instance& inst, const Matching& mu,
                              ManipulationMode mode,
                              const ManipulateOptions& opts) {
  if (mode == ManipulationMode::Auto) mode = pick_mode(inst, mu);
  switch (mode) {
    case ManipulationMode::Flat:
      return manipulate_flat(inst, mu, opts);
    case ManipulationMode::General:
      return manipulate_general(inst, mu, opts);
    case ManipulationMode::Partial:
      return manipulate_partial(inst, mu, opts);
    case ManipulationMode::Naive:
      return naive_truncation(inst, mu);
    case ManipulationMode::Auto:
      break;
  }
  throw PreconditionError("unknown manipulation mode");
}

}  // namespace matching

#include "matching/divorces.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace matching {
namespace {

std::vector<WomanId> collect_requests(const Matching& end,
                                      const DivorceStrategySet& rules,
                                      std::int64_t season) {
  std::vector<WomanId> out;
  for (std::size_t w = 0; w < rules.size(); ++w) {
    const auto partner = end.man_of(WomanId(w));
    if (!partner) continue;
    const DivorceRule& rule = rules[w];
    bool fire = false;
    switch (rule.kind) {
      case DivorceRule::Kind::Never:
        break;
      case DivorceRule::Kind::PartnerIn:
        fire = std::find(rule.partner_set.begin(), rule.partner_set.end(),
                         *partner) != rule.partner_set.end();
        break;
      case DivorceRule::Kind::Scripted:
        for (const auto& e : rule.script)
          if (e.season == season && e.partner == *partner) fire = true;
        break;
    }
    if (fire) out.push_back(WomanId(w));
  }
  return out;
}

void accumulate(EngineCounters& total, const EngineCounters& part) {
  total.proposals += part.proposals;
  total.nights += part.nights;
  total.rejections += part.rejections;
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

// Dissolves (w, ex) in a proposal state: she frees her slot, he moves one
// past her. Consistency-checks that he was indeed standing at her.
void apply_divorce(const Instance& inst, ProposalState& st, WomanId w, ManId ex) {
  const std::int32_t rank = inst.prefs_m[ex].rank_of(w);
  if (rank == -1 || st.next[ex] != rank || st.held[w] != ex.value())
    throw std::logic_error("divorce applied to a pair the state does not hold");
  st.next[ex] = rank + 1;
  st.held[w] = -1;
}

}  // namespace

DivorceSimResult simulate_with_divorces(const Instance& inst,
                                        const DivorceStrategySet& strategies,
                                        const DivorceArbiter& arbiter) {
  inst.validate();
  if (strategies.size() != inst.n_women)
    throw PreconditionError("need exactly one divorce rule per woman");

  DivorceSimResult out;

  RunOptions ro;
  ro.keep_trace = true;
  RunResult r = run(inst, Side::Men, ro);
  accumulate(out.counters, r.counters);

  ProposalState state = std::move(r.state);
  std::int64_t season = 1;
  out.seasons.push_back(
      {season, std::nullopt, std::nullopt, std::move(r.trace), std::move(r.matching)});

  const std::uint64_t cap =
      static_cast<std::uint64_t>(inst.n_men) * inst.n_women + 1;
  std::uint64_t divorces = 0;

  for (;;) {
    const Matching& end = out.seasons.back().end;
    const std::vector<WomanId> requests = collect_requests(end, strategies, season);
    if (requests.empty()) break;

    const WomanId chosen = arbiter ? arbiter(requests) : requests.front();
    if (std::find_if(requests.begin(), requests.end(), [&](WomanId w) {
          return w == chosen;
        }) == requests.end())
      throw PreconditionError("arbiter picked a woman who did not request a divorce");

    if (++divorces > cap)
      throw DivorceCycleError("more than " + std::to_string(cap) +
                              " divorces; the strategy set does not terminate");

    const ManId ex = *end.man_of(chosen);
    apply_divorce(inst, state, chosen, ex);

    RunOptions cont;
    cont.keep_trace = true;
    cont.initial = &state;
    RunResult cr = run(inst, Side::Men, cont);
    accumulate(out.counters, cr.counters);
    state = std::move(cr.state);
    ++season;
    out.seasons.push_back(
        {season, chosen, ex, std::move(cr.trace), std::move(cr.matching)});
  }

  out.matching = out.seasons.back().end;
  return out;
}

OneDivorceResult one_divorce_strategy(const Instance& inst, const Matching& mu) {
  inst.validate();
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  if (inst.n_women != inst.n_men || mu.size() != inst.n_women)
    throw PreconditionError("divorce forcing requires equal sides and a perfect matching");
  for (std::size_t m = 0; m < inst.n_men; ++m)
    if (!inst.prefs_m[m].contains(*mu.woman_of(ManId(m))))
      throw PreconditionError("target matching pairs man " + std::to_string(m) +
                              " with a woman he does not list");

  const std::size_t n = inst.n_women;
  Instance work(n, n);
  work.prefs_m = inst.prefs_m;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<ManId> order;
    order.reserve(n);
    order.push_back(*mu.man_of(WomanId(w)));
    for (std::size_t m = 0; m < n; ++m)
      if (!(ManId(m) == order[0])) order.push_back(ManId(m));
    work.prefs_w.set_list(w, std::move(order));
  }

  OneDivorceResult out;
  out.strategies.assign(n, DivorceRule::never());

  RunOptions ro;
  ro.keep_trace = true;
  RunResult r = run(work, Side::Men, ro);
  Matching cur = r.matching;
  for (std::size_t w = 0; w < n; ++w) {
    const ManId got = *cur.man_of(WomanId(w));
    if (!(got == *mu.man_of(WomanId(w)))) promote_to_second(work.prefs_w, WomanId(w), got);
  }
  ProposalState state = std::move(r.state);
  std::int64_t season = 1;
  std::vector<std::uint8_t> used(n, 0);

  while (!(cur == mu)) {
    if (out.divorces >= n)
      throw std::logic_error("divorce forcing exceeded its n-1 budget");

    // Divorcer: the pending woman whose divorce sets off the longest eviction
    // chain, lowest id on ties. The chain can die early when a displaced man
    // lands on the freed slot, so each candidate is probed with a branched
    // season run and scored by the evictions the trace actually shows; the
    // pending-cycle length alone overstates the walk. Maximality guarantees
    // the winning season shakes the woman holding the divorcer's intended
    // partner.
    WomanId w_tilde;
    std::size_t best_len = 0;
    {
      ProposalState probe_state;
      RunOptions probe;
      probe.keep_trace = true;
      probe.initial = &probe_state;
      for (std::size_t w = 0; w < n; ++w) {
        const ManId got = *cur.man_of(WomanId(w));
        if (got == *mu.man_of(WomanId(w))) continue;
        probe_state = state;
        apply_divorce(work, probe_state, WomanId(w), got);
        const RunResult t = run(work, Side::Men, probe);
        std::size_t len = 1;
        for (const auto& night : t.trace.nights)
          for (const auto& rej : night.rejections)
            if (ManId(rej.proposer) == *cur.man_of(WomanId(rej.receiver)))
              ++len;
        if (len > best_len) {
          best_len = len;
          w_tilde = WomanId(w);
        }
      }
    }
    if (best_len == 0) throw std::logic_error("no pending woman despite cur != mu");
    if (used[w_tilde])
      throw std::logic_error("divorce forcing tried to reuse a woman");
    used[w_tilde] = 1;

    const ManId ex = *cur.man_of(w_tilde);
    const ManId target = *mu.man_of(w_tilde);
    const WomanId w_hat = *cur.woman_of(target);

    ProposalState branch = state;
    apply_divorce(work, branch, w_tilde, ex);

    RunOptions cont;
    cont.keep_trace = true;
    cont.initial = &branch;
    RunResult trial = run(work, Side::Men, cont);

    // The season must evict the target man from the woman currently holding
    // him. If the free-running continuation does not do that by itself,
    // promote the first man she turns away to second place on her list and
    // replay; he then outranks her current hold and forces the eviction.
    auto evicts_target = [&](const RunTrace& trace) {
      for (const auto& night : trace.nights)
        for (const auto& rej : night.rejections)
          if (rej.receiver == w_hat.value() && rej.proposer == target.value())
            return true;
      return false;
    };

    if (!evicts_target(trial.trace)) {
      std::optional<ManId> m_first;
      for (const auto& night : trial.trace.nights) {
        for (const auto& rej : night.rejections) {
          if (rej.receiver == w_hat.value()) {
            m_first = ManId(rej.proposer);
            break;
          }
        }
        if (m_first) break;
      }
      if (!m_first)
        throw std::logic_error("season never reached the target man's holder");
      promote_to_second(work.prefs_w, w_hat, *m_first);
      trial = run(work, Side::Men, cont);
      if (!evicts_target(trial.trace))
        throw std::logic_error("promotion failed to evict the target man");
    }

    if (!(*trial.matching.man_of(w_tilde) == target))
      throw std::logic_error("season did not end with the divorcer matched to her target");

    out.strategies[w_tilde] =
        DivorceRule::scripted({{season, ex}});
    ++out.divorces;
    ++season;
    cur = trial.matching;
    state = std::move(trial.state);
  }

  out.prefs_w = work.prefs_w;
  return out;
}

BlacklistToDivorceResult blacklist_to_divorce(const WomenProfile& prefs_w) {
  BlacklistToDivorceResult out;
  out.prefs_w = WomenProfile(prefs_w.size(), prefs_w.opposite_count());
  out.strategies.assign(prefs_w.size(), DivorceRule::never());
  for (std::size_t w = 0; w < prefs_w.size(); ++w) {
    std::vector<ManId> banned = prefs_w[w].blacklist();
    std::vector<ManId> order = prefs_w[w].order();
    order.insert(order.end(), banned.begin(), banned.end());
    out.prefs_w.set_list(w, std::move(order));
    if (!banned.empty())
      out.strategies[w] = DivorceRule::partner_in(std::move(banned));
  }
  return out;
}

WomenProfile divorce_to_blacklist(const Instance& inst,
                                  const WomenProfile& prefs_w,
                                  const DivorceStrategySet& strategies) {
  inst.validate();
  if (prefs_w.size() != inst.n_women ||
      prefs_w.opposite_count() != inst.n_men)
    throw PreconditionError("women's profile shape does not fit instance");
  if (strategies.size() != inst.n_women)
    throw PreconditionError("need exactly one divorce rule per woman");

  std::vector<std::size_t> divorcers;
  for (std::size_t w = 0; w < strategies.size(); ++w) {
    if (strategies[w].kind == DivorceRule::Kind::Never) continue;
    if (prefs_w[w].blacklist_size() != 0)
      throw PreconditionError("woman " + std::to_string(w) +
                              " has both a blacklist and a divorce rule");
    divorcers.push_back(w);
  }
  if (divorcers.empty()) return prefs_w;

  Instance work = inst;
  work.prefs_w = prefs_w;

  // One shared simulation seeds every conversion. Striking a woman's banned
  // set leaves the set of proposals every man eventually makes unchanged, so
  // all the divorcers can be read off the same run; converting them one at a
  // time against re-simulations would instead shift the season numbering out
  // from under the remaining scripted rules.
  const DivorceSimResult sim = simulate_with_divorces(work, strategies);

  for (std::size_t w : divorcers) {
    // B: men she divorced, closed under "rejected by her while her kept
    // suitor was already in B".
    std::vector<std::uint8_t> banned(inst.n_men, 0);
    for (const auto& season : sim.seasons)
      if (season.divorcing_woman && *season.divorcing_woman == WomanId(w))
        banned[*season.divorced_man] = 1;

    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& season : sim.seasons) {
        for (const auto& night : season.trace.nights) {
          for (const auto& rej : night.rejections) {
            if (rej.receiver != static_cast<std::int32_t>(w)) continue;
            if (rej.kept == -1 || !banned[rej.kept]) continue;
            if (!banned[rej.proposer]) {
              banned[rej.proposer] = 1;
              changed = true;
            }
          }
        }
      }
    }

    std::vector<ManId> order;
    for (ManId m : work.prefs_w[w].order())
      if (!banned[m]) order.push_back(m);
    work.prefs_w.set_list(w, std::move(order));
  }

  return work.prefs_w;
}

}  // namespace matching

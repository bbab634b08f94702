#include "matching/engine.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

namespace matching {
namespace {

// Core men-proposing night loop; women-proposing runs go through flipped().
RunResult run_men(const Instance& inst, const RunOptions& opts) {
  const std::size_t n_w = inst.n_women;
  const std::size_t n_m = inst.n_men;

  ProposalState st;
  if (opts.initial) {
    st = *opts.initial;
    if (st.next.size() != n_m || st.held.size() != n_w)
      throw MalformedStateError("proposal state shape mismatch");
  } else {
    st.next.assign(n_m, 0);
    st.held.assign(n_w, -1);
  }

  RunResult res;
  res.trace.proposing = Side::Men;
  res.last_new_proposal.assign(n_w, 0);

  // proposals counter: first time each man stands at each list position.
  std::vector<std::int32_t> counted_upto(n_m, -1);

  std::vector<std::vector<std::int32_t>> suitors(n_w);
  std::vector<std::int32_t> touched;
  touched.reserve(n_w);

  const std::uint64_t night_cap = static_cast<std::uint64_t>(n_w) * n_m + 2;
  for (;;) {
    ++res.counters.nights;
    if (res.counters.nights > night_cap)
      throw std::logic_error("engine exceeded its termination bound");

    touched.clear();
    for (std::size_t m = 0; m < n_m; ++m) {
      const auto& list = inst.prefs_m[m];
      const std::int32_t pos = st.next[m];
      if (pos >= static_cast<std::int32_t>(list.size())) continue;
      const std::size_t w = list.at(static_cast<std::size_t>(pos));
      if (pos > counted_upto[m]) {
        ++res.counters.proposals;
        counted_upto[m] = pos;
        res.last_new_proposal[w] = static_cast<std::int64_t>(res.counters.nights);
      }
      if (suitors[w].empty()) touched.push_back(static_cast<std::int32_t>(w));
      suitors[w].push_back(static_cast<std::int32_t>(m));
    }
    std::sort(touched.begin(), touched.end());

    NightRecord night;
    if (opts.keep_trace) {
      for (std::int32_t w : touched)
        for (std::int32_t m : suitors[static_cast<std::size_t>(w)])
          night.serenades.push_back({m, w});
    }

    std::uint64_t rejections_tonight = 0;
    for (std::int32_t wi : touched) {
      const std::size_t w = static_cast<std::size_t>(wi);
      auto& cand = suitors[w];
      const auto& wlist = inst.prefs_w[w];

      // Best listed suitor, if any.
      std::int32_t best = -1;
      std::int32_t best_rank = -1;
      for (std::int32_t m : cand) {
        const std::int32_t r = wlist.rank_of(ManId(m));
        if (r == -1) continue;
        if (best == -1 || r < best_rank) {
          best = m;
          best_rank = r;
        }
      }

      std::int32_t protected_man = -1;
      if (opts.immune && static_cast<std::size_t>(opts.immune->first) == w) {
        const std::int32_t pm = opts.immune->second.value();
        if (std::find(cand.begin(), cand.end(), pm) != cand.end())
          protected_man = pm;
      }

      const std::int32_t new_held = best;
      for (std::int32_t m : cand) {
        if (m == best || m == protected_man) continue;
        ++st.next[m];  // rejected: move past w
        ++rejections_tonight;
        if (opts.keep_trace) night.rejections.push_back({wi, m, new_held});
      }
      st.held[w] = new_held;
      cand.clear();
    }

    res.counters.rejections += rejections_tonight;
    if (opts.keep_trace) res.trace.nights.push_back(std::move(night));
    if (rejections_tonight == 0) break;
  }

  res.matching = Matching(n_w, n_m);
  for (std::size_t w = 0; w < n_w; ++w)
    if (st.held[w] != -1) res.matching.link(WomanId(w), ManId(st.held[w]));
  res.state = std::move(st);
  return res;
}

}  // namespace

RunResult run(const Instance& inst, Side proposing, const RunOptions& opts) {
  inst.validate();
  if (proposing == Side::Men) return run_men(inst, opts);
  if (opts.initial || opts.immune)
    throw PreconditionError("women-proposing runs support only plain options");
  RunResult res = run_men(flipped(inst), opts);
  res.matching = flip_matching(res.matching);
  res.trace.proposing = Side::Women;
  return res;
}

RunResult run_from_state(const Instance& inst, const Matching& initial,
                         const RunOptions& opts) {
  inst.validate();
  if (initial.n_women() != inst.n_women || initial.n_men() != inst.n_men)
    throw MalformedStateError("initial matching shape does not fit instance");

  ProposalState st;
  st.next.assign(inst.n_men, 0);
  st.held.assign(inst.n_women, -1);
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    const auto w = initial.woman_of(ManId(m));
    if (!w) {
      st.next[m] = static_cast<std::int32_t>(inst.prefs_m[m].size());
      continue;
    }
    const std::int32_t r = inst.prefs_m[m].rank_of(*w);
    if (r == -1)
      throw MalformedStateError("man " + std::to_string(m) +
                                " assigned a woman absent from his list");
    st.next[m] = r;
    st.held[*w] = static_cast<std::int32_t>(m);
  }

  RunOptions inner = opts;
  inner.initial = &st;
  return run(inst, Side::Men, inner);
}

OrderPolicy order_first() {
  return [](std::size_t) { return std::size_t{0}; };
}

OrderPolicy order_last() {
  return [](std::size_t n) { return n - 1; };
}

OrderPolicy order_seeded(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::size_t n) {
    return static_cast<std::size_t>((*rng)() % n);
  };
}

Matching run_sequential(const Instance& inst, Side proposing,
                        const OrderPolicy& policy) {
  inst.validate();
  if (proposing == Side::Women)
    return flip_matching(run_sequential(flipped(inst), Side::Men, policy));

  const std::size_t n_w = inst.n_women;
  const std::size_t n_m = inst.n_men;
  std::vector<std::int32_t> next(n_m, 0);   // next list index to propose at
  std::vector<std::int32_t> held(n_w, -1);

  std::vector<std::int32_t> active;  // unmatched men with list remaining, ascending
  for (std::size_t m = 0; m < n_m; ++m)
    if (!inst.prefs_m[m].empty()) active.push_back(static_cast<std::int32_t>(m));

  auto activate = [&active](std::int32_t m) {
    active.insert(std::lower_bound(active.begin(), active.end(), m), m);
  };

  while (!active.empty()) {
    std::size_t idx = policy(active.size());
    if (idx >= active.size())
      throw PreconditionError("order policy returned an out-of-range index");
    const std::int32_t m = active[idx];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(idx));

    const auto& mlist = inst.prefs_m[static_cast<std::size_t>(m)];
    const std::size_t w = mlist.at(static_cast<std::size_t>(next[m]));
    ++next[m];
    const auto& wlist = inst.prefs_w[w];

    bool accepted = false;
    if (wlist.contains(ManId(m))) {
      if (held[w] == -1) {
        held[w] = m;
        accepted = true;
      } else if (wlist.prefers(ManId(m), ManId(held[w]))) {
        const std::int32_t displaced = held[w];
        held[w] = m;
        accepted = true;
        if (next[displaced] < static_cast<std::int32_t>(
                                  inst.prefs_m[static_cast<std::size_t>(displaced)].size()))
          activate(displaced);
      }
    }
    if (!accepted && next[m] < static_cast<std::int32_t>(mlist.size())) activate(m);
  }

  Matching mu(n_w, n_m);
  for (std::size_t w = 0; w < n_w; ++w)
    if (held[w] != -1) mu.link(WomanId(w), ManId(held[w]));
  return mu;
}

StabilityReport find_blocking_pairs(const Instance& inst, const Matching& mu) {
  inst.validate();
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");

  StabilityReport rep;
  for (std::size_t w = 0; w < inst.n_women; ++w) {
    if (auto m = mu.man_of(WomanId(w)); m && !inst.prefs_w[w].contains(*m))
      rep.irrational_w.emplace_back(WomanId(w), *m);
  }
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    if (auto w = mu.woman_of(ManId(m)); w && !inst.prefs_m[m].contains(*w))
      rep.irrational_m.emplace_back(*w, ManId(m));
  }

  for (std::size_t w = 0; w < inst.n_women; ++w) {
    const auto& wlist = inst.prefs_w[w];
    const auto partner_w = mu.man_of(WomanId(w));
    for (std::size_t m = 0; m < inst.n_men; ++m) {
      if (!wlist.contains(ManId(m)) || !inst.prefs_m[m].contains(WomanId(w)))
        continue;
      if (partner_w && *partner_w == ManId(m)) continue;
      const bool w_wants = !partner_w || wlist.prefers(ManId(m), *partner_w);
      if (!w_wants) continue;
      const auto partner_m = mu.woman_of(ManId(m));
      const bool m_wants =
          !partner_m || inst.prefs_m[m].prefers(WomanId(w), *partner_m);
      if (m_wants) rep.blocking.emplace_back(WomanId(w), ManId(m));
    }
  }
  return rep;
}

std::string trace_to_string(const RunTrace& trace) {
  const bool men = trace.proposing == Side::Men;
  const char* pn = men ? "m" : "w";
  const char* rn = men ? "w" : "m";
  std::string out;
  for (std::size_t t = 0; t < trace.nights.size(); ++t) {
    const auto& night = trace.nights[t];
    out += "night " + std::to_string(t + 1) + ":";
    bool first = true;
    for (const auto& s : night.serenades) {
      out += first ? " " : ", ";
      first = false;
      out += pn + std::to_string(s.proposer) + " -> " + rn + std::to_string(s.receiver);
    }
    if (!night.rejections.empty()) {
      out += ";";
      first = true;
      for (const auto& r : night.rejections) {
        out += first ? " " : ", ";
        first = false;
        out += std::string("reject ") + rn + std::to_string(r.receiver) + " x " + pn +
               std::to_string(r.proposer);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace matching

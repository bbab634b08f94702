// Synthesis of women's preference profiles that force a chosen matching to
// be the unique stable matching, with as little blacklisting as possible.
//
// The driver maintains a provisional matching mu_i (the outcome of running
// deferred acceptance on the current profile) and repeatedly fixes one
// "trigger" woman per step: her list is rewritten so she refuses exactly the
// men that would otherwise cycle back to her, which collapses her whole
// cycle onto the target matching. Steps come in three flavors:
//   - cheap: the trigger woman saw no contested night, so the rewrite alone
//     works (compute_build_cor);
//   - expensive: contention is dodged without growing her blacklist, by
//     promoting the would-be-rejected man to second place and demoting or
//     blacklisting the men who could derail the replay at other women;
//   - helper (partial matchings only): an unmatched man plays the promoted
//     role, and provably no demotion or blacklist is needed at all.

#pragma once

#include <cstdint>

#include "matching/cycles.hpp"
#include "matching/types.hpp"

namespace matching {

struct ManipulationStats {
  // Blacklist statistics over the relevant women (all women for balanced
  // entry points, matched women for the partial one).
  std::size_t n_b = 0;            // women with a nonempty blacklist
  std::size_t combined_size = 0;  // total blacklist entries
  bool disjoint = true;           // no man appears in two blacklists

  // Diagnostics.
  std::uint64_t cheap_iterations = 0;
  std::uint64_t expensive_iterations = 0;
  std::uint64_t helper_iterations = 0;  // partial-case pre-phase steps
  std::uint64_t build_steps = 0;        // synthesizer inner-loop advances
  std::uint64_t engine_proposals = 0;   // proposals across auxiliary runs
};

struct ManipulationResult {
  WomenProfile prefs_w;
  ManipulationStats stats;
};

struct ManipulateOptions {
  // Prefer any woman who never rejects (she admits the cheap step) over the
  // latest-contested-night rule. Changes which valid profile is produced,
  // not its guarantees.
  bool cheap_shortcut = true;
  // Extra O(n) structural checks per iteration.
  bool validate = false;
};

// Recomputes blacklist statistics from a profile (the counters are left 0).
// With matched_only, unmatched women of `mu` are excluded.
ManipulationStats blacklist_stats(const WomenProfile& prefs_w, const Matching& mu,
                                  bool matched_only);

// One in-place trigger step. Requires: mu_prime(w_tilde) != mu(w_tilde);
// every matched man lists both his partners, with the provisional one weakly
// preferred; every woman's list headed by mu(w) with, when her provisional
// partner differs, that partner second. On return, w_tilde's list is
// mu(w_tilde) followed by everyone she need not refuse (ascending), some
// women on her cycle's path have a man promoted to second place, `todo`
// (which must equal {w : mu_prime(w) != mu(w)} on entry) has the resolved
// women removed, and the returned matching has them on their mu-partners.
// `steps`, when given, accumulates inner-loop advances.
Matching compute_build_cor(const Matching& mu_prime, const Matching& mu,
                           const MenProfile& prefs_m, WomanId w_tilde,
                           WomenProfile& prefs_w, TodoSet& todo,
                           std::uint64_t* steps = nullptr);

// Fast path for instances where all men's top choices are distinct (so the
// unmanipulated run would end after one night). O(n^2) total, no engine
// runs. Requires |W|=|M|, mu perfect and listed by every man; throws
// PreconditionError (a wrong-entry-point message) when tops collide.
ManipulationResult manipulate_flat(const Instance& inst, const Matching& mu,
                                   const ManipulateOptions& opts = {});

// Full balanced case: |W|=|M|, mu perfect and listed by every man (the
// instance's women-side lists are ignored; the coalition replaces them).
ManipulationResult manipulate_general(const Instance& inst, const Matching& mu,
                                      const ManipulateOptions& opts = {});

// Arbitrary side sizes and a partial target matching. Unmatched women
// blacklist everyone; matched women's synthesized lists keep unmatched men
// last; women some unmatched man lists are resolved by helper steps first.
ManipulationResult manipulate_partial(const Instance& inst, const Matching& mu,
                                      const ManipulateOptions& opts = {});

// Baseline: every woman's list truncated to just her mu-partner. Requires
// all women matched and mu listed by every matched man.
ManipulationResult naive_truncation(const Instance& inst, const Matching& mu);

enum class ManipulationMode { Auto, Flat, General, Partial, Naive };

// Dispatch rule: partial when the sides differ or mu is not perfect, flat
// when every man has a list and the tops are pairwise distinct, else general.
ManipulationMode pick_mode(const Instance& inst, const Matching& mu);

ManipulationResult manipulate(const Instance& inst, const Matching& mu,
                              ManipulationMode mode,
                              const ManipulateOptions& opts = {});

}  // namespace matching

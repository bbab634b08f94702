// Brute-force ground truth, kept deliberately independent of the night-loop
// engine: enumeration assigns women one by one and filters by the stability
// definition, so it cross-checks the constructive algorithms rather than
// re-deriving them.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "matching/types.hpp"

namespace matching {

inline constexpr std::uint64_t kDefaultMatchingLimit = 10'000'000;
inline constexpr std::uint64_t kDefaultProfileLimit = 100'000'000;

// All stable matchings of the instance, sorted lexicographically by the
// woman-to-man table. Throws OracleLimitError when the unpruned candidate
// space (product over women of 1 + #mutually-listed men) exceeds `limit`.
std::vector<Matching> enumerate_stable(const Instance& inst,
                                       std::uint64_t limit = kDefaultMatchingLimit);

// True iff `target` is the unique stable matching. Fast path: when both
// side-optimal runs equal `target`, returns true without enumerating;
// otherwise falls back to enumerate_stable (which may throw on limit).
bool is_unique_stable(const Instance& inst, const Matching& target,
                      std::uint64_t limit = kDefaultMatchingLimit);

// Sweeps every women's profile over the men of `prefs_m` (each woman's list
// ranges over all ordered sublists of the men, enumerated by length then
// lexicographically; woman 0 is the most significant position). For every
// profile whose men-proposing outcome equals `target`, evaluates `predicate`;
// returns the first profile (in enumeration order) where the predicate FAILS,
// or nullopt when every reachable profile satisfies it.
//
// `jobs` > 1 splits the sweep across threads; the reported counterexample is
// still the canonically first one. Throws OracleLimitError when the profile
// space exceeds `limit`.
std::optional<WomenProfile> exhaust_w_profiles(
    const MenProfile& prefs_m, const Matching& target,
    const std::function<bool(const WomenProfile&)>& predicate,
    std::uint64_t limit = kDefaultProfileLimit, unsigned jobs = 1);

}  // namespace matching

#pragma once

// Instance generators: the cyclic-block families that meet the synthesizer's
// lower bounds exactly (hence "tight"), and seeded random instances for
// property tests. All ids are assigned consecutively and the target matching
// is the identity on the matched prefix, so fixtures stay readable.

#include <cstdint>
#include <vector>

#include "matching/types.hpp"

namespace matching {

struct GeneratedInstance {
  // prefs_m carries the construction; prefs_w is a neutral full ascending
  // placeholder (the synthesizer replaces women's lists wholesale).
  Instance instance;
  Matching mu;            // target matching, identity on the matched prefix
  WomenProfile witness;   // hand-built profile forcing mu uniquely
};

/// Balanced cyclic-block family on n women and n men. Each entry l in
/// `sizes` spawns a block of l+1 consecutive ids whose men rank the block's
/// women cyclically (own partner last); leftover ids become singleton
/// blocks. The witness gives each block's first woman a blacklist of size l
/// and everyone else a full list, so it has exactly sizes.size() nonempty
/// blacklists. Requires sizes.size() <= n/2, every l > 0, and
/// sum(l) + sizes.size() <= n.
GeneratedInstance gen_tight_balanced(std::size_t n,
                                     const std::vector<std::size_t>& sizes);

struct PartialTightParams {
  std::size_t n_women = 0;
  std::size_t n_men = 0;
  // Both sides' ids 0..n_matched-1 are matched (mu = identity there).
  std::size_t n_matched = 0;
  // Per unmatched woman (id n_matched + i on the women side): the men she
  // refuses to list. Same for unmatched men.
  std::vector<std::vector<ManId>> b_w;
  std::vector<std::vector<WomanId>> b_m;
  std::size_t n_b = 0;
  std::vector<std::size_t> sizes;
};

/// Unbalanced/partial variant. Matched women some unmatched man accepts
/// (count n_h) pair with men whose first live choice is exactly them, so
/// they never need blacklists; cyclic blocks are laid over the remaining
/// n_matched - n_h matched women. Unmatched men blacklist exactly their b_m;
/// matched men rank the unmatched women who blacklist them first (harmless
/// and unavoidable for tightness). The witness gives each unmatched woman
/// the blacklist b_w plus every unmatched man who does not blacklist her.
/// Requires n_b <= (n_matched - n_h)/2, every l > 0, and
/// sum(l) + n_b <= n_matched - n_h.
GeneratedInstance gen_tight_partial(const PartialTightParams& params);

struct DivorceTightInstance {
  Instance instance;
  Matching mu;
};

/// Single-cycle instance on n ids: forcing mu by divorces alone needs n-1 of
/// them. Equivalent to gen_tight_balanced(n, {n-1}) without the witness.
DivorceTightInstance gen_divorce_tight(std::size_t n);

struct RandomInstance {
  Instance instance;
  Matching mu;  // uniform over perfect (balanced) or smaller-side-saturating
};

/// Seeded pseudorandom instance with full preference lists on both sides.
/// flat=true additionally makes the men's top choices pairwise distinct
/// (requires n_men <= n_women). Same seed, same output, on this
/// implementation; cross-implementation reproducibility is not promised.
RandomInstance gen_random(std::size_t n_women, std::size_t n_men,
                          std::uint64_t seed, bool flat);

}  // namespace matching

// Deferred-acceptance runs.
//
// Reference semantics are synchronous "nights": every active proposer
// simultaneously serenades the best receiver who has not rejected him yet
// and is on his list; each receiver keeps the best listed suitor present
// and rejects the rest (all of them, when every suitor is blacklisted).
// The run stops after the first night with no rejection.
//
// Runs can start from scratch or resume from a provisional assignment, and
// can optionally protect one (receiver, proposer) pair from rejection; the
// protected proposer keeps standing at that receiver without being held,
// while she continues to hold her best regular suitor. The strategy
// synthesizer uses this to freeze one suitor in place mid-run.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matching/types.hpp"

namespace matching {

struct EngineCounters {
  std::uint64_t proposals = 0;   // distinct (proposer, receiver) arrivals
  std::uint64_t nights = 0;
  std::uint64_t rejections = 0;
};

struct SerenadeRecord {
  std::int32_t proposer;
  std::int32_t receiver;
};

struct RejectionRecord {
  std::int32_t receiver;
  std::int32_t proposer;
  std::int32_t kept;  // suitor the receiver held on to that night; -1 = none
};

struct NightRecord {
  std::vector<SerenadeRecord> serenades;
  std::vector<RejectionRecord> rejections;
};

struct RunTrace {
  Side proposing = Side::Men;
  std::vector<NightRecord> nights;
};

// `night <t>: m<j> -> w<i>, ...; reject w<i> x m<k>, ...` (one line per night;
// roles swap when women propose).
std::string trace_to_string(const RunTrace& trace);

// Resumable run state, proposer orientation: `next[p]` is the index of the
// receiver proposer p currently stands at (== list length when exhausted),
// `held[r]` the receiver's provisional partner (-1 = none).
struct ProposalState {
  std::vector<std::int32_t> next;
  std::vector<std::int32_t> held;
};

struct RunOptions {
  bool keep_trace = false;
  const ProposalState* initial = nullptr;  // resume here instead of from scratch
  // Protected pair (receiver, proposer), see file comment.
  std::optional<std::pair<WomanId, ManId>> immune;
};

struct RunResult {
  Matching matching;
  EngineCounters counters;
  RunTrace trace;        // nights populated only when keep_trace was set
  ProposalState state;   // final state, proposer orientation
  // Per receiver: last night (1-based) on which some proposer stood at her
  // for the first time; 0 if nobody ever did. Proposers never return after a
  // rejection, so after this night her suitor set can only shrink.
  std::vector<std::int64_t> last_new_proposal;
};

// Full run from scratch. Women-proposing runs support only plain options
// (no initial state / immune pair); results are reported in proposer
// orientation (matching itself is always instance-oriented).
RunResult run(const Instance& inst, Side proposing, const RunOptions& opts = {});

// Resumes from a provisional matching: each matched man must list his
// partner (else MalformedStateError) and stands at her position; unmatched
// men are exhausted. Men-proposing.
RunResult run_from_state(const Instance& inst, const Matching& initial,
                         const RunOptions& opts = {});

// One-proposal-at-a-time variant. The policy picks the next proposer: it
// receives the number of currently active proposers (kept sorted by id
// ascending) and returns an index into that list. Final matching is
// timing-invariant, so this must agree with run() for every policy.
using OrderPolicy = std::function<std::size_t(std::size_t n_active)>;

OrderPolicy order_first();
OrderPolicy order_last();
OrderPolicy order_seeded(std::uint64_t seed);

Matching run_sequential(const Instance& inst, Side proposing,
                        const OrderPolicy& policy = order_first());

// Stability diagnostics for an arbitrary matching.
struct StabilityReport {
  // (w, m) mutually listed, each unmatched or strictly preferring the other.
  std::vector<std::pair<WomanId, ManId>> blocking;
  // Matched pairs violating list membership, per side.
  std::vector<std::pair<WomanId, ManId>> irrational_w;
  std::vector<std::pair<WomanId, ManId>> irrational_m;

  bool stable() const {
    return blocking.empty() && irrational_w.empty() && irrational_m.empty();
  }
};

StabilityReport find_blocking_pairs(const Instance& inst, const Matching& mu);

}  // namespace matching

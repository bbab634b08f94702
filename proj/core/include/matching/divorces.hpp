#pragma once

// Season-structured serenading with divorces.
//
// A simulation runs in seasons. Season 1 is a plain men-proposing run. At
// each season boundary every woman's rule is evaluated against the current
// matching; if any woman requests a divorce, an arbiter picks exactly one,
// her pair is dissolved, the freed man's pointer moves past her, and the
// next season continues the run from that state. The process ends at the
// first boundary with no requests.
//
// Also here: the forcing strategy that reaches a target matching with at
// most n-1 divorces by distinct women, and the two conversions between
// blacklist profiles and divorce rules that preserve the final matching.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "matching/engine.hpp"
#include "matching/types.hpp"

namespace matching {

struct DivorceRule {
  enum class Kind { Never, PartnerIn, Scripted };

  struct ScriptEntry {
    std::int64_t season = 0;  // fires at the boundary closing this season
    ManId partner;            // ...and only while she is matched to him
  };

  Kind kind = Kind::Never;
  std::vector<ManId> partner_set;    // PartnerIn: request while partner is in the set
  std::vector<ScriptEntry> script;   // Scripted: stale entries are ignored

  static DivorceRule never() { return {}; }
  static DivorceRule partner_in(std::vector<ManId> men) {
    DivorceRule r;
    r.kind = Kind::PartnerIn;
    r.partner_set = std::move(men);
    return r;
  }
  static DivorceRule scripted(std::vector<ScriptEntry> entries) {
    DivorceRule r;
    r.kind = Kind::Scripted;
    r.script = std::move(entries);
    return r;
  }
};

/// One rule per woman, indexed by WomanId.
using DivorceStrategySet = std::vector<DivorceRule>;

struct SeasonRecord {
  std::int64_t season = 0;                  // 1-based
  std::optional<WomanId> divorcing_woman;   // the divorce that opened this
  std::optional<ManId> divorced_man;        // season; season 1 has neither
  RunTrace trace;
  Matching end;
};

struct DivorceSimResult {
  Matching matching;  // final (== seasons.back().end)
  std::vector<SeasonRecord> seasons;
  EngineCounters counters;  // accumulated over all seasons
};

/// Picks the divorcing woman among the requesters (passed ascending,
/// nonempty). Must return one of them.
using DivorceArbiter = std::function<WomanId(const std::vector<WomanId>&)>;

/// Runs the season simulation. `strategies` must have one rule per woman.
/// A null arbiter means "lowest requesting WomanId". Aborts with
/// DivorceCycleError after n_men * n_women + 1 divorces; a mix of scripted
/// and never rules cannot reach that many, so the guard only trips on
/// ill-formed custom rule sets.
DivorceSimResult simulate_with_divorces(const Instance& inst,
                                        const DivorceStrategySet& strategies,
                                        const DivorceArbiter& arbiter = nullptr);

struct OneDivorceResult {
  WomenProfile prefs_w;          // full lists, no blacklists
  DivorceStrategySet strategies; // scripted singletons for the divorcers
  std::size_t divorces = 0;      // seasons - 1 under simulation
};

/// Builds full (blacklist-free) women's lists plus scripted divorce rules
/// whose simulation ends at mu. Requires equal sides, mu perfect, and every
/// man listing his mu-partner. At most n-1 divorces, by pairwise distinct
/// women; each divorce-opened season ends with the divorcer holding her
/// mu-partner.
OneDivorceResult one_divorce_strategy(const Instance& inst, const Matching& mu);

struct BlacklistToDivorceResult {
  WomenProfile prefs_w;  // blacklists appended to the list tails
  DivorceStrategySet strategies;
};

/// Trades each woman's blacklist for a divorce rule: the blacklisted men
/// join her list tail (ascending) and she divorces any of them on sight.
/// Simulating the result reproduces the plain run under the original
/// profile.
BlacklistToDivorceResult blacklist_to_divorce(const WomenProfile& prefs_w);

/// Trades divorce rules back for blacklists, one woman at a time (lowest id
/// first): simulate, seed a set B with the men she divorced, close B under
/// "rejected by her while she kept a member of B", strike B from her list,
/// and switch her to never-divorce. Every converted woman must start with an
/// empty blacklist. The final all-never profile reproduces the simulated
/// outcome under a plain run.
WomenProfile divorce_to_blacklist(const Instance& inst,
                                  const WomenProfile& prefs_w,
                                  const DivorceStrategySet& strategies);

}  // namespace matching

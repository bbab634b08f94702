#include <random>

#include "doctest.h"
#include "matching/divorces.hpp"
#include "matching/engine.hpp"
#include "matching/generators.hpp"
#include "matching/manipulation.hpp"
#include "reference.hpp"

using namespace matching;
using test::mk_instance;
using test::mk_matching;

namespace {

DivorceStrategySet all_never(std::size_t n) {
  return DivorceStrategySet(n, DivorceRule::never());
}

// The n=2 instance whose single scripted divorce flips the outcome.
Instance divorce_pair() {
  return mk_instance(2, 2, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
}

}  // namespace

TEST_SUITE("divorces") {

TEST_CASE("all-never strategies reproduce the vanilla run exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n_w = 1 + rng() % 4;
    const std::size_t n_m = 1 + rng() % 4;
    const Instance inst = test::ref_random_instance(n_w, n_m, rng);

    const DivorceSimResult sim = simulate_with_divorces(inst, all_never(n_w));
    RunOptions ro;
    ro.keep_trace = true;
    const RunResult plain = run(inst, Side::Men, ro);

    CHECK(sim.matching == plain.matching);
    REQUIRE(sim.seasons.size() == 1);
    CHECK(!sim.seasons[0].divorcing_woman.has_value());
    // Season 1's trace is the vanilla trace, night for night.
    REQUIRE(sim.seasons[0].trace.nights.size() == plain.trace.nights.size());
    for (std::size_t t = 0; t < plain.trace.nights.size(); ++t) {
      const auto& a = sim.seasons[0].trace.nights[t];
      const auto& b = plain.trace.nights[t];
      REQUIRE(a.serenades.size() == b.serenades.size());
      for (std::size_t i = 0; i < a.serenades.size(); ++i) {
        CHECK(a.serenades[i].proposer == b.serenades[i].proposer);
        CHECK(a.serenades[i].receiver == b.serenades[i].receiver);
      }
      REQUIRE(a.rejections.size() == b.rejections.size());
      for (std::size_t i = 0; i < a.rejections.size(); ++i) {
        CHECK(a.rejections[i].proposer == b.rejections[i].proposer);
        CHECK(a.rejections[i].receiver == b.rejections[i].receiver);
      }
    }
  }
}

TEST_CASE("scripted single divorce flips the two-pair outcome") {
  const Instance inst = divorce_pair();
  DivorceStrategySet rules = all_never(2);
  rules[0] = DivorceRule::scripted({{1, ManId(0)}});

  const DivorceSimResult sim = simulate_with_divorces(inst, rules);
  CHECK(sim.matching == mk_matching(2, 2, {{0, 1}, {1, 0}}));
  REQUIRE(sim.seasons.size() == 2);
  REQUIRE(sim.seasons[1].divorcing_woman.has_value());
  CHECK(*sim.seasons[1].divorcing_woman == WomanId(0));
  CHECK(*sim.seasons[1].divorced_man == ManId(0));
  // Season chaining: the divorced pair was matched when season 1 closed.
  CHECK(*sim.seasons[0].end.man_of(WomanId(0)) == ManId(0));
}

TEST_CASE("stale scripted entries never fire") {
  const Instance inst = divorce_pair();

  // Season number that never arrives.
  DivorceStrategySet rules = all_never(2);
  rules[0] = DivorceRule::scripted({{7, ManId(0)}});
  CHECK(simulate_with_divorces(inst, rules).seasons.size() == 1);

  // Right season, wrong partner.
  rules[0] = DivorceRule::scripted({{1, ManId(1)}});
  CHECK(simulate_with_divorces(inst, rules).seasons.size() == 1);
}

TEST_CASE("partner-set rules fire only while matched to a set member") {
  const Instance inst = divorce_pair();
  DivorceStrategySet rules = all_never(2);
  rules[0] = DivorceRule::partner_in({ManId(0)});

  const DivorceSimResult sim = simulate_with_divorces(inst, rules);
  // w0 sheds m0 once, lands m1, and the rule goes quiet.
  CHECK(sim.matching == mk_matching(2, 2, {{0, 1}, {1, 0}}));
  CHECK(sim.seasons.size() == 2);

  // A rule naming an impossible partner stays quiet from the start.
  rules[0] = DivorceRule::partner_in({ManId(1)});
  DivorceStrategySet both = rules;
  both[1] = DivorceRule::never();
  const DivorceSimResult sim2 = simulate_with_divorces(inst, both);
  // Season 1 ends {w0-m0, w1-m1}; w0's set excludes m0.
  CHECK(sim2.seasons.size() == 1);
}

TEST_CASE("arbiter picks among simultaneous requesters") {
  // Both women ask at the same boundary; the default grants w0 first.
  const Instance inst =
      mk_instance(2, 2, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  DivorceStrategySet rules(2);
  rules[0] = DivorceRule::partner_in({ManId(0)});
  rules[1] = DivorceRule::partner_in({ManId(1)});

  const DivorceSimResult def = simulate_with_divorces(inst, rules);
  REQUIRE(def.seasons.size() >= 2);
  CHECK(*def.seasons[1].divorcing_woman == WomanId(0));

  // A custom arbiter flips the grant order; the run still terminates.
  const DivorceSimResult rev = simulate_with_divorces(
      inst, rules, [](const std::vector<WomanId>& req) { return req.back(); });
  REQUIRE(rev.seasons.size() >= 2);
  CHECK(*rev.seasons[1].divorcing_woman == WomanId(1));

  // An arbiter returning a non-requester is rejected.
  CHECK_THROWS_AS(
      simulate_with_divorces(
          inst, rules,
          [](const std::vector<WomanId>&) { return WomanId(1000); }),
      PreconditionError);
}

TEST_CASE("strategy set must cover every woman") {
  CHECK_THROWS_AS(simulate_with_divorces(divorce_pair(), all_never(1)),
                  PreconditionError);
}

TEST_CASE("one-divorce forcing: already-optimal target needs no divorces") {
  const Instance inst = divorce_pair();
  const auto mu = mk_matching(2, 2, {{0, 0}, {1, 1}});
  const OneDivorceResult res = one_divorce_strategy(inst, mu);
  CHECK(res.divorces == 0);

  Instance work = inst;
  work.prefs_w = res.prefs_w;
  const DivorceSimResult sim = simulate_with_divorces(work, res.strategies);
  CHECK(sim.matching == mu);
  CHECK(sim.seasons.size() == 1);
}

TEST_CASE("one-divorce forcing on the single-cycle family") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const DivorceTightInstance g = gen_divorce_tight(n);
    const OneDivorceResult res = one_divorce_strategy(g.instance, g.mu);
    CHECK(res.divorces == n - 1);

    Instance work = g.instance;
    work.prefs_w = res.prefs_w;
    const DivorceSimResult sim = simulate_with_divorces(work, res.strategies);
    CHECK(sim.matching == g.mu);
    REQUIRE(sim.seasons.size() == n);

    // Divorcers pairwise distinct; each divorce-opened season parks the
    // divorcer on her target partner.
    std::vector<int> seen(n, 0);
    for (std::size_t s = 1; s < sim.seasons.size(); ++s) {
      REQUIRE(sim.seasons[s].divorcing_woman.has_value());
      const WomanId w = *sim.seasons[s].divorcing_woman;
      CHECK(seen[w] == 0);
      seen[w] = 1;
      REQUIRE(sim.seasons[s].end.man_of(w).has_value());
      CHECK(*sim.seasons[s].end.man_of(w) == *g.mu.man_of(w));
      // Chaining: the divorced pair stood at the previous season's close.
      CHECK(*sim.seasons[s - 1].end.man_of(w) == *sim.seasons[s].divorced_man);
    }

    // The synthesized lists carry no blacklists.
    for (std::size_t w = 0; w < n; ++w)
      CHECK(res.prefs_w[w].blacklist_size() == 0);
  }
}

TEST_CASE("one-divorce forcing on random balanced corpora") {
  std::mt19937_64 rng(2718);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const Instance inst = test::ref_random_instance(n, n, rng);
      const Matching mu = test::ref_random_perfect(n, rng);

      const OneDivorceResult res = one_divorce_strategy(inst, mu);
      CHECK(res.divorces <= n - 1);

      Instance work = inst;
      work.prefs_w = res.prefs_w;
      const DivorceSimResult sim = simulate_with_divorces(work, res.strategies);
      CHECK(sim.matching == mu);
      CHECK(sim.seasons.size() == res.divorces + 1);

      std::vector<int> seen(n, 0);
      for (std::size_t s = 1; s < sim.seasons.size(); ++s) {
        const WomanId w = *sim.seasons[s].divorcing_woman;
        CHECK(seen[w] == 0);
        seen[w] = 1;
        CHECK(*sim.seasons[s].end.man_of(w) == *mu.man_of(w));
      }
    }
  }
}

TEST_CASE("one-divorce forcing preconditions") {
  const auto unbalanced = mk_instance(2, 3, {{}, {}}, {{0, 1}, {1, 0}, {0}});
  CHECK_THROWS_AS(
      one_divorce_strategy(unbalanced, mk_matching(2, 3, {{0, 0}, {1, 1}})),
      PreconditionError);
  CHECK_THROWS_AS(
      one_divorce_strategy(divorce_pair(), mk_matching(2, 2, {{0, 0}})),
      PreconditionError);
}

TEST_CASE("blacklist-to-divorce: empty blacklists change nothing") {
  WomenProfile p(2, 2);
  p.set_list(0, std::vector<ManId>{ManId(1), ManId(0)});
  p.set_list(1, std::vector<ManId>{ManId(0), ManId(1)});
  const BlacklistToDivorceResult conv = blacklist_to_divorce(p);
  CHECK(conv.prefs_w[0].order() == p[0].order());
  CHECK(conv.prefs_w[1].order() == p[1].order());
  CHECK(conv.strategies[0].kind == DivorceRule::Kind::Never);
  CHECK(conv.strategies[1].kind == DivorceRule::Kind::Never);
}

TEST_CASE("blacklist-to-divorce preserves the outcome of forcing profiles") {
  for (std::size_t n = 3; n <= 5; ++n) {
    const GeneratedInstance g = gen_tight_balanced(n, {n - 1});

    // The generator's witness profile has one size-(n-1) blacklist.
    const BlacklistToDivorceResult conv = blacklist_to_divorce(g.witness);

    Instance with_blacklists = g.instance;
    with_blacklists.prefs_w = g.witness;
    const Matching direct = run(with_blacklists, Side::Men).matching;
    CHECK(direct == g.mu);

    Instance with_rules = g.instance;
    with_rules.prefs_w = conv.prefs_w;
    // The converted lists are full: appended tails remove the blacklists.
    for (std::size_t w = 0; w < n; ++w)
      CHECK(conv.prefs_w[w].blacklist_size() == 0);
    const DivorceSimResult sim =
        simulate_with_divorces(with_rules, conv.strategies);
    CHECK(sim.matching == direct);
  }
}

TEST_CASE("blacklist-to-divorce on the naive baseline (no divorce bound)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const Instance inst = test::ref_random_instance(n, n, rng);
    const Matching mu = test::ref_random_perfect(n, rng);
    const auto naive = naive_truncation(inst, mu);

    const BlacklistToDivorceResult conv = blacklist_to_divorce(naive.prefs_w);
    Instance with_rules = inst;
    with_rules.prefs_w = conv.prefs_w;
    const DivorceSimResult sim =
        simulate_with_divorces(with_rules, conv.strategies);
    CHECK(sim.matching == mu);
  }
}

TEST_CASE("divorce-to-blacklist: all-never input is returned unchanged") {
  const Instance inst = divorce_pair();
  const WomenProfile back =
      divorce_to_blacklist(inst, inst.prefs_w, all_never(2));
  CHECK(back[0].order() == inst.prefs_w[0].order());
  CHECK(back[1].order() == inst.prefs_w[1].order());
}

TEST_CASE("divorce-to-blacklist: the two-pair script becomes blacklist {m0}") {
  const Instance inst = divorce_pair();
  DivorceStrategySet rules = all_never(2);
  rules[0] = DivorceRule::scripted({{1, ManId(0)}});

  const WomenProfile back = divorce_to_blacklist(inst, inst.prefs_w, rules);
  CHECK(back[0].order() == std::vector<ManId>{ManId(1)});
  CHECK(back[0].blacklist() == std::vector<ManId>{ManId(0)});
  CHECK(back[1].order() == inst.prefs_w[1].order());

  Instance stripped = inst;
  stripped.prefs_w = back;
  CHECK(run(stripped, Side::Men).matching ==
        mk_matching(2, 2, {{0, 1}, {1, 0}}));
}

TEST_CASE("divorce-to-blacklist round-trips one-divorce outputs") {
  std::mt19937_64 rng(6021);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Instance inst = test::ref_random_instance(n, n, rng);
      const Matching mu = test::ref_random_perfect(n, rng);
      const OneDivorceResult strat = one_divorce_strategy(inst, mu);

      Instance work = inst;
      work.prefs_w = strat.prefs_w;
      const WomenProfile back =
          divorce_to_blacklist(work, strat.prefs_w, strat.strategies);

      Instance stripped = inst;
      stripped.prefs_w = back;
      CHECK(run(stripped, Side::Men).matching == mu);
    }
  }
}

TEST_CASE("divorce-to-blacklist refuses a woman with list and rule conflicts") {
  // w0 has both a nonempty blacklist and a non-never rule.
  const auto inst = mk_instance(2, 2, {{1}, {0, 1}}, {{0, 1}, {1, 0}});
  DivorceStrategySet rules = all_never(2);
  rules[0] = DivorceRule::partner_in({ManId(1)});
  CHECK_THROWS_AS(divorce_to_blacklist(inst, inst.prefs_w, rules),
                  PreconditionError);
}

}  // TEST_SUITE

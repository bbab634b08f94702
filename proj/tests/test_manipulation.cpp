#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "matching/engine.hpp"
#include "matching/generators.hpp"
#include "matching/manipulation.hpp"
#include "matching/oracle.hpp"
#include "reference.hpp"

using namespace matching;
using test::mk_instance;
using test::mk_matching;

namespace {

// Checks the full forcing contract plus the blacklist bounds for a balanced
// perfect target.
void check_forcing(const Instance& inst, const Matching& mu,
                   const ManipulationResult& res, std::size_t n) {
  Instance forced = inst;
  forced.prefs_w = res.prefs_w;
  CHECK(run(forced, Side::Men).matching == mu);
  CHECK(run(forced, Side::Women).matching == mu);
  CHECK(is_unique_stable(forced, mu));

  CHECK(res.stats.n_b <= n / 2);
  CHECK(res.stats.combined_size <= n - res.stats.n_b);
  CHECK(res.stats.disjoint);

  const ManipulationStats recount = blacklist_stats(res.prefs_w, mu, false);
  CHECK(recount.n_b == res.stats.n_b);
  CHECK(recount.combined_size == res.stats.combined_size);
  CHECK(recount.disjoint == res.stats.disjoint);
}

// Random balanced instance (full lists both sides) and uniform perfect mu.
std::pair<Instance, Matching> random_balanced(std::size_t n,
                                              std::mt19937_64& rng) {
  Instance inst = test::ref_random_instance(n, n, rng);
  Matching mu = test::ref_random_perfect(n, rng);
  return {std::move(inst), std::move(mu)};
}

}  // namespace

TEST_SUITE("manipulation") {

TEST_CASE("build_cor: two-man flat example") {
  const auto prefs_m =
      mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}}).prefs_m;
  const auto mu = mk_matching(2, 2, {{0, 1}, {1, 0}});
  const auto mu_prime = mk_matching(2, 2, {{0, 0}, {1, 1}});

  WomenProfile p(2, 2);
  p.set_list(0, std::vector<ManId>{ManId(1), ManId(0)});
  p.set_list(1, std::vector<ManId>{ManId(0), ManId(1)});
  TodoSet todo = TodoSet::initialize(mu_prime, mu);
  REQUIRE(todo.size() == 2);

  std::uint64_t steps = 0;
  const Matching out = compute_build_cor(mu_prime, mu, prefs_m, WomanId(0), p,
                                         todo, &steps);
  CHECK(out == mu);
  CHECK(p[0].order() == std::vector<ManId>{ManId(1)});
  CHECK(p[0].blacklist() == std::vector<ManId>{ManId(0)});
  CHECK(p[1].order() == std::vector<ManId>{ManId(0), ManId(1)});
  CHECK(todo.empty());
  // Cost bound: fewer than k*(n-1) = 2 inner advances for k=2 fixed women.
  CHECK(steps < 2);
}

TEST_CASE("build_cor: cyclic n=3, the trigger woman rejects both visitors") {
  const auto prefs_m =
      mk_instance(3, 3, {{}, {}, {}}, {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}})
          .prefs_m;
  const auto mu = mk_matching(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  const auto mu_prime = mk_matching(3, 3, {{1, 0}, {2, 1}, {0, 2}});

  WomenProfile p(3, 3);
  p.set_list(0, std::vector<ManId>{ManId(0), ManId(2), ManId(1)});
  p.set_list(1, std::vector<ManId>{ManId(1), ManId(0), ManId(2)});
  p.set_list(2, std::vector<ManId>{ManId(2), ManId(1), ManId(0)});
  TodoSet todo = TodoSet::initialize(mu_prime, mu);

  std::uint64_t steps = 0;
  const Matching out = compute_build_cor(mu_prime, mu, prefs_m, WomanId(0), p,
                                         todo, &steps);
  CHECK(out == mu);
  // Both m1 and m2 reach her window and are refused.
  CHECK(p[0].order() == std::vector<ManId>{ManId(0)});
  CHECK(p[0].blacklist() == std::vector<ManId>{ManId(1), ManId(2)});
  // The other women keep their shape.
  CHECK(p[1].order() == std::vector<ManId>{ManId(1), ManId(0), ManId(2)});
  CHECK(p[2].order() == std::vector<ManId>{ManId(2), ManId(1), ManId(0)});
  CHECK(todo.empty());
  CHECK(steps < 3 * 2);
}

TEST_CASE("build_cor: two-cycle among three pairs costs one blacklist entry") {
  const auto prefs_m =
      mk_instance(3, 3, {{}, {}, {}},
                  {{1, 0, 2}, {0, 1, 2}, {2, 0, 1}})
          .prefs_m;
  const auto mu = mk_matching(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  const auto mu_prime = mk_matching(3, 3, {{0, 1}, {1, 0}, {2, 2}});

  WomenProfile p(3, 3);
  p.set_list(0, std::vector<ManId>{ManId(0), ManId(1), ManId(2)});
  p.set_list(1, std::vector<ManId>{ManId(1), ManId(0), ManId(2)});
  p.set_list(2, std::vector<ManId>{ManId(2), ManId(0), ManId(1)});
  TodoSet todo = TodoSet::initialize(mu_prime, mu);
  REQUIRE(todo.size() == 2);

  const Matching out =
      compute_build_cor(mu_prime, mu, prefs_m, WomanId(0), p, todo);
  CHECK(out == mu);
  CHECK(p[0].blacklist_size() == 1);
  CHECK(p[0].blacklist() == std::vector<ManId>{ManId(1)});
  CHECK(p[0].order() == std::vector<ManId>{ManId(0), ManId(2)});
  CHECK(todo.empty());
}

TEST_CASE("build_cor precondition violations") {
  const auto prefs_m =
      mk_instance(2, 2, {{}, {}}, {{0, 1}, {1, 0}}).prefs_m;
  const auto mu = mk_matching(2, 2, {{0, 1}, {1, 0}});
  const auto mu_prime = mk_matching(2, 2, {{0, 0}, {1, 1}});

  WomenProfile p(2, 2);
  p.set_list(0, std::vector<ManId>{ManId(1), ManId(0)});
  p.set_list(1, std::vector<ManId>{ManId(0), ManId(1)});

  // w_tilde already settled.
  {
    TodoSet todo = TodoSet::initialize(mu, mu);
    WomenProfile q = p;
    CHECK_THROWS_AS(
        compute_build_cor(mu, mu, prefs_m, WomanId(0), q, todo, nullptr),
        PreconditionError);
  }

  // A man who prefers his target to his provisional partner breaks
  // compatibility: m0 would have to walk upward.
  {
    const auto bad_m =
        mk_instance(2, 2, {{}, {}}, {{1, 0}, {1, 0}}).prefs_m;
    TodoSet todo = TodoSet::initialize(mu_prime, mu);
    WomenProfile q = p;
    CHECK_THROWS_AS(compute_build_cor(mu_prime, mu, bad_m, WomanId(0), q, todo,
                                      nullptr),
                    PreconditionError);
  }
}

TEST_CASE("flat: target equal to the first-night pairing needs nothing") {
  const auto inst = mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}});
  const auto mu = mk_matching(2, 2, {{0, 0}, {1, 1}});
  const auto res = manipulate_flat(inst, mu);
  CHECK(res.stats.n_b == 0);
  CHECK(res.stats.combined_size == 0);
  CHECK(res.stats.build_steps == 0);
  check_forcing(inst, mu, res, 2);
}

TEST_CASE("flat: two-man swap costs exactly one blacklist entry") {
  const auto inst = mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}});
  const auto mu = mk_matching(2, 2, {{0, 1}, {1, 0}});
  const auto res = manipulate_flat(inst, mu);
  CHECK(res.stats.n_b == 1);
  CHECK(res.stats.combined_size == 1);
  CHECK(res.prefs_w[0].order() == std::vector<ManId>{ManId(1)});
  CHECK(res.prefs_w[1].order() == std::vector<ManId>{ManId(0), ManId(1)});
  check_forcing(inst, mu, res, 2);
}

TEST_CASE("flat: colliding tops are the wrong entry point") {
  const auto inst = mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}});
  const auto mu = mk_matching(2, 2, {{0, 0}, {1, 1}});
  try {
    manipulate_flat(inst, mu);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("wrong entry point") !=
          std::string::npos);
  }
}

TEST_CASE("flat: partial target is a precondition violation") {
  const auto inst = mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(manipulate_flat(inst, mk_matching(2, 2, {{0, 0}})),
                  PreconditionError);
}

TEST_CASE("flat: random flat corpora satisfy every bound") {
  ManipulateOptions opts;
  opts.validate = true;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const RandomInstance ri = gen_random(n, n, seed * 101 + n, true);
      const auto res = manipulate_flat(ri.instance, ri.mu, opts);
      check_forcing(ri.instance, ri.mu, res, n);
      // The flat driver never touches the engine.
      CHECK(res.stats.engine_proposals == 0);
      CHECK(res.stats.build_steps < n * n);
    }
  }
}

TEST_CASE("general: cyclic family needs one blacklist of size n-1") {
  ManipulateOptions opts;
  opts.validate = true;
  for (std::size_t n = 3; n <= 6; ++n) {
    const GeneratedInstance g = gen_tight_balanced(n, {n - 1});
    const auto res = manipulate_general(g.instance, g.mu, opts);
    CHECK(res.stats.n_b == 1);
    CHECK(res.stats.combined_size == n - 1);
    check_forcing(g.instance, g.mu, res, n);
  }
}

TEST_CASE("general: random balanced corpora satisfy every bound") {
  std::mt19937_64 rng(987);
  ManipulateOptions opts;
  opts.validate = true;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto [inst, mu] = random_balanced(n, rng);
      const auto res = manipulate_general(inst, mu, opts);
      check_forcing(inst, mu, res, n);
    }
  }
}

TEST_CASE("general: cheap shortcut off gives the same guarantees") {
  std::mt19937_64 rng(31337);
  ManipulateOptions opts;
  opts.validate = true;
  opts.cheap_shortcut = false;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 15; ++trial) {
      const auto [inst, mu] = random_balanced(n, rng);
      const auto res = manipulate_general(inst, mu, opts);
      check_forcing(inst, mu, res, n);
    }
  }
}

TEST_CASE("general: flat inputs are accepted with identical guarantees") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RandomInstance ri = gen_random(5, 5, seed, true);
    const auto res = manipulate_general(ri.instance, ri.mu);
    check_forcing(ri.instance, ri.mu, res, 5);
  }
}

TEST_CASE("general: preconditions") {
  const auto inst = mk_instance(2, 3, {{}, {}}, {{0, 1}, {0, 1}, {1, 0}});
  CHECK_THROWS_AS(manipulate_general(inst, mk_matching(2, 3, {{0, 0}, {1, 1}})),
                  PreconditionError);

  // Man does not list his target partner.
  const auto inst2 = mk_instance(2, 2, {{}, {}}, {{0}, {0, 1}});
  CHECK_THROWS_AS(
      manipulate_general(inst2, mk_matching(2, 2, {{0, 1}, {1, 0}})),
      PreconditionError);
}

TEST_CASE("partial: unmatched women blacklist everyone") {
  // 4 women, 3 men, mu matches w0..w2.
  std::mt19937_64 rng(5);
  const Instance inst = test::ref_random_instance(4, 3, rng);
  const auto mu = mk_matching(4, 3, {{0, 0}, {1, 1}, {2, 2}});
  ManipulateOptions opts;
  opts.validate = true;
  const auto res = manipulate_partial(inst, mu, opts);

  CHECK(res.prefs_w[3].empty());
  CHECK(res.prefs_w[3].blacklist_size() == 3);

  Instance forced = inst;
  forced.prefs_w = res.prefs_w;
  CHECK(run(forced, Side::Men).matching == mu);
  CHECK(is_unique_stable(forced, mu));
}

TEST_CASE("partial: a universally accepting spare man erases all blacklists") {
  std::mt19937_64 rng(6);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      // n women, n+1 men; the spare man lists everyone.
      Instance inst = test::ref_random_instance(n, n + 1, rng);
      {
        std::vector<WomanId> all;
        for (std::size_t w = 0; w < n; ++w) all.emplace_back(w);
        inst.prefs_m.set_list(n, std::move(all));
      }
      // Random perfect-on-women mu over the first n men.
      const Matching base = test::ref_random_perfect(n, rng);
      Matching mu(n, n + 1);
      for (std::size_t w = 0; w < n; ++w)
        mu.link(WomanId(w), ManId(*base.man_of(WomanId(w))));

      ManipulateOptions opts;
      opts.validate = true;
      const auto res = manipulate_partial(inst, mu, opts);
      CHECK(res.stats.n_b == 0);
      CHECK(res.stats.combined_size == 0);
      for (std::size_t w = 0; w < n; ++w)
        CHECK(res.prefs_w[w].blacklist_size() == 0);

      Instance forced = inst;
      forced.prefs_w = res.prefs_w;
      CHECK(run(forced, Side::Men).matching == mu);
      CHECK(is_unique_stable(forced, mu));
    }
  }
}

TEST_CASE("partial: balanced perfect target degenerates to the general bounds") {
  std::mt19937_64 rng(7);
  ManipulateOptions opts;
  opts.validate = true;
  for (int trial = 0; trial < 25; ++trial) {
    const auto [inst, mu] = random_balanced(5, rng);
    const auto res = manipulate_partial(inst, mu, opts);
    check_forcing(inst, mu, res, 5);
  }
}

TEST_CASE("partial: random shapes preserve bounds and uniqueness") {
  std::mt19937_64 rng(8);
  ManipulateOptions opts;
  opts.validate = true;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n_w = 2 + rng() % 4;
    const std::size_t n_m = 2 + rng() % 4;
    const Instance inst = test::ref_random_instance(n_w, n_m, rng);

    // Random partial matching of random size.
    Matching mu(n_w, n_m);
    {
      std::vector<std::size_t> ws(n_w), ms(n_m);
      for (std::size_t i = 0; i < n_w; ++i) ws[i] = i;
      for (std::size_t i = 0; i < n_m; ++i) ms[i] = i;
      std::shuffle(ws.begin(), ws.end(), rng);
      std::shuffle(ms.begin(), ms.end(), rng);
      const std::size_t k = rng() % (std::min(n_w, n_m) + 1);
      for (std::size_t i = 0; i < k; ++i)
        mu.link(WomanId(ws[i]), ManId(ms[i]));
    }

    const auto res = manipulate_partial(inst, mu, opts);

    Instance forced = inst;
    forced.prefs_w = res.prefs_w;
    CHECK(run(forced, Side::Men).matching == mu);
    CHECK(is_unique_stable(forced, mu));

    // Blacklist budget with n_h counted from the instance.
    const std::size_t n_mu = mu.size();
    std::size_t n_h = 0;
    for (std::size_t w = 0; w < n_w; ++w) {
      if (!mu.matched(WomanId(w))) continue;
      bool helper = false;
      for (std::size_t m = 0; m < n_m; ++m)
        if (!mu.matched(ManId(m)) && inst.prefs_m[m].contains(WomanId(w)))
          helper = true;
      if (helper) ++n_h;
    }
    CHECK(res.stats.n_b <= (n_mu - n_h) / 2);
    CHECK(res.stats.combined_size + n_h + res.stats.n_b <= n_mu);
    CHECK(res.stats.disjoint);

    // Matched women's blacklists stay inside the matched men.
    for (std::size_t w = 0; w < n_w; ++w) {
      if (!mu.matched(WomanId(w))) continue;
      for (ManId b : res.prefs_w[w].blacklist())
        CHECK(mu.matched(b));
    }

    const auto recount = blacklist_stats(res.prefs_w, mu, true);
    CHECK(recount.n_b == res.stats.n_b);
    CHECK(recount.combined_size == res.stats.combined_size);
  }
}

TEST_CASE("naive truncation: full-price baseline") {
  const GeneratedInstance g = gen_tight_balanced(3, {2});
  const auto res = naive_truncation(g.instance, g.mu);
  CHECK(res.stats.n_b == 3);
  CHECK(res.stats.combined_size == 6);
  Instance forced = g.instance;
  forced.prefs_w = res.prefs_w;
  CHECK(is_unique_stable(forced, g.mu));

  const auto tiny = mk_instance(1, 1, {{0}}, {{0}});
  const auto res1 = naive_truncation(tiny, mk_matching(1, 1, {{0, 0}}));
  CHECK(res1.stats.combined_size == 0);
  CHECK(res1.stats.n_b == 0);
}

TEST_CASE("mode dispatch") {
  const auto flat_inst =
      mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}});
  const auto perfect = mk_matching(2, 2, {{0, 0}, {1, 1}});
  CHECK(pick_mode(flat_inst, perfect) == ManipulationMode::Flat);

  const auto clash =
      mk_instance(2, 2, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}});
  CHECK(pick_mode(clash, perfect) == ManipulationMode::General);

  const auto empty_list =
      mk_instance(2, 2, {{0, 1}, {0, 1}}, {{}, {0, 1}});
  CHECK(pick_mode(empty_list, perfect) == ManipulationMode::General);

  const auto unbalanced = mk_instance(3, 2, {{}, {}, {}}, {{0, 1}, {1, 0}});
  CHECK(pick_mode(unbalanced, mk_matching(3, 2, {{0, 0}, {1, 1}})) ==
        ManipulationMode::Partial);
  CHECK(pick_mode(flat_inst, mk_matching(2, 2, {{0, 0}})) ==
        ManipulationMode::Partial);

  // Explicit dispatch matches direct calls.
  const auto via_auto =
      manipulate(flat_inst, perfect, ManipulationMode::Auto);
  const auto direct = manipulate_flat(flat_inst, perfect);
  for (std::size_t w = 0; w < 2; ++w)
    CHECK(via_auto.prefs_w[w].order() == direct.prefs_w[w].order());

  const auto naive = manipulate(flat_inst, perfect, ManipulationMode::Naive);
  CHECK(naive.prefs_w[0].order() == std::vector<ManId>{ManId(0)});
}

TEST_CASE("general mode: a contested step still forces uniquely") {
  // Seed chosen so the synthesis cannot drain the working set through
  // uncontested women alone; the frozen-replay branch must run once.
  const RandomInstance ri = gen_random(3, 3, 103001, false);
  const auto res = manipulate_general(ri.instance, ri.mu);
  CHECK(res.stats.expensive_iterations == 1);
  CHECK(res.stats.engine_proposals > 0);

  Instance forced = ri.instance;
  forced.prefs_w = res.prefs_w;
  CHECK(run(forced, Side::Men).matching == ri.mu);
  CHECK(run(forced, Side::Women).matching == ri.mu);
  CHECK(is_unique_stable(forced, ri.mu));
}

}  // TEST_SUITE

#include "matching/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace matching {
namespace {

struct Block {
  std::size_t start = 0;  // first id in the block (women and men share ids)
  std::size_t size = 0;   // l + 1
};

// Real blocks first, then singleton padding, over `ids` in order.
std::vector<Block> lay_blocks(const std::vector<std::size_t>& sizes,
                              std::size_t count) {
  std::vector<Block> blocks;
  std::size_t used = 0;
  for (std::size_t l : sizes) {
    blocks.push_back({used, l + 1});
    used += l + 1;
  }
  while (used < count) blocks.push_back({used++, 1});
  return blocks;
}

void check_block_budget(std::size_t room, const std::vector<std::size_t>& sizes) {
  const std::size_t n_b = sizes.size();
  if (n_b > room / 2)
    throw PreconditionError("too many blacklists requested: " +
                            std::to_string(n_b) + " > " + std::to_string(room / 2));
  std::size_t total = 0;
  for (std::size_t l : sizes) {
    if (l == 0) throw PreconditionError("blacklist sizes must be positive");
    total += l;
  }
  if (total + n_b > room)
    throw PreconditionError("combined blacklist size too large: " +
                            std::to_string(total) + " + " + std::to_string(n_b) +
                            " > " + std::to_string(room));
}

std::vector<ManId> full_men_ascending(std::size_t n_men) {
  std::vector<ManId> v;
  v.reserve(n_men);
  for (std::size_t m = 0; m < n_men; ++m) v.push_back(ManId(m));
  return v;
}

}  // namespace

GeneratedInstance gen_tight_balanced(std::size_t n,
                                     const std::vector<std::size_t>& sizes) {
  check_block_budget(n, sizes);

  GeneratedInstance out;
  out.instance = Instance(n, n);
  out.mu = Matching(n, n);
  out.witness = WomenProfile(n, n);

  const std::vector<Block> blocks = lay_blocks(sizes, n);
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t k = 0; k < blocks[b].size; ++k)
      block_of[blocks[b].start + k] = b;

  for (std::size_t id = 0; id < n; ++id) {
    out.mu.link(WomanId(id), ManId(id));
    out.instance.prefs_w.set_list(id, full_men_ascending(n));

    const Block& blk = blocks[block_of[id]];
    const std::size_t j = id - blk.start;

    // m_j: the block's women cyclically from j+1 (own partner last), then
    // everyone else ascending.
    std::vector<WomanId> mlist;
    mlist.reserve(n);
    for (std::size_t s = 1; s <= blk.size; ++s)
      mlist.push_back(WomanId(blk.start + (j + s) % blk.size));
    for (std::size_t w = 0; w < n; ++w)
      if (block_of[w] != block_of[id]) mlist.push_back(WomanId(w));
    out.instance.prefs_m.set_list(id, std::move(mlist));

    // Witness: w_0 lists only her partner among the block's men; w_j also
    // ranks the previous block man second.
    std::vector<ManId> wlist;
    wlist.reserve(n);
    wlist.push_back(ManId(id));
    if (j > 0) wlist.push_back(ManId(id - 1));
    for (std::size_t m = 0; m < n; ++m) {
      if (m == id || (j > 0 && m == id - 1)) continue;
      if (j == 0 && blk.size > 1 && block_of[m] == block_of[id]) continue;
      wlist.push_back(ManId(m));
    }
    out.witness.set_list(id, std::move(wlist));
  }
  return out;
}

GeneratedInstance gen_tight_partial(const PartialTightParams& p) {
  const std::size_t n_w = p.n_women;
  const std::size_t n_m = p.n_men;
  const std::size_t n_mu = p.n_matched;
  if (n_mu > n_w || n_mu > n_m)
    throw PreconditionError("matched prefix exceeds a side");
  if (p.b_w.size() != n_w - n_mu || p.b_m.size() != n_m - n_mu)
    throw PreconditionError("need one blacklist per unmatched participant");

  // Validate the outsider blacklists; keep them as masks.
  std::vector<std::vector<std::uint8_t>> bw_mask(p.b_w.size(),
                                                 std::vector<std::uint8_t>(n_m, 0));
  for (std::size_t i = 0; i < p.b_w.size(); ++i)
    for (ManId m : p.b_w[i]) {
      if (static_cast<std::size_t>(m) >= n_m)
        throw PreconditionError("unmatched woman's blacklist entry out of range");
      if (bw_mask[i][m])
        throw PreconditionError("duplicate entry in an unmatched woman's blacklist");
      bw_mask[i][m] = 1;
    }
  std::vector<std::vector<std::uint8_t>> bm_mask(p.b_m.size(),
                                                 std::vector<std::uint8_t>(n_w, 0));
  for (std::size_t i = 0; i < p.b_m.size(); ++i)
    for (WomanId w : p.b_m[i]) {
      if (static_cast<std::size_t>(w) >= n_w)
        throw PreconditionError("unmatched man's blacklist entry out of range");
      if (bm_mask[i][w])
        throw PreconditionError("duplicate entry in an unmatched man's blacklist");
      bm_mask[i][w] = 1;
    }

  // H: matched women acceptable to at least one unmatched man.
  std::vector<std::uint8_t> in_h(n_mu, 0);
  for (std::size_t w = 0; w < n_mu; ++w)
    for (std::size_t u = 0; u < bm_mask.size() && !in_h[w]; ++u)
      if (!bm_mask[u][w]) in_h[w] = 1;
  std::vector<std::size_t> rest;  // matched women outside H, ascending
  for (std::size_t w = 0; w < n_mu; ++w)
    if (!in_h[w]) rest.push_back(w);

  check_block_budget(rest.size(), p.sizes);
  const std::vector<Block> blocks = lay_blocks(p.sizes, rest.size());
  // Per matched id: position in `rest` (or npos for H members).
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> rest_pos(n_mu, npos);
  for (std::size_t k = 0; k < rest.size(); ++k) rest_pos[rest[k]] = k;
  std::vector<std::size_t> block_of(rest.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t k = 0; k < blocks[b].size; ++k)
      block_of[blocks[b].start + k] = b;

  // P(m): unmatched women whose blacklist contains m, ascending.
  auto p_of = [&](std::size_t m) {
    std::vector<WomanId> out;
    for (std::size_t i = 0; i < bw_mask.size(); ++i)
      if (bw_mask[i][m]) out.push_back(WomanId(n_mu + i));
    return out;
  };

  GeneratedInstance out;
  out.instance = Instance(n_w, n_m);
  out.mu = Matching(n_w, n_m);
  out.witness = WomenProfile(n_w, n_m);

  for (std::size_t id = 0; id < n_mu; ++id) out.mu.link(WomanId(id), ManId(id));
  for (std::size_t w = 0; w < n_w; ++w)
    out.instance.prefs_w.set_list(w, full_men_ascending(n_m));

  // Matched men.
  for (std::size_t id = 0; id < n_mu; ++id) {
    std::vector<WomanId> mlist = p_of(id);
    std::vector<std::uint8_t> placed(n_w, 0);
    for (WomanId w : mlist) placed[w] = 1;
    if (in_h[id]) {
      mlist.push_back(WomanId(id));  // first live choice: his partner
      placed[id] = 1;
    } else {
      const Block& blk = blocks[block_of[rest_pos[id]]];
      const std::size_t j = rest_pos[id] - blk.start;
      for (std::size_t s = 1; s <= blk.size; ++s) {
        const std::size_t w = rest[blk.start + (j + s) % blk.size];
        mlist.push_back(WomanId(w));
        placed[w] = 1;
      }
    }
    for (std::size_t w = 0; w < n_w; ++w)
      if (!placed[w]) mlist.push_back(WomanId(w));
    out.instance.prefs_m.set_list(id, std::move(mlist));
  }
  // Unmatched men: blacklist exactly b_m.
  for (std::size_t u = 0; u < bm_mask.size(); ++u) {
    std::vector<WomanId> mlist;
    for (std::size_t w = 0; w < n_w; ++w)
      if (!bm_mask[u][w]) mlist.push_back(WomanId(w));
    out.instance.prefs_m.set_list(n_mu + u, std::move(mlist));
  }

  // Witness, matched women.
  for (std::size_t id = 0; id < n_mu; ++id) {
    std::vector<ManId> wlist;
    wlist.reserve(n_m);
    wlist.push_back(ManId(id));
    bool drop_block_mates = false;
    std::size_t second = npos;
    if (!in_h[id]) {
      const Block& blk = blocks[block_of[rest_pos[id]]];
      const std::size_t j = rest_pos[id] - blk.start;
      if (j > 0)
        second = rest[rest_pos[id] - 1];
      else if (blk.size > 1)
        drop_block_mates = true;
      if (second != npos) wlist.push_back(ManId(second));
    }
    for (std::size_t m = 0; m < n_m; ++m) {
      if (m == id || m == second) continue;
      if (drop_block_mates && m < n_mu && !in_h[m] &&
          block_of[rest_pos[m]] == block_of[rest_pos[id]])
        continue;
      wlist.push_back(ManId(m));
    }
    out.witness.set_list(id, std::move(wlist));
  }
  // Witness, unmatched women: blacklist b_w plus unmatched men not
  // blacklisting them.
  for (std::size_t i = 0; i < bw_mask.size(); ++i) {
    std::vector<ManId> wlist;
    for (std::size_t m = 0; m < n_m; ++m) {
      if (bw_mask[i][m]) continue;
      if (m >= n_mu && !bm_mask[m - n_mu][n_mu + i]) continue;
      wlist.push_back(ManId(m));
    }
    out.witness.set_list(n_mu + i, std::move(wlist));
  }
  return out;
}

DivorceTightInstance gen_divorce_tight(std::size_t n) {
  if (n == 0) throw PreconditionError("need at least one participant");
  std::vector<std::size_t> sizes;
  if (n >= 2) sizes.push_back(n - 1);
  GeneratedInstance g = gen_tight_balanced(n, sizes);
  return {std::move(g.instance), std::move(g.mu)};
}

RandomInstance gen_random(std::size_t n_women, std::size_t n_men,
                          std::uint64_t seed, bool flat) {
  if (flat && n_men > n_women)
    throw PreconditionError("flat instances need n_men <= n_women");

  std::mt19937_64 rng(seed);
  // Fixed in-house shuffle: std::shuffle's draw sequence is not pinned by
  // the standard, and seeds are part of this function's contract.
  auto shuffle = [&rng](auto& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(v[i - 1], v[j]);
    }
  };

  RandomInstance out;
  out.instance = Instance(n_women, n_men);

  for (std::size_t w = 0; w < n_women; ++w) {
    std::vector<ManId> list = full_men_ascending(n_men);
    shuffle(list);
    out.instance.prefs_w.set_list(w, std::move(list));
  }

  std::vector<WomanId> tops;
  if (flat) {
    for (std::size_t w = 0; w < n_women; ++w) tops.push_back(WomanId(w));
    shuffle(tops);
  }
  for (std::size_t m = 0; m < n_men; ++m) {
    std::vector<WomanId> list;
    list.reserve(n_women);
    for (std::size_t w = 0; w < n_women; ++w) list.push_back(WomanId(w));
    if (flat) {
      std::swap(list[tops[m]], list[0]);
      // shuffle everything past the pinned top
      for (std::size_t i = list.size(); i > 2; --i) {
        const std::size_t j = 1 + static_cast<std::size_t>(rng() % (i - 1));
        std::swap(list[i - 1], list[j]);
      }
    } else {
      shuffle(list);
    }
    out.instance.prefs_m.set_list(m, std::move(list));
  }

  out.mu = Matching(n_women, n_men);
  if (n_women <= n_men) {
    std::vector<ManId> men = full_men_ascending(n_men);
    shuffle(men);
    for (std::size_t w = 0; w < n_women; ++w) out.mu.link(WomanId(w), men[w]);
  } else {
    std::vector<WomanId> women;
    for (std::size_t w = 0; w < n_women; ++w) women.push_back(WomanId(w));
    shuffle(women);
    for (std::size_t m = 0; m < n_men; ++m) out.mu.link(women[m], ManId(m));
  }
  return out;
}

}  // namespace matching

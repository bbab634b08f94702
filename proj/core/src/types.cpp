#include "matching/types.hpp"

namespace matching {

void Instance::validate() const {
  if (prefs_w.size() != n_women || prefs_m.size() != n_men)
    throw PreconditionError("profile length does not match side count");
  if (prefs_w.opposite_count() != n_men || prefs_m.opposite_count() != n_women)
    throw PreconditionError("profile opposite-side size mismatch");
}

bool is_rational(const Instance& inst, const Matching& mu, Side side) {
  if (mu.n_women() != inst.n_women || mu.n_men() != inst.n_men)
    throw MalformedStateError("matching shape does not fit instance");
  if (side == Side::Women) {
    for (std::size_t w = 0; w < inst.n_women; ++w) {
      auto m = mu.man_of(WomanId(w));
      if (m && !inst.prefs_w[w].contains(*m)) return false;
    }
  } else {
    for (std::size_t m = 0; m < inst.n_men; ++m) {
      auto w = mu.woman_of(ManId(m));
      if (w && !inst.prefs_m[m].contains(*w)) return false;
    }
  }
  return true;
}

Instance flipped(const Instance& inst) {
  Instance out(inst.n_men, inst.n_women);
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    std::vector<ManId> order;
    order.reserve(inst.prefs_m[m].size());
    for (WomanId w : inst.prefs_m[m].order()) order.push_back(ManId(w.value()));
    out.prefs_w.set_list(m, std::move(order));
  }
  for (std::size_t w = 0; w < inst.n_women; ++w) {
    std::vector<WomanId> order;
    order.reserve(inst.prefs_w[w].size());
    for (ManId m : inst.prefs_w[w].order()) order.push_back(WomanId(m.value()));
    out.prefs_m.set_list(w, std::move(order));
  }
  return out;
}

Matching flip_matching(const Matching& mu) {
  Matching out(mu.n_men(), mu.n_women());
  for (std::size_t w = 0; w < mu.n_women(); ++w) {
    if (auto m = mu.man_of(WomanId(w)))
      out.link(WomanId(m->value()), ManId(static_cast<std::int32_t>(w)));
  }
  return out;
}

}  // namespace matching

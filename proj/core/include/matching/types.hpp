// Core domain types for two-sided matching markets with incomplete
// preference lists: ids, ranked lists, profiles, matchings, instances.
//
// Conventions used throughout the library:
//   - Participants are dense 0-based indices, one id space per side.
//   - A participant's "blacklist" is implicit: everyone absent from the
//     ranked list. Being matched to a blacklisted partner is worse than
//     staying single.
//   - All types are plain value types. Algorithms copy what they mutate;
//     shared instances are safe to read concurrently.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace matching {

// ---------------------------------------------------------------------------
// Errors

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (bad ids, duplicates, wrong structure).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An operation was called outside its supported entry conditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A resumable-run initial state is internally inconsistent.
class MalformedStateError : public Error {
 public:
  using Error::Error;
};

// A brute-force search space exceeds the configured limit.
class OracleLimitError : public Error {
 public:
  using Error::Error;
};

// The divorce simulator exceeded its convergence guard.
class DivorceCycleError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Ids
//
// Two distinct id spaces; explicit construction keeps them from mixing,
// implicit size_t conversion keeps array indexing painless.

class WomanId {
 public:
  constexpr WomanId() = default;
  constexpr explicit WomanId(std::int32_t v) : v_(v) {}
  constexpr explicit WomanId(std::size_t v) : v_(static_cast<std::int32_t>(v)) {}
  constexpr operator std::size_t() const { return static_cast<std::size_t>(v_); }
  constexpr std::int32_t value() const { return v_; }

 private:
  std::int32_t v_ = -1;
};

class ManId {
 public:
  constexpr ManId() = default;
  constexpr explicit ManId(std::int32_t v) : v_(v) {}
  constexpr explicit ManId(std::size_t v) : v_(static_cast<std::int32_t>(v)) {}
  constexpr operator std::size_t() const { return static_cast<std::size_t>(v_); }
  constexpr std::int32_t value() const { return v_; }

 private:
  std::int32_t v_ = -1;
};

// ---------------------------------------------------------------------------
// RankedList
//
// One participant's preference list plus an O(1) rank lookup table over the
// opposite side. rank 0 = most preferred; absent = blacklisted.

template <class IdT>
class RankedList {
 public:
  RankedList() = default;

  // `order`: ids most-preferred first. `opposite_count`: size of the other
  // side, for validation and the rank table. Throws PreconditionError on
  // duplicates or out-of-range ids.
  RankedList(std::vector<IdT> order, std::size_t opposite_count)
      : order_(std::move(order)), rank_(opposite_count, -1) {
    for (std::size_t r = 0; r < order_.size(); ++r) {
      const std::size_t id = order_[r];
      if (id >= opposite_count)
        throw PreconditionError("preference entry " + std::to_string(order_[r].value()) +
                                " out of range");
      if (rank_[id] != -1)
        throw PreconditionError("duplicate preference entry " +
                                std::to_string(order_[r].value()));
      rank_[id] = static_cast<std::int32_t>(r);
    }
  }

  const std::vector<IdT>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t opposite_count() const { return rank_.size(); }

  IdT at(std::size_t r) const { return order_[r]; }

  bool contains(IdT id) const { return rank_[id] != -1; }

  // Rank of `id`, or -1 when blacklisted.
  std::int32_t rank_of(IdT id) const { return rank_[id]; }

  // True iff `a` is listed and either `b` is absent or `a` ranks strictly
  // better. Models "any listed partner beats being unmatched, nothing beats
  // a blacklisted partner".
  bool prefers(IdT a, IdT b) const {
    const std::int32_t ra = rank_[a];
    if (ra == -1) return false;
    const std::int32_t rb = rank_[b];
    return rb == -1 || ra < rb;
  }

  // Everyone absent from the list, ascending.
  std::vector<IdT> blacklist() const {
    std::vector<IdT> out;
    for (std::size_t id = 0; id < rank_.size(); ++id)
      if (rank_[id] == -1) out.push_back(IdT(id));
    return out;
  }

  std::size_t blacklist_size() const { return rank_.size() - order_.size(); }

  friend bool operator==(const RankedList& a, const RankedList& b) {
    return a.order_ == b.order_ && a.rank_.size() == b.rank_.size();
  }

 private:
  std::vector<IdT> order_;
  std::vector<std::int32_t> rank_;  // indexed by opposite-side id
};

using WomanList = RankedList<ManId>;    // a woman's ranking of men
using ManList = RankedList<WomanId>;    // a man's ranking of women

// ---------------------------------------------------------------------------
// Profile: one RankedList per participant of one side.

template <class IdT>
class Profile {
 public:
  Profile() = default;
  Profile(std::size_t side_count, std::size_t opposite_count)
      : lists_(side_count), opposite_count_(opposite_count) {
    for (auto& l : lists_) l = RankedList<IdT>({}, opposite_count);
  }

  std::size_t size() const { return lists_.size(); }
  std::size_t opposite_count() const { return opposite_count_; }

  const RankedList<IdT>& operator[](std::size_t i) const { return lists_[i]; }

  // Replaces one participant's list (validates against opposite side size).
  void set_list(std::size_t i, std::vector<IdT> order) {
    lists_[i] = RankedList<IdT>(std::move(order), opposite_count_);
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.opposite_count_ == b.opposite_count_ && a.lists_ == b.lists_;
  }

 private:
  std::vector<RankedList<IdT>> lists_;
  std::size_t opposite_count_ = 0;
};

using WomenProfile = Profile<ManId>;   // indexed by WomanId
using MenProfile = Profile<WomanId>;   // indexed by ManId

// ---------------------------------------------------------------------------
// Matching: a partial one-to-one map between the sides.
// Both directions kept in sync; -1 = unmatched.

class Matching {
 public:
  Matching() = default;
  Matching(std::size_t n_women, std::size_t n_men)
      : w2m_(n_women, -1), m2w_(n_men, -1) {}

  std::size_t n_women() const { return w2m_.size(); }
  std::size_t n_men() const { return m2w_.size(); }

  bool matched(WomanId w) const { return w2m_[w] != -1; }
  bool matched(ManId m) const { return m2w_[m] != -1; }

  std::optional<ManId> man_of(WomanId w) const {
    if (w2m_[w] == -1) return std::nullopt;
    return ManId(w2m_[w]);
  }
  std::optional<WomanId> woman_of(ManId m) const {
    if (m2w_[m] == -1) return std::nullopt;
    return WomanId(m2w_[m]);
  }

  // Pairs `w` with `m`; both must currently be unmatched.
  void link(WomanId w, ManId m) {
    if (w2m_[w] != -1 || m2w_[m] != -1)
      throw PreconditionError("link on already-matched participant");
    w2m_[w] = m.value();
    m2w_[m] = w.value();
  }

  void unlink(WomanId w) {
    if (w2m_[w] == -1) return;
    m2w_[static_cast<std::size_t>(w2m_[w])] = -1;
    w2m_[w] = -1;
  }
  void unlink(ManId m) {
    if (m2w_[m] == -1) return;
    w2m_[static_cast<std::size_t>(m2w_[m])] = -1;
    m2w_[m] = -1;
  }

  // Number of matched pairs.
  std::size_t size() const {
    std::size_t n = 0;
    for (auto v : w2m_)
      if (v != -1) ++n;
    return n;
  }

  std::vector<WomanId> matched_women() const {
    std::vector<WomanId> out;
    for (std::size_t w = 0; w < w2m_.size(); ++w)
      if (w2m_[w] != -1) out.push_back(WomanId(w));
    return out;
  }
  std::vector<ManId> matched_men() const {
    std::vector<ManId> out;
    for (std::size_t m = 0; m < m2w_.size(); ++m)
      if (m2w_[m] != -1) out.push_back(ManId(m));
    return out;
  }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.w2m_ == b.w2m_ && a.m2w_ == b.m2w_;
  }

 private:
  std::vector<std::int32_t> w2m_;
  std::vector<std::int32_t> m2w_;
};

// ---------------------------------------------------------------------------
// Instance: the full market.

struct Instance {
  std::size_t n_women = 0;
  std::size_t n_men = 0;
  WomenProfile prefs_w;  // women ranking men
  MenProfile prefs_m;    // men ranking women

  Instance() = default;
  Instance(std::size_t nw, std::size_t nm)
      : n_women(nw), n_men(nm), prefs_w(nw, nm), prefs_m(nm, nw) {}

  // Cross-checks counts and profile shapes; throws PreconditionError.
  void validate() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_women == b.n_women && a.n_men == b.n_men &&
           a.prefs_w == b.prefs_w && a.prefs_m == b.prefs_m;
  }
};

enum class Side { Women, Men };

// True iff no matched participant on `side` is paired with someone absent
// from their list. Throws MalformedStateError if the matching's shape does
// not fit the instance.
bool is_rational(const Instance& inst, const Matching& mu, Side side);

// Swaps the two sides (women become proposers' targets and vice versa).
Instance flipped(const Instance& inst);

// Transposes a matching between an instance and its flipped counterpart.
Matching flip_matching(const Matching& mu);

}  // namespace matching

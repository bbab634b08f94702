#include "matching/io.hpp"

#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace matching {
namespace {

// Line reader that skips comments/blank lines and tracks line numbers.
class LineSource {
 public:
  explicit LineSource(std::istream& in) : in_(in) {}

  // Next meaningful line; false at EOF.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++lineno_;
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      if (raw[b] == '#') continue;
      out = raw;
      return true;
    }
    return false;
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::vector<long long> parse_ints(const std::string& s, std::size_t lineno) {
  std::vector<long long> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected integer, got '" + tok + "'");
    }
  }
  return out;
}

// Parses one "W 3: 1 0 2" style line; checks label letter and running index.
template <class IdT>
std::vector<IdT> parse_pref_line(const std::string& line, std::size_t lineno,
                                 char label, std::size_t expect_index,
                                 std::size_t opposite_count) {
  std::istringstream iss(line);
  std::string tag;
  iss >> tag;
  if (tag.size() != 1 || tag[0] != label)
    throw ParseError(lineno, std::string("expected '") + label + "' line");
  std::string idx_tok;
  iss >> idx_tok;
  bool colon_consumed = false;
  if (!idx_tok.empty() && idx_tok.back() == ':') {
    idx_tok.pop_back();
    colon_consumed = true;
  }
  long long idx = -1;
  try {
    idx = std::stoll(idx_tok);
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad participant index '" + idx_tok + "'");
  }
  if (idx != static_cast<long long>(expect_index))
    throw ParseError(lineno, std::string(1, label) + " lines out of order: expected " +
                                 std::to_string(expect_index) + ", got " +
                                 std::to_string(idx));
  // The colon may be glued to the index or stand alone.
  std::string rest;
  std::getline(iss, rest);
  std::size_t start = 0;
  if (!colon_consumed) {
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw ParseError(lineno, "missing ':' after participant index");
    start = colon + 1;
  }
  std::vector<IdT> order;
  std::vector<std::uint8_t> seen(opposite_count, 0);
  for (long long v : parse_ints(rest.substr(start), lineno)) {
    if (v < 0 || v >= static_cast<long long>(opposite_count))
      throw ParseError(lineno, "id " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)])
      throw ParseError(lineno, "duplicate id " + std::to_string(v));
    seen[static_cast<std::size_t>(v)] = 1;
    order.push_back(IdT(static_cast<std::int32_t>(v)));
  }
  return order;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  LineSource src(in);
  std::string line;
  if (!src.next(line)) throw ParseError(src.lineno() + 1, "missing header line");
  auto header = parse_ints(line, src.lineno());
  if (header.size() != 2 || header[0] < 0 || header[1] < 0)
    throw ParseError(src.lineno(), "header must be '<n_women> <n_men>'");
  Instance inst(static_cast<std::size_t>(header[0]),
                static_cast<std::size_t>(header[1]));

  for (std::size_t w = 0; w < inst.n_women; ++w) {
    if (!src.next(line))
      throw ParseError(src.lineno() + 1, "missing W line for woman " + std::to_string(w));
    inst.prefs_w.set_list(
        w, parse_pref_line<ManId>(line, src.lineno(), 'W', w, inst.n_men));
  }
  for (std::size_t m = 0; m < inst.n_men; ++m) {
    if (!src.next(line))
      throw ParseError(src.lineno() + 1, "missing M line for man " + std::to_string(m));
    inst.prefs_m.set_list(
        m, parse_pref_line<WomanId>(line, src.lineno(), 'M', m, inst.n_women));
  }
  if (src.next(line)) throw ParseError(src.lineno(), "trailing content after instance");
  return inst;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream iss(text);
  return parse_instance(iss);
}

Matching parse_matching(std::istream& in, std::size_t n_women, std::size_t n_men) {
  LineSource src(in);
  Matching mu(n_women, n_men);
  std::string line;
  while (src.next(line)) {
    auto ids = parse_ints(line, src.lineno());
    if (ids.size() != 2)
      throw ParseError(src.lineno(), "matching line must be '<w-id> <m-id>'");
    if (ids[0] < 0 || ids[0] >= static_cast<long long>(n_women))
      throw ParseError(src.lineno(), "woman id " + std::to_string(ids[0]) + " out of range");
    if (ids[1] < 0 || ids[1] >= static_cast<long long>(n_men))
      throw ParseError(src.lineno(), "man id " + std::to_string(ids[1]) + " out of range");
    WomanId w(static_cast<std::int32_t>(ids[0]));
    ManId m(static_cast<std::int32_t>(ids[1]));
    if (mu.matched(w) || mu.matched(m))
      throw ParseError(src.lineno(), "participant matched twice");
    mu.link(w, m);
  }
  return mu;
}

Matching parse_matching_string(const std::string& text, std::size_t n_women,
                               std::size_t n_men) {
  std::istringstream iss(text);
  return parse_matching(iss, n_women, n_men);
}

WomenProfile parse_women_profile(std::istream& in, std::size_t n_women,
                                 std::size_t n_men) {
  LineSource src(in);
  WomenProfile prof(n_women, n_men);
  std::string line;
  for (std::size_t w = 0; w < n_women; ++w) {
    if (!src.next(line))
      throw ParseError(src.lineno() + 1, "missing W line for woman " + std::to_string(w));
    prof.set_list(w, parse_pref_line<ManId>(line, src.lineno(), 'W', w, n_men));
  }
  if (src.next(line)) throw ParseError(src.lineno(), "trailing content after profile");
  return prof;
}

WomenProfile parse_women_profile_string(const std::string& text,
                                        std::size_t n_women, std::size_t n_men) {
  std::istringstream iss(text);
  return parse_women_profile(iss, n_women, n_men);
}

namespace {

template <class IdT>
void append_pref_line(std::string& out, char label, std::size_t i,
                      const RankedList<IdT>& list) {
  out += label;
  out += ' ';
  out += std::to_string(i);
  out += ':';
  for (IdT id : list.order()) {
    out += ' ';
    out += std::to_string(id.value());
  }
  out += '\n';
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  std::string out = std::to_string(inst.n_women) + " " + std::to_string(inst.n_men) + "\n";
  for (std::size_t w = 0; w < inst.n_women; ++w)
    append_pref_line(out, 'W', w, inst.prefs_w[w]);
  for (std::size_t m = 0; m < inst.n_men; ++m)
    append_pref_line(out, 'M', m, inst.prefs_m[m]);
  return out;
}

std::string serialize_matching(const Matching& mu) {
  std::string out;
  for (std::size_t w = 0; w < mu.n_women(); ++w) {
    if (auto m = mu.man_of(WomanId(w))) {
      out += std::to_string(w);
      out += ' ';
      out += std::to_string(m->value());
      out += '\n';
    }
  }
  return out;
}

std::string serialize_women_profile(const WomenProfile& prof) {
  std::string out;
  for (std::size_t w = 0; w < prof.size(); ++w)
    append_pref_line(out, 'W', w, prof[w]);
  return out;
}

}  // namespace matching

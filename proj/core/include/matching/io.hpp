// Text formats.
//
// Instance (UTF-8, line based, '#' starts a comment line):
//   <n_women> <n_men>
//   W <i>: <man ids, most preferred first>     (one line per woman, in order)
//   M <j>: <woman ids, most preferred first>   (one line per man, in order)
// An empty tail after the colon means the participant blacklists everyone.
//
// Matching: one `<w-id> <m-id>` line per pair, any order; unmatched
// participants omitted.
//
// Women-profile: just the `W <i>: ...` lines (used for synthesized lists).
//
// Parsing is strict: duplicate ids, out-of-range ids, missing lines and
// trailing garbage all raise ParseError with a 1-based line number.

#pragma once

#include <iosfwd>
#include <string>

#include "matching/types.hpp"

namespace matching {

Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);

Matching parse_matching(std::istream& in, std::size_t n_women, std::size_t n_men);
Matching parse_matching_string(const std::string& text, std::size_t n_women,
                               std::size_t n_men);

WomenProfile parse_women_profile(std::istream& in, std::size_t n_women,
                                 std::size_t n_men);
WomenProfile parse_women_profile_string(const std::string& text,
                                        std::size_t n_women, std::size_t n_men);

std::string serialize_instance(const Instance& inst);
std::string serialize_matching(const Matching& mu);
std::string serialize_women_profile(const WomenProfile& prof);

}  // namespace matching

#pragma once

/**
 * @file expr.hpp
 * @brief Text forms of group elements, G-data files and tree words.
 *
 * Element words: basis names (`a`, `t12`, `[a,b]`), `1`, products with `*`,
 * integer powers `x^-2`, parentheses and commutators `[x,y]` and
 * left-normed `[x,y,z] = [[x,y],z]`.  A bracket that spells a basis name
 * evaluates to the commutator, which for the zoo groups is that basis
 * element.
 *
 * G-data files:
 *
 *   # comment
 *   group n34
 *   part
 *   a^2 -> a
 *   b -> b
 *   part
 *   ...
 *
 * Each part lists generators of its domain with their images.
 */

#include "nilself/selfsim.hpp"

#include <istream>
#include <string>

namespace nilself {

/// Throws std::invalid_argument on syntax errors or unknown names.
GroupElement parse_element(PresentationPtr const &g, std::string const &text);

struct GDataFile {
  GroupSpec spec;
  PresentationPtr group;
  GData data;
};
/// `expected` is used when the file has no `group` line; a conflicting line throws.
GDataFile parse_gdata(std::istream &in, std::optional<GroupSpec> const &expected = std::nullopt);

/// "0110" for alphabets of at most 10 letters, otherwise "3.0.12"; both
/// forms are accepted for small alphabets.
std::vector<Letter> parse_tree_word(std::string const &text, std::size_t alphabet);
std::string format_tree_word(std::vector<Letter> const &w, std::size_t alphabet);

} // namespace nilself

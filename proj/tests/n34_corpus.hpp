#pragma once

// Valid G-data on n34: automorphisms, trivial and projection maps, power
// scalings on finite-index subgroups, central twists and multi-part mixes.

#include "nilself/expr.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testing_support {

struct CorpusEntry {
  std::string name;
  nilself::GData data;
};

inline nilself::VirtualEndomorphism by_pairs(nilself::PresentationPtr const &g,
                                             std::vector<std::pair<std::string, std::string>> const &pairs)
{
  std::vector<std::pair<nilself::GroupElement, nilself::GroupElement>> p;
  for (auto const &[x, y] : pairs)
    p.emplace_back(nilself::parse_element(g, x), nilself::parse_element(g, y));
  return nilself::VirtualEndomorphism::from_pairs(g, p);
}

inline std::vector<CorpusEntry> n34_corpus()
{
  using namespace nilself;
  auto g = make_group(parse_group_spec("n34"));
  auto el = [&](std::string const &w) { return parse_element(g, w); };
  auto inner = [&](std::string const &w) { return Endomorphism::inner(g, el(w)); };
  auto identity = Endomorphism::identity(g);
  auto halving = by_pairs(g, {{"a^2", "a"}, {"b", "1"}, {"c", "1"}, {"d", "1"}});

  std::vector<CorpusEntry> c;
  c.push_back({"identity", GData({identity.as_virtual()})});
  c.push_back({"inner by a", GData({inner("a").as_virtual()})});
  c.push_back({"trivial", GData({Endomorphism::trivial(g).as_virtual()})});
  c.push_back({"inner by b*c^-1*d", GData({inner("b*c^-1*d").as_virtual()})});
  c.push_back({"identity on K(2,2,1,3)", GData({identity.restrict_to(n34_subgroup_K(g, 2, 2, 1, 3))})});
  c.push_back({"inner by c on K(3,1,2,1)", GData({inner("c").restrict_to(n34_subgroup_K(g, 3, 1, 2, 1))})});
  c.push_back({"halving a^2 -> a", GData({halving})});
  c.push_back({"central-valued x -> [a,b]^e_a(x)",
               GData({by_pairs(g, {{"a", "[a,b]"}, {"b", "1"}, {"c", "1"}, {"d", "1"}})})});
  c.push_back({"projection x -> a^e_a(x)", GData({by_pairs(g, {{"a", "a"}, {"b", "1"}, {"c", "1"}, {"d", "1"}})})});
  c.push_back({"central twist", GData({by_pairs(g, {{"a", "a*[a,b]"}, {"b", "b"}, {"c", "c*[c,d]^2"}, {"d", "d"}})})});
  c.push_back({"scaled projection b^2 -> c on K(1,2,1,1)",
               GData({by_pairs(g, {{"a", "1"}, {"b^2", "c"}, {"c", "1"}, {"d", "1"}})})});
  c.push_back({"identity on K(2,1,1,1) + inner by d",
               GData({identity.restrict_to(n34_subgroup_K(g, 2, 1, 1, 1)), inner("d").as_virtual()})});
  c.push_back({"halving + inner by b on <a,b^2,c,d>",
               GData({halving, inner("b").restrict_to(n34_subgroup_K(g, 1, 2, 1, 1))})});
  c.push_back({"trivial + identity + inner by c",
               GData({Endomorphism::trivial(g).as_virtual(), identity.as_virtual(), inner("c").as_virtual()})});
  return c;
}

} // namespace testing_support

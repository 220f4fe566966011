#pragma once

#include "nilself/pcgroup.hpp"

#include <random>

namespace testing_support {

inline nilself::GroupElement random_element(nilself::PresentationPtr const &g, std::mt19937 &rng, int lo, int hi)
{
  std::uniform_int_distribution<int> dist(lo, hi);
  nilself::Vec v(g->size());
  for (auto &x : v)
    x = dist(rng);
  return nilself::GroupElement(g, v);
}

inline nilself::GroupElement gen(nilself::PresentationPtr const &g, std::string const &name, int e = 1)
{
  return nilself::GroupElement::generator(g, g->index_of(name).value(), e);
}

inline nilself::GroupElement element(nilself::PresentationPtr const &g, std::vector<long long> const &e)
{
  nilself::Vec v(e.begin(), e.end());
  return nilself::GroupElement(g, v);
}

} // namespace testing_support

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilself/tree.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace nilself;

namespace {

// Binary adding machine: state 1 swaps the first letter and carries on 1.
TreeAutomorphism adding_machine()
{
  auto a = std::make_shared<FiniteAutomaton>(
      2, std::vector<FiniteAutomaton::State>{{{0, 1}, {0, 0}}, {{1, 0}, {0, 1}}});
  return TreeAutomorphism(a, 1);
}

TreeAutomorphism random_automaton(std::mt19937 &rng, std::size_t m, std::size_t n)
{
  std::vector<FiniteAutomaton::State> states;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < n; ++s) {
    FiniteAutomaton::State st;
    st.perm.resize(m);
    std::iota(st.perm.begin(), st.perm.end(), Letter(0));
    std::shuffle(st.perm.begin(), st.perm.end(), rng);
    for (std::size_t x = 0; x < m; ++x)
      st.next.push_back(pick(rng));
    states.push_back(st);
  }
  return TreeAutomorphism(std::make_shared<FiniteAutomaton>(m, states), pick(rng));
}

std::vector<std::vector<Letter>> all_words(std::size_t m, std::size_t len)
{
  std::vector<std::vector<Letter>> out{{}};
  for (std::size_t l = 0; l < len; ++l) {
    std::vector<std::vector<Letter>> next;
    for (auto const &w : out)
      for (Letter x = 0; x < m; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    out = next;
  }
  return out;
}

// Oracle: the vertex permutation at word u, read off from act_on_word only.
std::vector<Letter> vertex_permutation(TreeAutomorphism const &a, std::vector<Letter> const &u)
{
  std::vector<Letter> perm;
  for (Letter x = 0; x < a.alphabet_size(); ++x) {
    auto w = u;
    w.push_back(x);
    perm.push_back(a.act_on_word(w).back());
  }
  return perm;
}

std::size_t little_endian_value(std::vector<Letter> const &w)
{
  std::size_t v = 0;
  for (std::size_t i = w.size(); i-- > 0;)
    v = 2 * v + w[i];
  return v;
}

} // namespace

TEST_CASE("adding machine increments little-endian words")
{
  auto a = adding_machine();
  CHECK(a.act_on_word({0, 0, 0}) == std::vector<Letter>{1, 0, 0});
  CHECK(a.act_on_word({1, 1, 0}) == std::vector<Letter>{0, 0, 1});
  for (auto const &w : all_words(2, 3))
    CHECK(little_endian_value(a.act_on_word(w)) == (little_endian_value(w) + 1) % 8);
  CHECK(states(a, 5).size() == 2);
  CHECK(least_nontrivial_depth(a, 4) == std::size_t(1));
}

TEST_CASE("identity acts trivially")
{
  auto e = TreeAutomorphism::identity(3);
  for (auto const &w : all_words(3, 3))
    CHECK(e.act_on_word(w) == w);
  CHECK(trivial_to_depth(e, 6));
  CHECK(portrait(e, 3).is_trivial());
  CHECK_FALSE(least_nontrivial_depth(e, 6).has_value());
}

TEST_CASE("powers of the adding machine: 2^k first moves at depth k+1")
{
  auto a = adding_machine();
  auto p = a;
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(least_nontrivial_depth(p, 10) == k + 1);
    CHECK(trivial_to_depth(p, k));
    p = compose(p, p);
  }
}

TEST_CASE("portrait entries agree with the action on words")
{
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto a = random_automaton(rng, 3, 4);
    std::size_t d = 3;
    auto p = portrait(a, d);
    REQUIRE(p.vertex_count() == 1 + 3 + 9);
    std::size_t v = 0;
    for (std::size_t len = 0; len < d; ++len)
      for (auto const &u : all_words(3, len)) {
        auto perm = p.permutation(v++);
        CHECK(std::vector<Letter>(perm.begin(), perm.end()) == vertex_permutation(a, u));
      }
  }
}

TEST_CASE("composition and inverse agree with word maps")
{
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto a = random_automaton(rng, 3, 3), b = random_automaton(rng, 3, 3);
    auto ab = compose(a, b);
    auto ai = inverse(a);
    for (auto const &w : all_words(3, 4)) {
      CHECK(ab.act_on_word(w) == b.act_on_word(a.act_on_word(w)));
      CHECK(ai.act_on_word(a.act_on_word(w)) == w);
    }
    CHECK(compose_to_depth(a, b, 4) == portrait(ab, 4));
    CHECK(compose(portrait(a, 4), portrait(b, 4)) == portrait(ab, 4));
    CHECK(trivial_to_depth(compose(a, ai), 5));
    CHECK(equal_to_depth(compose(ab, inverse(b)), a, 5));
  }
}

TEST_CASE("alphabet mismatch is rejected")
{
  CHECK_THROWS_AS(compose(adding_machine(), TreeAutomorphism::identity(3)), std::invalid_argument);
  CHECK_THROWS_AS(compose(portrait(adding_machine(), 2), portrait(adding_machine(), 3)), std::invalid_argument);
  CHECK_THROWS_AS(adding_machine().act_on_word({0, 2}), std::out_of_range);
}

TEST_CASE("portrait formats")
{
  auto p = portrait(adding_machine(), 3);
  CHECK(p.to_text() == "portrait alphabet=2 depth=3\n  root: (0 1)\n  1: (0 1)\n  11: (0 1)\n");
  auto j = p.to_json();
  CHECK(j["alphabet"] == 2);
  CHECK(j["depth"] == 3);
  CHECK(p.to_dot().find("digraph portrait") == 0);
  CHECK(portrait(TreeAutomorphism::identity(2), 2).to_text() == "portrait alphabet=2 depth=2\n  trivial\n");
  CHECK_THROWS_AS(Portrait(2, 1, {0, 0}), std::invalid_argument);
}

TEST_CASE("automaton export and import round trip")
{
  std::mt19937 rng(9);
  auto a = adding_machine();
  auto j = export_automaton(a, 16);
  CHECK(j["states"].size() == 2);
  CHECK(j["truncated"] == false);
  CHECK(equal_to_depth(import_automaton(j), a, 8));
  for (int t = 0; t < 10; ++t) {
    auto b = random_automaton(rng, 4, 5);
    CHECK(equal_to_depth(import_automaton(export_automaton(b, 64)), b, 4));
  }
  auto truncated = export_automaton(random_automaton(rng, 4, 5), 1);
  if (truncated["truncated"] == true)
    CHECK_THROWS_AS(import_automaton(truncated), std::invalid_argument);
}

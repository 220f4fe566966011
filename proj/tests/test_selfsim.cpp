#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilself/expr.hpp"
#include "nilself/selfsim.hpp"
#include "n34_corpus.hpp"
#include "support.hpp"

#include <set>
#include <sstream>

using namespace nilself;
using testing_support::gen;
using testing_support::random_element;

namespace {

RepresentationPtr adding_machine_rep()
{
  auto z = free_abelian(1);
  return build_cosettree_rep(Endomorphism(z, {gen(z, "a", 2)}));
}

std::size_t little_endian_value(std::vector<Letter> const &w)
{
  std::size_t v = 0;
  for (std::size_t i = w.size(); i-- > 0;)
    v = 2 * v + w[i];
  return v;
}

std::vector<Letter> binary_word(std::size_t v, std::size_t len)
{
  std::vector<Letter> w;
  for (std::size_t i = 0; i < len; ++i, v /= 2)
    w.push_back(static_cast<Letter>(v % 2));
  return w;
}

std::size_t permutation_order(std::vector<Letter> const &p)
{
  std::size_t order = 1;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j], ++len)
      seen[j] = true;
    order = std::lcm(order, len);
  }
  return order;
}

struct Canonical {
  std::string spec;
  RepresentationPtr rep;
};

std::vector<Canonical> canonical_reps()
{
  std::vector<Canonical> out;
  for (std::string s : {"free_abelian:1", "free_abelian:3", "heisenberg", "two_gen_c3:1,0", "ut:3", "ut:4", "n34"}) {
    auto spec = parse_group_spec(s);
    out.push_back({s, build_representation(canonical_gdata(spec, make_group(spec)))});
  }
  return out;
}

} // namespace

TEST_CASE("virtual endomorphism examples")
{
  auto z = free_abelian(1);
  auto half = make_vendo(Subgroup::generated_by(z, {gen(z, "a", 2)}), {gen(z, "a")});
  CHECK(apply(half, gen(z, "a", 4)) == gen(z, "a", 2));
  CHECK_THROWS_AS(apply(half, gen(z, "a", 3)), std::invalid_argument);

  auto h = heisenberg();
  auto id = Endomorphism::identity(h).as_virtual();
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(h, rng, -3, 3);
    CHECK(apply(id, x) == x);
  }

  // [a^2, b^2] = [a,b]^4 would have to map to [a,b]
  CHECK_THROWS_AS(VirtualEndomorphism::from_pairs(
                      h, {{gen(h, "a", 2), gen(h, "a")}, {gen(h, "b", 2), gen(h, "b")}, {gen(h, "[a,b]"), gen(h, "[a,b]")}}),
                  std::domain_error);
  CHECK_THROWS_AS(make_vendo(Subgroup::generated_by(h, {gen(h, "a")}), {gen(h, "a")}), std::domain_error);
}

TEST_CASE("adding machine from the doubling endomorphism of Z")
{
  auto rep = adding_machine_rep();
  REQUIRE(rep->alphabet_size() == 2);
  auto z = rep->presentation();
  auto one = rep->lambda(gen(z, "a"));
  for (std::size_t v = 0; v < 8; ++v)
    CHECK(little_endian_value(one.act_on_word(binary_word(v, 3))) == (v + 1) % 8);
  CHECK(one.act_on_word({0, 0, 0}) == std::vector<Letter>{1, 0, 0});
  CHECK(states(one, 6).size() == 2);
  CHECK(trivial_to_depth(rep->lambda(GroupElement(z)), 8));
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(least_nontrivial_depth(rep->lambda(gen(z, "a", 1 << k)), 10) == k + 1);
  auto report = faithful_to_depth(*rep, {gen(z, "a"), gen(z, "a", 8), GroupElement(z)}, 8);
  REQUIRE(report.entries.size() == 2);
  CHECK(report.entries[0].depth == std::size_t(1));
  CHECK(report.entries[1].depth == std::size_t(4));
}

TEST_CASE("Heisenberg squaring map: root permutation of lambda(a) on 16 letters")
{
  auto g = heisenberg();
  auto psi = squaring_endomorphism(g);
  auto rep = build_cosettree_rep(psi);
  REQUIRE(rep->alphabet_size() == 16);
  // Oracle: least k with t a^k t^-1 in the image for every coset representative t.
  auto h = psi.image();
  std::size_t k = 1;
  auto covers = [&](std::size_t e) {
    for (auto const &t : h.transversal())
      if (!h.contains(t * gen(g, "a", static_cast<int>(e)) * t.inverse()))
        return false;
    return true;
  };
  while (!covers(k))
    ++k;
  CHECK(k == 4);
  CHECK(permutation_order(rep->lambda(gen(g, "a")).root_permutation()) == k);
  CHECK_THROWS_AS(build_cosettree_rep(Endomorphism::from_generator_images(g, {gen(g, "a", 2), gen(g, "a")})),
                  std::domain_error);
}

TEST_CASE("portraits are multiplicative and invert")
{
  std::mt19937 rng(17);
  for (auto const &[spec, rep] : canonical_reps()) {
    INFO(spec);
    auto g = rep->presentation();
    for (int t = 0; t < 25; ++t) {
      auto x = random_element(g, rng, -3, 3), y = random_element(g, rng, -3, 3);
      CHECK(compose_to_depth(rep->lambda(x), rep->lambda(y), 3) == portrait(rep->lambda(x * y), 3));
      CHECK(trivial_to_depth(compose(rep->lambda(x), rep->lambda(x.inverse())), 3));
    }
  }
}

TEST_CASE("root permutation is right multiplication on the transversal")
{
  std::mt19937 rng(19);
  for (auto const &[spec, rep] : canonical_reps()) {
    INFO(spec);
    auto g = rep->presentation();
    auto const &f = rep->data().parts().front();
    auto t = f.domain().transversal();
    REQUIRE(t.front().is_identity());
    for (int s = 0; s < 10; ++s) {
      auto x = random_element(g, rng, -3, 3);
      auto sigma = rep->lambda(x).root_permutation();
      for (std::size_t j = 0; j < t.size(); ++j)
        CHECK(sigma[j] == f.domain().coset_of(t[j] * x));
    }
  }
}

TEST_CASE("level-one states are lambda of the recomputed sections")
{
  std::mt19937 rng(23);
  for (auto const &[spec, rep] : canonical_reps()) {
    INFO(spec);
    auto g = rep->presentation();
    auto const &f = rep->data().parts().front();
    auto t = f.domain().transversal();
    for (int s = 0; s < 5; ++s) {
      auto x = random_element(g, rng, -2, 2);
      auto lx = rep->lambda(x);
      for (std::size_t j = 0; j < t.size(); ++j) {
        std::size_t jj = f.domain().coset_of(t[j] * x);
        auto section = t[j] * x * t[jj].inverse();
        REQUIRE(f.domain().contains(section));
        CHECK(equal_to_depth(lx.state(static_cast<Letter>(j)), rep->lambda(f.apply(section)), 2));
      }
    }
  }
}

TEST_CASE("multi-part G-data gives a homomorphism to tree automorphisms")
{
  std::mt19937 rng(29);
  for (auto const &entry : testing_support::n34_corpus()) {
    if (entry.data.parts().size() < 2)
      continue;
    INFO(entry.name);
    auto rep = build_representation(entry.data);
    auto g = rep->presentation();
    for (int t = 0; t < 10; ++t) {
      auto x = random_element(g, rng, -2, 2), y = random_element(g, rng, -2, 2);
      CHECK(compose_to_depth(rep->lambda(x), rep->lambda(y), 2) == portrait(rep->lambda(x * y), 2));
    }
  }
}

TEST_CASE("psi(2,-1,1) on the free class-3 group detects random elements and carries the certificate")
{
  auto g = free_nil_c3_r2();
  auto rep = build_cosettree_rep(psi_endo(g, 2, -1, 1));
  std::mt19937 rng(31);
  std::vector<GroupElement> sample;
  while (sample.size() < 20) {
    auto x = random_element(g, rng, -2, 2);
    if (!x.is_identity())
      sample.push_back(x);
  }
  auto report = faithful_to_depth(*rep, sample, 6);
  CHECK(report.all_detected());
  REQUIRE(report.certificate.has_value());
  CHECK(report.certificate->holds);
  CHECK(report.certificate->m1 == 2);
}

TEST_CASE("divisibility certificate examples")
{
  auto g = heisenberg();
  auto psi = Endomorphism::from_generator_images(g, {gen(g, "a", 2), gen(g, "b", 3)});
  auto c = divisibility_certificate(psi, 3);
  CHECK(c.m1 == 1);
  CHECK(c.holds);
  auto sq = divisibility_certificate(squaring_endomorphism(g), 4);
  CHECK(sq.m1 == 2);
  CHECK(sq.holds);
}

TEST_CASE("invariant_check examples")
{
  auto g = n34();
  Subgroup center = Subgroup::generated_by(g, {gen(g, "[a,b]"), gen(g, "[c,d]"), gen(g, "[a,[a,d]]"),
                                               gen(g, "[a,[b,c]]"), gen(g, "[a,[b,d]]")});
  CHECK(invariant_check(Endomorphism::inner(g, gen(g, "b")).as_virtual(), center));

  auto z = free_abelian(1);
  auto half = make_vendo(Subgroup::generated_by(z, {gen(z, "a", 2)}), {gen(z, "a")});
  CHECK_FALSE(invariant_check(half, Subgroup::generated_by(z, {gen(z, "a", 4)})));
  CHECK_THROWS_AS(invariant_check(half, Subgroup::whole(z)), std::invalid_argument);
}

TEST_CASE("nf_matrix examples")
{
  auto g = n34();
  std::array<Int, 4> ones{1, 1, 1, 1};
  CHECK(nf_matrix(Endomorphism::identity(g).as_virtual(), ones) == IntMatrix::identity(4));
  CHECK(nf_matrix(Endomorphism::inner(g, gen(g, "a")).as_virtual(), ones) == IntMatrix::identity(4));
  CHECK(nf_matrix(Endomorphism::trivial(g).as_virtual(), ones).is_zero());
  auto half = testing_support::by_pairs(g, {{"a^2", "a"}, {"b", "1"}, {"c", "1"}, {"d", "1"}});
  CHECK(nf_matrix(half, {2, 1, 1, 1}) == IntMatrix{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(nf_matrix(half, ones), std::invalid_argument);
}

TEST_CASE("invertible N_f forces the identity on the abelianization")
{
  // Inner automorphisms and central twists, restricted to random K.
  auto g = n34();
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> power(1, 3);
  std::size_t invertible = 0;
  for (int t = 0; t < 30; ++t) {
    std::array<Int, 4> p{power(rng), power(rng), power(rng), power(rng)};
    auto k = n34_subgroup_K(g, p[0], p[1], p[2], p[3]);
    auto x = random_element(g, rng, -2, 2);
    std::vector<GroupElement> w1;
    for (std::size_t i = 0; i < 4; ++i) {
      auto z = GroupElement(g);
      if (t % 2)
        z = random_element(g, rng, -1, 1);
      Vec central(g->size());
      for (std::size_t l = 8; l < 13; ++l)
        central[l] = z[l];
      w1.push_back(conjugate(GroupElement::generator(g, i), x) * GroupElement(g, central));
    }
    auto f = Endomorphism::from_generator_images(g, w1).restrict_to(k);
    auto nf = nf_matrix(f, p);
    if (det(nf) == 0)
      continue;
    ++invertible;
    IntMatrix expected(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      expected(i, i) = p[i];
    CHECK(nf == expected);
  }
  CHECK(invertible == 30);
}

TEST_CASE("fcore witnesses on the n34 corpus are verified independently")
{
  auto corpus = testing_support::n34_corpus();
  REQUIRE(corpus.size() >= 10);
  for (auto const &entry : corpus) {
    INFO(entry.name);
    auto r = fcore_witness(entry.data);
    REQUIRE(r.witness.has_value());
    auto const &w = *r.witness;
    auto g = w.presentation();
    CHECK(w.hirsch_length() > 0);
    for (auto const &f : entry.data.parts()) {
      CHECK(invariant_check(f, w));
      for (auto const &s : w.standard_sequence())
        CHECK(f.domain().contains(s));
    }
    for (std::size_t i = 0; i < 4; ++i)
      for (auto const &s : w.standard_sequence()) {
        CHECK(w.contains(conjugate(s, GroupElement::generator(g, i))));
        CHECK(w.contains(conjugate(s, GroupElement::generator(g, i).inverse())));
      }
    bool all_invertible = std::all_of(r.determinants.begin(), r.determinants.end(), [](Int const &d) { return d != 0; });
    if (all_invertible) {
      CHECK(r.method == "center");
      CHECK(r.pointwise_fixed);
      Subgroup zk = Subgroup::generated_by(g, [&] {
        std::vector<GroupElement> v;
        for (auto const &b : r.center_of_K.basis_vectors())
          v.emplace_back(g, b);
        return v;
      }());
      CHECK(w == zk);
    }
  }
}

TEST_CASE("fcore witness examples")
{
  auto g = n34();
  auto identity = fcore_witness(GData({Endomorphism::identity(g).as_virtual()}));
  REQUIRE(identity.witness);
  CHECK(identity.witness->hirsch_length() == 5);
  CHECK(identity.method == "center");

  auto inner = fcore_witness(GData({Endomorphism::inner(g, gen(g, "a")).as_virtual()}));
  REQUIRE(inner.witness);
  CHECK(inner.pointwise_fixed);

  auto trivial = fcore_witness(GData({Endomorphism::trivial(g).as_virtual()}));
  REQUIRE(trivial.witness);
  CHECK(trivial.method == "kernel");
  CHECK(trivial.witness->hirsch_length() == 5);
}

TEST_CASE("invariant central sublattice of the dm map does not stabilize")
{
  auto f = dm_endo(3, 2);
  auto g = f.presentation();
  Lattice start = Lattice::from_generators({f.domain().standard_sequence().back().exponents()}, g->size());
  CHECK_FALSE(invariant_central_sublattice(GData({f}), start, 20).has_value());

  auto h = heisenberg();
  auto id = Endomorphism::identity(h).as_virtual();
  Lattice z = Lattice::from_generators({gen(h, "[a,b]").exponents()}, h->size());
  auto fixed = invariant_central_sublattice(GData({id}), z, 4);
  REQUIRE(fixed.has_value());
  CHECK(*fixed == z);
}

TEST_CASE("G-data files")
{
  std::istringstream in("# halving\ngroup n34\npart\na^2 -> a\nb -> 1 # kill b\nc -> 1\nd -> 1\n");
  auto file = parse_gdata(in);
  CHECK(file.spec.to_string() == "n34");
  REQUIRE(file.data.parts().size() == 1);
  CHECK(file.data.alphabet_size() == 16);

  std::istringstream conflict("group heisenberg\npart\na -> a\n");
  CHECK_THROWS_AS(parse_gdata(conflict, parse_group_spec("n34")), std::invalid_argument);
  std::istringstream orphan("group heisenberg\na -> a\n");
  CHECK_THROWS_AS(parse_gdata(orphan), std::invalid_argument);
  std::istringstream nogroup("part\na -> a\n");
  CHECK_THROWS_AS(parse_gdata(nogroup), std::invalid_argument);
  std::istringstream bad("group heisenberg\npart\na^2 -> a\nb^2 -> b\n[a,b] -> [a,b]\n");
  CHECK_THROWS_AS(parse_gdata(bad), std::domain_error);
}

TEST_CASE("element words")
{
  auto g = free_nil_c3_r2();
  CHECK(parse_element(g, "a^2*[a,b]^-1*b") == gen(g, "a", 2) * gen(g, "[a,b]", -1) * gen(g, "b"));
  CHECK(parse_element(g, "[a,b,a]") == gen(g, "[a,b,a]"));
  CHECK(parse_element(g, "[b,a]") == gen(g, "[a,b]", -1));
  CHECK(parse_element(g, "(a*b)^-1") == (gen(g, "a") * gen(g, "b")).inverse());
  CHECK(parse_element(g, " 1 ").is_identity());
  CHECK_THROWS_AS(parse_element(g, "a^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(g, "q"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(g, "[a]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(g, "a b"), std::invalid_argument);

  CHECK(parse_tree_word("0110", 2) == std::vector<Letter>{0, 1, 1, 0});
  CHECK(parse_tree_word("3.0.12", 16) == std::vector<Letter>{3, 0, 12});
  CHECK(format_tree_word({3, 0, 12}, 16) == "3.0.12");
  CHECK_THROWS_AS(parse_tree_word("012", 2), std::invalid_argument);
}

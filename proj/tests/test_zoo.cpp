#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilself/expr.hpp"
#include "nilself/zoo.hpp"
#include "magnus.hpp"
#include "support.hpp"

#include <set>

using namespace nilself;
using testing_support::gen;
using testing_support::Magnus;
using testing_support::random_element;

namespace {

// Magnus images of the basis, built from the commutator definitions only.
std::vector<Magnus> magnus_basis(PresentationPtr const &g)
{
  std::vector<Magnus> out;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (g->weight(i) == 1) {
      out.push_back(Magnus::gen(static_cast<int>(i)));
      continue;
    }
    Magnus m = Magnus::one();
    for (auto const &f : g->definition(i))
      m = m * testing_support::magnus_commutator(out[f.left], out[f.right]).pow(to_i64(f.exponent));
    out.push_back(m);
  }
  return out;
}

Magnus magnus(GroupElement const &x, std::vector<Magnus> const &basis)
{
  Magnus m = Magnus::one();
  for (std::size_t i = 0; i < basis.size(); ++i)
    m = m * basis[i].pow(to_i64(x[i]));
  return m;
}

UTMatrix ut(std::initializer_list<std::initializer_list<long long>> rows)
{
  return UTMatrix(IntMatrix(rows));
}

IntMatrix diagonal(std::size_t n, long long m)
{
  IntMatrix d(n, n);
  long long p = 1;
  for (std::size_t i = 0; i < n; ++i, p *= m)
    d(i, i) = p;
  return d;
}

} // namespace

TEST_CASE("group spec strings")
{
  for (std::string s : {"free_abelian:3", "heisenberg", "two_gen_c3:1,0", "ut:4", "n34"})
    CHECK(parse_group_spec(s).to_string() == s);
  CHECK_THROWS_AS(parse_group_spec("klein"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("ut"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("heisenberg:2"), std::invalid_argument);

  auto z3 = make_group(parse_group_spec("free_abelian:3"));
  CHECK(z3->hirsch_length() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(commutator(GroupElement::generator(z3, i), GroupElement::generator(z3, j)).is_identity());

  auto f = make_group(parse_group_spec("two_gen_c3:0,0"));
  CHECK(f->hirsch_length() == 5);
}

TEST_CASE("n34 presentation facts")
{
  auto g = n34();
  CHECK(g->hirsch_length() == 13);
  CHECK(center_lattice(*g).rank() == 5);
  CHECK(consistency_check(*g).ok);
  auto rel = n34_defining_relators(g);
  CHECK(rel.size() == 17);
  for (auto const &[label, value] : rel) {
    INFO(label);
    CHECK(value.is_identity());
  }
}

TEST_CASE("n34 derived relations hold for every parameter tuple in [1,3]^4")
{
  auto g = n34();
  std::size_t checked = 0;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= 3; ++k)
        for (int j = 1; j <= 3; ++j)
          for (auto const &r : n34_derived_relations(g, m, n, k, j)) {
            INFO(r.label << " at " << m << n << k << j);
            CHECK(r.lhs == r.rhs);
            ++checked;
          }
  CHECK(checked == 81 * 17);
}

TEST_CASE("n34 subgroups K(m,n,k,j)")
{
  auto g = n34();
  CHECK(n34_subgroup_K(g, 1, 1, 1, 1) == Subgroup::whole(g));
  auto k = n34_subgroup_K(g, 2, 1, 1, 1);
  CHECK(k.index() == Int(16));
  CHECK_FALSE(k.contains(gen(g, "a")));
  for (auto name : {"b", "c", "d"})
    CHECK(k.contains(gen(g, name)));
  auto b1 = gen(g, "b", 2), c1 = gen(g, "c", 3);
  CHECK(commutator(b1, commutator(b1, c1)).is_identity());
  CHECK_THROWS_AS(n34_subgroup_K(g, 0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("dm endomorphism examples")
{
  auto f = dm_endo(3, 2);
  auto g = f.presentation();
  auto x = from_matrix(g, ut({{1, 2, 4}, {0, 1, 2}, {0, 0, 1}}));
  CHECK(f.domain().contains(x));
  CHECK(to_matrix(f.apply(x)) == ut({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}));
  CHECK(f.apply(GroupElement(g)).is_identity());
  CHECK(f.domain().index() == Int(16));
  CHECK_FALSE(f.domain().contains(from_matrix(g, ut({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}))));
  CHECK_THROWS_AS(dm_endo(3, 1), std::invalid_argument);
}

TEST_CASE("dm domain index agrees with coset enumeration")
{
  // Right cosets of the domain met by a box of matrices.
  auto f = dm_endo(3, 2);
  auto g = f.presentation();
  std::vector<GroupElement> reps;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -4; z <= 4; ++z) {
        auto e = from_matrix(g, ut({{1, x, z}, {0, 1, y}, {0, 0, 1}}));
        bool fresh = true;
        for (auto const &r : reps)
          fresh = fresh && !f.domain().contains(e * r.inverse());
        if (fresh)
          reps.push_back(e);
      }
  CHECK(reps.size() == 16);
}

TEST_CASE("dm endomorphism is conjugation by the diagonal matrix")
{
  std::mt19937 rng(7);
  for (std::size_t n : {3, 4})
    for (long long m : {2, 3}) {
      auto psi = dm_conjugation(n, m);
      auto f = dm_endo(n, m);
      auto g = f.presentation();
      IntMatrix d = diagonal(n, m);
      for (int t = 0; t < 40; ++t) {
        auto y = psi.apply(random_element(g, rng, -3, 3));
        REQUIRE(f.domain().contains(y));
        // f(y) = D y D^-1
        CHECK(to_matrix(f.apply(y)).matrix() * d == d * to_matrix(y).matrix());
      }
    }
}

TEST_CASE("dm domain index equals m^((n^3-n)/6) and the graded determinant")
{
  for (std::size_t n : {3, 4})
    for (int m : {2, 3}) {
      Int expected = 1;
      for (std::size_t i = 0; i < (n * n * n - n) / 6; ++i)
        expected *= m;
      CHECK(dm_endo(n, m).domain().index() == expected);
      CHECK(abs(dm_conjugation(n, m).graded_determinant()) == expected);
      CHECK(dm_endo(n, m).is_surjective());
    }
}

TEST_CASE("psi parameter formulas")
{
  CHECK(psi_params(1, 0, 0, 2) == PsiParams{2, -1, 1});
  CHECK(psi_params(0, 0, 0, 5) == PsiParams{0, 0, 0});
  CHECK(psi_params(1, 1, 1, 1) == PsiParams{1, 0, 0});
}

TEST_CASE("psi endomorphism examples")
{
  auto g = free_nil_c3_r2();
  auto id = psi_endo(g, 1, 0, 0);
  for (std::size_t i = 0; i < g->size(); ++i)
    CHECK(id.apply(GroupElement::generator(g, i)) == GroupElement::generator(g, i));

  auto psi = psi_endo(g, 2, -1, 1);
  auto AB = commutator(psi.apply(gen(g, "a")), psi.apply(gen(g, "b")));
  CHECK(AB == gen(g, "[a,b]", 4));

  auto h = two_gen_c3(1, 0);
  auto p2 = psi_endo(h, 2, 0, 0);
  auto r2 = gen(h, "[a,b,b]");
  auto image = p2.apply(r2);
  CHECK((image == r2.pow(8) || image == r2.pow(-8)));
  auto A = p2.apply(gen(h, "a")), B = p2.apply(gen(h, "b"));
  CHECK(image == commutator(commutator(A, B), B));

  CHECK_THROWS_AS(psi_endo(g, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(psi_endo(n34(), 2, 0, 0), std::invalid_argument);
}

TEST_CASE("psi commutator expansion agrees with the Magnus embedding")
{
  auto g = free_nil_c3_r2();
  auto basis = magnus_basis(g);
  auto a = Magnus::gen(0), b = Magnus::gen(1);
  auto ab = testing_support::magnus_commutator(a, b);
  for (int m1 = 1; m1 <= 3; ++m1)
    for (int m2 = -2; m2 <= 2; ++m2)
      for (int m3 = -2; m3 <= 2; ++m3) {
        auto psi = psi_endo(g, m1, m2, m3);
        auto AB = commutator(psi.apply(gen(g, "a")), psi.apply(gen(g, "b")));
        auto A = a.pow(m1) * ab.pow(m2), B = b.pow(m1) * ab.pow(m3);
        INFO(m1 << "," << m2 << "," << m3);
        CHECK(magnus(AB, basis) == testing_support::magnus_commutator(A, B));
        // [A,B] = [a,b]^(m1^2) [a,b,a]^(m1(h-m3)) [a,b,b]^(m1(m2+h)), h = m1(m1-1)/2
        int hh = m1 * (m1 - 1) / 2;
        CHECK(AB[2] == m1 * m1);
        CHECK(AB[3] == m1 * (hh - m3));
        CHECK(AB[4] == m1 * (m2 + hh));
        for (auto const &e : AB.exponents())
          CHECK(e % m1 == 0);
      }
}

TEST_CASE("collection in free class-3 groups agrees with the Magnus embedding")
{
  std::mt19937 rng(11);
  for (auto g : {free_nil_c3_r2(), free_nilpotent_c3(3)}) {
    auto basis = magnus_basis(g);
    for (int t = 0; t < 60; ++t) {
      auto x = random_element(g, rng, -2, 2), y = random_element(g, rng, -2, 2);
      CHECK(magnus(x * y, basis) == magnus(x, basis) * magnus(y, basis));
    }
  }
}

TEST_CASE("psi graded determinant")
{
  auto g = free_nil_c3_r2();
  for (int m1 = 1; m1 <= 3; ++m1) {
    Int expected = 1;
    for (int i = 0; i < 10; ++i)
      expected *= m1;
    CHECK(abs(psi_endo(g, m1, 1, -1).graded_determinant()) == expected);
  }
}

TEST_CASE("canonical endomorphisms are injective with finite-index image")
{
  for (std::string s : {"free_abelian:1", "free_abelian:3", "heisenberg", "free_nil_c3", "two_gen_c3:1,0",
                        "two_gen_c3:0,1", "two_gen_c3:2,3", "ut:3", "ut:4"}) {
    INFO(s);
    auto spec = parse_group_spec(s);
    auto g = make_group(spec);
    auto psi = canonical_endomorphism(spec, g);
    CHECK(psi.is_injective());
    auto idx = psi.image().index();
    REQUIRE(idx.has_value());
    CHECK(*idx == abs(psi.graded_determinant()));
    CHECK(*idx > 1);
  }
  auto spec = parse_group_spec("n34");
  CHECK_THROWS_AS(canonical_endomorphism(spec, make_group(spec)), std::invalid_argument);
}

TEST_CASE("squaring endomorphism")
{
  auto g = heisenberg();
  auto sq = squaring_endomorphism(g);
  CHECK(sq.apply(gen(g, "a")) == gen(g, "a", 2));
  CHECK(sq.apply(gen(g, "[a,b]")) == gen(g, "[a,b]", 4));
  CHECK(sq.image().index() == Int(16));
}

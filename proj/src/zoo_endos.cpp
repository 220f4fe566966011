#include "nilself/zoo.hpp"

#include <stdexcept>

namespace nilself {

namespace {

GroupElement named(PresentationPtr const &g, std::string const &name, Int const &e = 1)
{
  auto i = g->index_of(name);
  if (!i)
    throw std::invalid_argument("group has no generator named " + name);
  return GroupElement::generator(g, *i, e);
}

// Entry (i, j) of x multiplied by d_j / d_i, i.e. the matrix of D^-1 x D.
UTMatrix scale_entries(UTMatrix const &x, std::vector<Int> const &num, std::vector<Int> const &den)
{
  IntMatrix m = x.matrix();
  std::size_t n = x.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Int t = m(i, j) * num[j] * den[i];
      Int q = num[i] * den[j];
      if (t % q != 0)
        throw std::domain_error("diagonal conjugation leaves the integer matrices");
      m(i, j) = t / q;
    }
  return UTMatrix(m);
}

} // namespace

Endomorphism diagonal_conjugation(PresentationPtr const &ut, std::vector<Int> const &d)
{
  std::size_t n = to_matrix(GroupElement(ut)).dimension();
  if (d.size() != n)
    throw std::invalid_argument("diagonal has the wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0)
      throw std::invalid_argument("diagonal entries must be nonzero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[j] % d[i] != 0)
        throw std::invalid_argument("diagonal entries must divide their successors");
  }
  std::vector<Int> one(n, Int(1));
  std::vector<GroupElement> images;
  for (std::size_t l = 0; l < ut->size(); ++l)
    images.push_back(from_matrix(ut, scale_entries(to_matrix(GroupElement::generator(ut, l)), d, one)));
  return Endomorphism(ut, std::move(images));
}

Endomorphism dm_conjugation(std::size_t n, Int const &m)
{
  if (m < 2)
    throw std::invalid_argument("dm: m must be at least 2");
  std::vector<Int> d{1};
  for (std::size_t i = 1; i < n; ++i)
    d.push_back(d.back() * m);
  return diagonal_conjugation(make_group({GroupKind::unitriangular, {Int(n)}}), d);
}

VirtualEndomorphism dm_endo(std::size_t n, Int const &m)
{
  auto psi = dm_conjugation(n, m);
  auto g = psi.presentation();
  Subgroup domain = psi.image();
  std::vector<Int> d{1};
  for (std::size_t i = 1; i < n; ++i)
    d.push_back(d.back() * m);
  std::vector<Int> one(n, Int(1));
  std::vector<GroupElement> images;
  for (auto const &s : domain.standard_sequence())
    images.push_back(from_matrix(g, scale_entries(to_matrix(s), one, d)));
  return VirtualEndomorphism(std::move(domain), std::move(images));
}

PsiParams psi_params(Int const &k11, Int const &k12, Int const &k13, Int const &d)
{
  Int m1 = k11 * d;
  Int c = binom2(m1);
  return {m1, k13 * d - d * m1 * k13 - c, -k12 * d + d * m1 * k12 + c};
}

Endomorphism psi_endo(PresentationPtr const &g, Int const &m1, Int const &m2, Int const &m3)
{
  if (m1 < 1)
    throw std::invalid_argument("psi: m1 must be positive");
  if (g->weight_end(1) != 2 || g->size() < 3 || g->name(0) != "a" || g->name(1) != "b" || g->name(2) != "[a,b]")
    throw std::invalid_argument("psi: group must have basis a, b, [a,b], ...");
  auto ab = named(g, "[a,b]");
  auto A = named(g, "a", m1) * ab.pow(m2);
  auto B = named(g, "b", m1) * ab.pow(m3);
  auto psi = Endomorphism::from_generator_images(g, {A, B});
  if (!psi.is_injective())
    throw std::domain_error("psi: induced graded map is singular");
  return psi;
}

Subgroup n34_subgroup_K(PresentationPtr const &g, Int const &m, Int const &n, Int const &k, Int const &j)
{
  if (m < 1 || n < 1 || k < 1 || j < 1)
    throw std::invalid_argument("K: exponents must be positive");
  return Subgroup::generated_by(g, {named(g, "a", m), named(g, "b", n), named(g, "c", k), named(g, "d", j)});
}

Endomorphism squaring_endomorphism(PresentationPtr const &g)
{
  std::vector<GroupElement> w1;
  for (std::size_t i = 0; i < g->weight_end(1); ++i)
    w1.push_back(GroupElement::generator(g, i, 2));
  return Endomorphism::from_generator_images(g, w1);
}

Endomorphism canonical_endomorphism(GroupSpec const &spec, PresentationPtr const &g)
{
  std::size_t n1 = g->weight_end(1);
  std::vector<GroupElement> w1;
  for (std::size_t i = 0; i < n1; ++i)
    w1.push_back(GroupElement::generator(g, i));
  switch (spec.kind) {
  case GroupKind::free_abelian:
    // e_i -> e_{i+1}, last -> 2 e_0: index 2 and psi^n = 2.
    for (std::size_t i = 0; i + 1 < n1; ++i)
      w1[i] = GroupElement::generator(g, i + 1);
    w1[n1 - 1] = GroupElement::generator(g, 0, 2);
    return Endomorphism::from_generator_images(g, w1);
  case GroupKind::heisenberg:
  case GroupKind::free_nil_c3:
    w1[0] = w1[0].pow(2);
    return Endomorphism::from_generator_images(g, w1);
  case GroupKind::two_gen_c3:
    if (spec.params.at(0) == 0) {
      w1[1] = w1[1].pow(2);
    } else {
      w1[0] = w1[0].pow(2);
      if (spec.params.at(1) != 0)
        w1[1] = w1[1].pow(2);
    }
    return Endomorphism::from_generator_images(g, w1);
  case GroupKind::unitriangular: {
    std::size_t n = to_matrix(GroupElement(g)).dimension();
    std::vector<Int> d(n, Int(1));
    d.back() = 2;
    return diagonal_conjugation(g, d);
  }
  case GroupKind::n34:
    break;
  }
  throw std::invalid_argument("no canonical injective endomorphism for " + spec.to_string());
}

std::vector<RelationInstance> n34_derived_relations(PresentationPtr const &g, Int const &m, Int const &n,
                                                    Int const &k, Int const &j)
{
  if (m < 1 || n < 1 || k < 1 || j < 1)
    throw std::invalid_argument("exponents must be positive");
  auto a = named(g, "a", m), b = named(g, "b", n), c = named(g, "c", k), d = named(g, "d", j);
  auto br = [](GroupElement const &x, GroupElement const &y) { return commutator(x, y); };
  auto br3 = [&](GroupElement const &x, GroupElement const &y, GroupElement const &z) { return br(br(x, y), z); };
  GroupElement one(g);
  return {
      {"[a1,[a1,b1]] = 1", br(a, br(a, b)), one},
      {"[a1,b1,b1] = 1", br3(a, b, b), one},
      {"[a1,[c1,d1]] = 1", br(a, br(c, d)), one},
      {"[a1,d1,d1] = 1", br3(a, d, d), one},
      {"[b1,[b1,c1]] = 1", br(b, br(b, c)), one},
      {"[b1,[c1,d1]] = 1", br(b, br(c, d)), one},
      {"[c1,[c1,d1]] = 1", br(c, br(c, d)), one},
      {"[c1,d1,d1] = 1", br3(c, d, d), one},
      {"[a1,[b1,c1]] [a1,c1,b1] = 1", br(a, br(b, c)) * br3(a, c, b), one},
      {"[a1,[b1,d1]] [a1,d1,b1] = 1", br(a, br(b, d)) * br3(a, d, b), one},
      {"[a1,[a1,d1]]^(nk^2) = [b1,c1,c1]^(m^2 j)", br(a, br(a, d)).pow(n * k * k), br3(b, c, c).pow(m * m * j)},
      {"[a1,[a1,c1]]^(n^2 j) = [b1,[b1,d1]]^(m^2 k)", br(a, br(a, c)).pow(n * n * j), br(b, br(b, d)).pow(m * m * k)},
      {"[a1,c1,b1]^(j^2) = [b1,d1,d1]^(mk)", br3(a, c, b).pow(j * j), br3(b, d, d).pow(m * k)},
      {"[a1,c1,c1]^(nj) = [b1,d1,c1]^(mk)", br3(a, c, c).pow(n * j), br3(b, d, c).pow(m * k)},
      {"[a1,d1,b1]^k = [a1,d1,c1]^n", br3(a, d, b).pow(k), br3(a, d, c).pow(n)},
      {"[a1,b1]^(k^2) = [a1,c1,c1]^n", br(a, b).pow(k * k), br3(a, c, c).pow(n)},
      {"[c1,d1]^(m^2) = [a1,[a1,c1]]^j", br(c, d).pow(m * m), br(a, br(a, c)).pow(j)},
  };
}

} // namespace nilself

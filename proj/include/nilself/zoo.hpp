#pragma once

/**
 * @file zoo.hpp
 * @brief Named groups, matrix models and the endomorphisms built on them.
 */

#include "nilself/pcgroup.hpp"
#include "nilself/subgroup.hpp"
#include "nilself/vendo.hpp"

#include <string>
#include <vector>

namespace nilself {

enum class GroupKind { free_abelian, heisenberg, free_nil_c3, two_gen_c3, unitriangular, n34 };

struct GroupSpec {
  GroupKind kind = GroupKind::free_abelian;
  std::vector<Int> params;

  /// Canonical spec string, e.g. "two_gen_c3:1,0".
  std::string to_string() const;
};

/**
 * Parses `free_abelian:3`, `heisenberg`, `free_nil_c3`, `free_nil_c3:4`,
 * `two_gen_c3:1,0`, `ut:4`, `n34`.  Throws std::invalid_argument.
 */
GroupSpec parse_group_spec(std::string const &s);
/// One shared presentation per spec string.
PresentationPtr make_group(GroupSpec const &spec);

PresentationPtr free_abelian(std::size_t n);
/// a, b, [a,b]
PresentationPtr heisenberg();
/// Free nilpotent group of class 3 on `rank` generators named a, b, c, ...;
/// basis x_i, [x_i,x_j] (i<j), [x_i,x_j,x_k] (i<j, k>=i).
PresentationPtr free_nilpotent_c3(std::size_t rank);
/// a, b, [a,b], [a,b,a], [a,b,b]
PresentationPtr free_nil_c3_r2();
/// Free class-3 two-generator group modulo [a,b,a]^k14 [a,b,b]^k15.
PresentationPtr two_gen_c3(Int const &k14, Int const &k15);
/// Upper unitriangular integer matrices of dimension n (2 <= n <= 4), basis
/// t_ij ordered by j - i and then by i.
PresentationPtr unitriangular(std::size_t n);
/**
 * Class-3 group on a, b, c, d with basis
 * a, b, c, d | [a,c], [a,d], [b,c], [b,d] | [a,b], [c,d], [a,[a,d]], [a,[b,c]], [a,[b,d]].
 */
PresentationPtr n34();

/// Relators of n34 in the order they are listed in its definition, as
/// (label, element) pairs.  Every element must collect to the identity.
std::vector<std::pair<std::string, GroupElement>> n34_defining_relators(PresentationPtr const &g);

/// Integer upper unitriangular matrix.
class UTMatrix
{
public:
  explicit UTMatrix(std::size_t n);
  /// Throws std::invalid_argument unless m is square, unit diagonal, zero below.
  explicit UTMatrix(IntMatrix m);
  static UTMatrix transvection(std::size_t n, std::size_t i, std::size_t j, Int const &e = 1);

  std::size_t dimension() const { return m_.rows(); }
  Int const &operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  IntMatrix const &matrix() const { return m_; }

  UTMatrix inverse() const;
  friend UTMatrix operator*(UTMatrix const &a, UTMatrix const &b);
  friend bool operator==(UTMatrix const &, UTMatrix const &) = default;

private:
  IntMatrix m_;
};

/// Basis positions of unitriangular(n): (i, j) pairs, zero-based.
std::vector<std::pair<std::size_t, std::size_t>> unitriangular_basis(std::size_t n);
UTMatrix to_matrix(GroupElement const &x);
GroupElement from_matrix(PresentationPtr const &ut, UTMatrix const &m);

/// Endomorphism x -> D^-1 x D of unitriangular(n), D = diag(d); requires d_i | d_j for i < j.
Endomorphism diagonal_conjugation(PresentationPtr const &ut, std::vector<Int> const &d);
/// Conjugation by D_m^-1 = diag(1, m, ..., m^(n-1))^-1 on the image of
/// conjugation by D_m, as a virtual endomorphism of unitriangular(n).
VirtualEndomorphism dm_endo(std::size_t n, Int const &m);
/// Endomorphism x -> x^{D_m} whose inverse on its image is dm_endo(n, m).
Endomorphism dm_conjugation(std::size_t n, Int const &m);

struct PsiParams {
  Int m1, m2, m3;
  friend bool operator==(PsiParams const &, PsiParams const &) = default;
};
/// m1 = k11 d, m2 = k13 d - d m1 k13 - C(m1,2), m3 = -k12 d + d m1 k12 + C(m1,2).
PsiParams psi_params(Int const &k11, Int const &k12, Int const &k13, Int const &d);
/**
 * a -> a^m1 [a,b]^m2, b -> b^m1 [a,b]^m3 on a group with basis a, b, [a,b], ...
 * Throws std::invalid_argument for m1 < 1 or a foreign basis and
 * std::domain_error when the map is not an injective homomorphism.
 */
Endomorphism psi_endo(PresentationPtr const &g, Int const &m1, Int const &m2, Int const &m3);

/// An identity lhs = rhs between two collected elements.
struct RelationInstance {
  std::string label;
  GroupElement lhs;
  GroupElement rhs;
};
/**
 * Identities among a1 = a^m, b1 = b^n, c1 = c^k, d1 = d^j in n34 that follow
 * from its defining relations, e.g. [a1,c1,b1]^(j^2) = [b1,d1,d1]^(mk).
 */
std::vector<RelationInstance> n34_derived_relations(PresentationPtr const &g, Int const &m, Int const &n,
                                                    Int const &k, Int const &j);

/// <a^m, b^n, c^k, d^j> in n34.
Subgroup n34_subgroup_K(PresentationPtr const &g, Int const &m, Int const &n, Int const &k, Int const &j);

/**
 * Injective endomorphism with finite-index image used as the default for
 * each group kind: a doubling shift on free abelian groups, a -> a^2 on
 * two-generator groups (uniform squaring when the relator needs it),
 * conjugation by diag(1, ..., 1, 2) on unitriangular groups.  Throws
 * std::invalid_argument for n34, which has no faithful default.
 */
Endomorphism canonical_endomorphism(GroupSpec const &spec, PresentationPtr const &g);
/// Every weight-1 generator squared; std::domain_error if this is not a homomorphism.
Endomorphism squaring_endomorphism(PresentationPtr const &g);

} // namespace nilself

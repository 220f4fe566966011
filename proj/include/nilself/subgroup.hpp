#pragma once

/**
 * @file subgroup.hpp
 * @brief Subgroups of pc groups in standard (echelon) form.
 *
 * A subgroup is stored as a sequence s_1, ..., s_r with strictly increasing
 * leading indices and positive leading exponents p_l; entries below each
 * leading position are reduced into [0, p_l').  The sequence is closed under
 * commutators, so every element is uniquely s_1^{q_1} ... s_r^{q_r}.
 */

#include "nilself/pcgroup.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nilself {

class Subgroup
{
public:
  /// Sifts the generators into standard form; an empty list gives the trivial subgroup.
  static Subgroup generated_by(PresentationPtr g, std::vector<GroupElement> const &gens);
  static Subgroup whole(PresentationPtr g);

  PresentationPtr const &presentation() const { return pres_; }
  std::vector<GroupElement> const &standard_sequence() const { return seq_; }
  std::vector<std::size_t> const &leading_indices() const { return lead_; }
  /// p_l for each element of the standard sequence.
  Vec leading_exponents() const;
  std::size_t hirsch_length() const { return seq_.size(); }

  bool is_finite_index() const { return seq_.size() == pres_->size(); }
  /// Product of the leading exponents, or nullopt for infinite index.
  std::optional<Int> index() const;
  /// Index as a machine integer; throws std::domain_error for infinite or huge index.
  std::uint64_t finite_index() const;

  bool contains(GroupElement const &x) const;
  /// q with x = s_1^{q_1} ... s_r^{q_r}, if x lies in the subgroup.
  std::optional<Vec> word_of(GroupElement const &x) const;
  bool is_subgroup_of(Subgroup const &other) const;

  struct CosetDecomposition {
    Vec word;          // x = (prod s_l^{word_l}) * representative
    GroupElement representative;
    std::uint64_t coset = 0;
  };
  /// Requires finite index.
  CosetDecomposition decompose(GroupElement const &x) const;
  /// j such that x lies in H t_j.
  std::uint64_t coset_of(GroupElement const &x) const;
  /// Right transversal ordered lexicographically on exponent tuples
  /// (first coordinate most significant); t_0 is the identity.
  GroupElement transversal_element(std::uint64_t j) const;
  std::vector<GroupElement> transversal() const;

  /// prod s_l^{q_l}
  GroupElement evaluate(Vec const &q) const;

  friend bool operator==(Subgroup const &a, Subgroup const &b) { return a.pres_ == b.pres_ && a.seq_ == b.seq_; }

private:
  Subgroup() = default;
  PresentationPtr pres_;
  std::vector<GroupElement> seq_;
  std::vector<std::size_t> lead_;
  std::vector<std::ptrdiff_t> slot_; // basis index -> position in seq_, or -1
};

Subgroup sift(std::vector<GroupElement> const &generators);
std::optional<Int> index(Subgroup const &h);
std::vector<GroupElement> transversal(Subgroup const &h);
bool contains(Subgroup const &h, GroupElement const &x);
std::uint64_t coset_of(Subgroup const &h, GroupElement const &x);

/// A subgroup together with the image of each standard generator under a
/// map defined on generators.
struct SiftedMap {
  Subgroup domain;
  std::vector<GroupElement> images;
};

/**
 * Sifts (generator, image) pairs in lockstep.  Throws std::domain_error when
 * some element of the domain reduces to the identity while its tracked image
 * does not, which means the assignment does not define a homomorphism.
 * Passing the check is necessary but not sufficient; VirtualEndomorphism
 * validates the relations of the resulting standard sequence.
 */
SiftedMap sift_with_images(PresentationPtr g, std::vector<std::pair<GroupElement, GroupElement>> const &pairs);

} // namespace nilself

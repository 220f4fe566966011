#pragma once

/**
 * @file vendo.hpp
 * @brief Endomorphisms of a pc group and virtual endomorphisms H -> G.
 */

#include "nilself/pcgroup.hpp"
#include "nilself/subgroup.hpp"

#include <optional>
#include <vector>

namespace nilself {

class VirtualEndomorphism;

/// Homomorphism G -> G given by the images of all basis generators.
class Endomorphism
{
public:
  /// Throws std::domain_error if the images violate a pc relation or do not
  /// preserve the weight filtration.
  Endomorphism(PresentationPtr g, std::vector<GroupElement> images);
  /// Extends weight-1 images through the generator definitions.
  static Endomorphism from_generator_images(PresentationPtr g, std::vector<GroupElement> const &weight1);
  static Endomorphism identity(PresentationPtr g);
  /// y -> x^-1 y x
  static Endomorphism inner(PresentationPtr g, GroupElement const &x);
  /// Everything to the identity.
  static Endomorphism trivial(PresentationPtr g);

  PresentationPtr const &presentation() const { return pres_; }
  std::vector<GroupElement> const &images() const { return images_; }
  GroupElement apply(GroupElement const &x) const;

  /// Matrix of the induced map on weight-w coordinates (rows: generators).
  IntMatrix graded_block(int w) const;
  /// Product of the determinants of the graded blocks.
  Int graded_determinant() const;
  bool is_injective() const { return graded_determinant() != 0; }
  Subgroup image() const;
  std::optional<GroupElement> preimage(GroupElement const &y) const;

  VirtualEndomorphism as_virtual() const;
  /// Restriction to a finite-index subgroup.
  VirtualEndomorphism restrict_to(Subgroup const &h) const;
  /// x -> psi^-1(x) on psi(G); requires injectivity (std::domain_error otherwise).
  VirtualEndomorphism inverse_on_image() const;

private:
  PresentationPtr pres_;
  std::vector<GroupElement> images_;
};

/// Homomorphism f: H -> G from a finite-index subgroup H.
class VirtualEndomorphism
{
public:
  /**
   * `images[l]` is the image of the l-th standard generator of `domain`.
   * Throws std::invalid_argument on a length or presentation mismatch and
   * std::domain_error when the domain has infinite index or a relation of
   * the standard sequence is violated.
   */
  VirtualEndomorphism(Subgroup domain, std::vector<GroupElement> images);
  /// Domain generated by the first components, map given on them.
  static VirtualEndomorphism from_pairs(PresentationPtr g,
                                        std::vector<std::pair<GroupElement, GroupElement>> const &pairs);

  Subgroup const &domain() const { return domain_; }
  std::vector<GroupElement> const &images() const { return images_; }
  PresentationPtr const &presentation() const { return domain_.presentation(); }

  /// Throws std::invalid_argument if x is outside the domain.
  GroupElement apply(GroupElement const &x) const;
  /// prod images_l^{q_l} for a word in the standard generators.
  GroupElement apply_word(Vec const &q) const;
  Subgroup image() const;
  bool is_injective() const;
  bool is_surjective() const;

private:
  Subgroup domain_;
  std::vector<GroupElement> images_;
};

VirtualEndomorphism make_vendo(Subgroup domain, std::vector<GroupElement> images);
GroupElement apply(VirtualEndomorphism const &f, GroupElement const &x);

} // namespace nilself

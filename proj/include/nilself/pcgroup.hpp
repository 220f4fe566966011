#pragma once

/**
 * @file pcgroup.hpp
 * @brief Weighted polycyclic presentations of torsion-free nilpotent groups
 *        of class at most 3, with exact collection.
 *
 * Elements are exponent vectors over an ordered Mal'cev basis
 * g_1, ..., g_k whose weights are nondecreasing.  The presentation stores
 * [g_j, g_i] for every j > i as a normal-form word supported on generators
 * of weight >= w_i + w_j.  Commutators are [x, y] = x^-1 y^-1 x y and
 * iterated brackets are left-normed: [x, y, z] = [[x, y], z].
 */

#include "nilself/integer.hpp"
#include "nilself/intlattice.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilself {

class PcPresentation;
using PresentationPtr = std::shared_ptr<PcPresentation const>;

/// g = prod [g_left, g_right]^exponent, used to extend maps from weight-1 images.
struct CommutatorFactor {
  std::size_t left;
  std::size_t right;
  Int exponent;
};

struct GeneratorSpec {
  std::string name;
  int weight = 1;
  std::vector<CommutatorFactor> definition; // empty for weight 1
};

/// Keyed by (j, i) with j > i; value is the exponent vector of [g_j, g_i].
using CommutatorTable = std::map<std::pair<std::size_t, std::size_t>, Vec>;

class PcPresentation
{
public:
  /**
   * Builds and validates a presentation.  Throws std::invalid_argument for
   * malformed input (weights, support, names) and std::domain_error when the
   * table is inconsistent or a generator definition does not hold.
   * `validate = false` skips the consistency and definition checks, which is
   * only useful for building deliberately broken tables.
   */
  static PresentationPtr create(std::vector<GeneratorSpec> gens, CommutatorTable const &table,
                                bool validate = true);

  std::size_t size() const { return gens_.size(); }
  std::size_t hirsch_length() const { return gens_.size(); }
  std::string const &name(std::size_t i) const { return gens_[i].name; }
  int weight(std::size_t i) const { return gens_[i].weight; }
  int max_weight() const;
  std::optional<std::size_t> index_of(std::string const &name) const;
  std::vector<CommutatorFactor> const &definition(std::size_t i) const { return gens_[i].definition; }
  std::vector<GeneratorSpec> const &generators() const { return gens_; }
  CommutatorTable const &table() const { return table_; }

  /// Generators of weight w occupy [weight_begin(w), weight_end(w)).
  std::size_t weight_begin(int w) const;
  std::size_t weight_end(int w) const;

  /// [g_j, g_i] for j > i.
  Vec const &commutator_entry(std::size_t j, std::size_t i) const;

  // Collection from the left on exponent vectors.
  void multiply_generator_power(Vec &x, std::size_t i, Int const &e) const;
  Vec multiply(Vec x, Vec const &y) const;
  Vec inverse(Vec const &x) const;
  Vec power(Vec const &x, Int n) const;
  Vec commutator(Vec const &x, Vec const &y) const;

private:
  PcPresentation() = default;
  void build_caches();

  std::vector<GeneratorSpec> gens_;
  CommutatorTable table_;
  Vec zero_;
  std::size_t n1_ = 0; // end of weight 1
  std::size_t n2_ = 0; // end of weight 2

  // Caches for the class-3 collector (weight-2 part indexed from n1_,
  // weight-3 part from n2_).
  std::vector<std::vector<Vec>> c2_;               // c2_[l][i]: weight-2 part of [g_l, g_i]
  std::vector<std::vector<Vec>> c3_;               // c3_[l][i]: weight-3 part of [g_l, g_i]
  std::vector<std::vector<Vec>> z_;                // z_[l][i]: [c, g_i] for c = [g_l, g_i]
  std::vector<std::vector<Vec>> q_;                // q_[i][m]: [h_m, g_i], h_m weight 2
  std::vector<std::vector<std::vector<Vec>>> w_;   // w_[i][l][l2]: Q(c2_[l][i], l2)

  Vec bracket_with(Vec const &beta, std::size_t i) const;
};

class GroupElement
{
public:
  explicit GroupElement(PresentationPtr p);
  GroupElement(PresentationPtr p, Vec exponents);
  static GroupElement generator(PresentationPtr p, std::size_t i, Int const &e = 1);

  PresentationPtr const &presentation() const { return pres_; }
  Vec const &exponents() const { return exps_; }
  Int const &operator[](std::size_t i) const { return exps_[i]; }
  bool is_identity() const { return is_zero(exps_); }

  GroupElement inverse() const;
  GroupElement pow(Int const &n) const;
  GroupElement &operator*=(GroupElement const &y);
  std::string to_string() const;

  friend GroupElement operator*(GroupElement x, GroupElement const &y) { return x *= y; }
  friend bool operator==(GroupElement const &a, GroupElement const &b)
  {
    return a.pres_ == b.pres_ && a.exps_ == b.exps_;
  }
  friend bool operator<(GroupElement const &a, GroupElement const &b) { return a.exps_ < b.exps_; }

private:
  PresentationPtr pres_;
  Vec exps_;
};

GroupElement multiply(GroupElement const &x, GroupElement const &y);
GroupElement inverse(GroupElement const &x);
GroupElement power(GroupElement const &x, Int const &n);
/// [x, y] = x^-1 y^-1 x y
GroupElement commutator(GroupElement const &x, GroupElement const &y);
/// Left-normed [x_1, ..., x_n].
GroupElement commutator(std::vector<GroupElement> const &xs);
/// y^-1 x y
GroupElement conjugate(GroupElement const &x, GroupElement const &y);

struct ConsistencyReport {
  bool ok = true;
  std::size_t overlaps_checked = 0;
  std::size_t jacobi_checked = 0;
  /// First failing generator triple (indices), if any.
  std::optional<std::array<std::size_t, 3>> witness;
  std::string message;
};

/// Associativity overlaps (g_k g_j) g_i = g_k (g_j g_i) for i < j < k with
/// all sign patterns, plus the Jacobi identity on weight-1 triples.
ConsistencyReport consistency_check(PcPresentation const &p);

/// Lattice of exponent vectors of central elements.  The result is verified
/// (every basis vector central, coordinates additive on the lattice);
/// throws std::domain_error if the center is not a coordinate lattice.
Lattice center_lattice(PcPresentation const &p);

/// Index c such that the center is exactly span{e_l : l >= c}, if it is.
std::optional<std::size_t> central_tail(PcPresentation const &p);

/// Weight-w exponents of x.
Vec graded_image(GroupElement const &x, int weight);

void require_same(PresentationPtr const &a, PresentationPtr const &b);

} // namespace nilself

#pragma once

/**
 * @file selfsim.hpp
 * @brief State-closed tree actions built from virtual endomorphisms.
 *
 * A G-data is a list of virtual endomorphisms f_i: H_i -> G.  The tree has
 * one letter per pair (i, j) with t_ij running over the transversal of H_i,
 * so the arity is the sum of the indices.  An element g acts by
 *
 *   (i, j) -> (i, j'),  state (t_ij g t_ij'^-1)^{f_i},
 *
 * where H_i t_ij g = H_i t_ij'.  With a single injective endomorphism psi
 * and f = psi^-1 on G^psi this is the coset tree representation.
 */

#include "nilself/subgroup.hpp"
#include "nilself/tree.hpp"
#include "nilself/vendo.hpp"
#include "nilself/zoo.hpp"

#include <array>
#include <map>
#include <unordered_map>

namespace nilself {

class GData
{
public:
  /// Throws std::invalid_argument for an empty list or mixed presentations.
  explicit GData(std::vector<VirtualEndomorphism> parts);

  PresentationPtr const &presentation() const { return parts_.front().presentation(); }
  std::vector<VirtualEndomorphism> const &parts() const { return parts_; }
  /// m_i = [G : H_i]
  std::vector<std::uint64_t> const &part_sizes() const { return sizes_; }
  std::size_t alphabet_size() const { return alphabet_; }

private:
  std::vector<VirtualEndomorphism> parts_;
  std::vector<std::uint64_t> sizes_;
  std::size_t alphabet_ = 0;
};

/// Lazily expanded action of G on the tree of a G-data.  States are group
/// elements, identified by normal form; state 0 is the identity.
class Representation : public AutomatonSource, public std::enable_shared_from_this<Representation>
{
public:
  static std::shared_ptr<Representation> create(GData data, std::optional<Endomorphism> psi = std::nullopt);

  GData const &data() const { return data_; }
  PresentationPtr const &presentation() const { return data_.presentation(); }
  /// The endomorphism the representation was built from, if any.
  std::optional<Endomorphism> const &endomorphism() const { return psi_; }

  std::size_t alphabet_size() const override { return data_.alphabet_size(); }
  Letter image(StateId s, Letter x) const override { return entry(s, x).image; }
  StateId next(StateId s, Letter x) const override { return entry(s, x).next; }
  bool known_identity(StateId s) const override { return s == 0; }

  TreeAutomorphism lambda(GroupElement const &g) const;
  StateId state_of(GroupElement const &g) const;
  GroupElement element(StateId s) const;

  /// (part, coset) of a letter and back.
  std::pair<std::size_t, std::uint64_t> letter_position(Letter x) const;
  Letter letter(std::size_t part, std::uint64_t coset) const;
  GroupElement transversal_element(Letter x) const;

private:
  Representation(GData data, std::optional<Endomorphism> psi);

  struct Entry {
    Letter image;
    StateId next;
  };
  Entry entry(StateId s, Letter x) const;

  GData data_;
  std::optional<Endomorphism> psi_;
  std::vector<std::uint64_t> offsets_;
  mutable std::mutex mutex_;
  mutable std::map<Vec, StateId> ids_;
  mutable std::vector<GroupElement> elements_;
  mutable std::unordered_map<std::uint64_t, Entry> memo_;
  mutable std::unordered_map<Letter, GroupElement> transversal_;
};

using RepresentationPtr = std::shared_ptr<Representation>;

/// Coset tree representation of an injective endomorphism with finite-index
/// image.  Throws std::domain_error otherwise.
RepresentationPtr build_cosettree_rep(Endomorphism const &psi);
/// Representation of the one-part G-data (f).
RepresentationPtr build_cosettree_rep(VirtualEndomorphism const &f);
RepresentationPtr build_representation(GData const &data);

/// Cap on expansion depth from SELFSIM_MAX_DEPTH (default 16).
std::size_t max_expansion_depth();

struct DivisibilityCertificate {
  Int m1;                                 // gcd of the weight-1 block of psi
  std::size_t kmax = 0;
  bool holds = false;                     // psi^{2k}(g_i) has all exponents divisible by m1^k
  std::optional<std::size_t> failing_k;
};
DivisibilityCertificate divisibility_certificate(Endomorphism const &psi, std::size_t kmax);

struct FaithfulnessReport {
  struct Entry {
    GroupElement element;
    std::optional<std::size_t> depth; // least depth with nontrivial action
  };
  std::size_t depth = 0;
  std::vector<Entry> entries;
  std::optional<DivisibilityCertificate> certificate;
  bool all_detected() const;
};
/// Depth is clamped to max_expansion_depth(); identity elements are skipped.
FaithfulnessReport faithful_to_depth(Representation const &rep, std::vector<GroupElement> const &elements,
                                     std::size_t depth);

/// True iff f(s) lies in n for every standard generator s of n.  Throws
/// std::invalid_argument unless n is contained in the domain of f.
bool invariant_check(VirtualEndomorphism const &f, Subgroup const &n);

/// Rows: weight-1 exponents of f(a^m), f(b^n), f(c^k), f(d^j).  Throws
/// std::invalid_argument if one of these lies outside the domain.
IntMatrix nf_matrix(VirtualEndomorphism const &f, std::array<Int, 4> const &powers);

/// Lattice (coefficients over `basis`) of v with prod images_l^{v_l} = 1,
/// for pairwise commuting images.
Lattice abelian_kernel(PresentationPtr const &g, std::vector<GroupElement> const &images);

/**
 * Largest sublattice L of the central lattice `start` (exponent vectors,
 * inside every domain) with f_i(L) in L for all parts, found by the
 * descending chain L_{t+1} = {v in L_t : f_i(v) in L_t}.  Returns nullopt
 * when the chain has not stabilized after `bound` steps.
 */
std::optional<Lattice> invariant_central_sublattice(GData const &data, Lattice const &start, std::size_t bound);

struct WitnessCheck {
  bool nontrivial = false;
  bool inside_domains = false;
  bool normal = false;
  bool invariant = false;
  bool ok() const { return nontrivial && inside_domains && normal && invariant; }
};
WitnessCheck verify_witness(GData const &data, Subgroup const &w);

struct FcoreResult {
  std::array<Int, 4> powers;          // K = <a^m, b^n, c^k, d^j> lies in every H_i
  std::vector<IntMatrix> nf;          // one per part
  std::vector<Int> determinants;
  Lattice center_of_K;                // exponent vectors of Z(K) = K n Z(G)
  std::string method;                 // "center", "kernel" or "saturation"
  std::optional<Subgroup> witness;
  WitnessCheck check;
  bool pointwise_fixed = false;       // every f_i fixes the witness generators
  std::string message;
};
/// Searches for a nontrivial normal subgroup of the intersection of the
/// domains that every f_i maps into itself.  Requires a presentation whose
/// weight-1 generators are a, b, c, d and whose center is a coordinate tail.
FcoreResult fcore_witness(GData const &data);

/// Default G-data of each zoo group: psi^-1 for canonical_endomorphism, and
/// x -> a^(e_a(x)/2) on <a^2, b, c, d> for n34 (which has no faithful one).
GData canonical_gdata(GroupSpec const &spec, PresentationPtr const &g);

} // namespace nilself

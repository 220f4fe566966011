#pragma once

/**
 * @file tree.hpp
 * @brief Automorphisms of the rooted m-ary tree in wreath-recursion form.
 *
 * An automorphism is a state of an automaton source: a root permutation
 * sigma together with one state per letter, alpha = (alpha_0, ...,
 * alpha_{m-1}) sigma.  It acts on words from the left,
 * (y_1 y_2 ... y_n)^alpha = y_1^sigma (y_2 ... y_n)^{alpha_{y_1}}, and
 * products are read left to right (first alpha, then beta).
 */

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilself {

using Letter = std::uint32_t;
using StateId = std::uint64_t;

/// Lazily expanded family of tree automorphisms; implementations must be
/// safe for concurrent readers.
class AutomatonSource
{
public:
  virtual ~AutomatonSource() = default;
  virtual std::size_t alphabet_size() const = 0;
  /// Root permutation of state s applied to letter x.
  virtual Letter image(StateId s, Letter x) const = 0;
  /// State of s below letter x.
  virtual StateId next(StateId s, Letter x) const = 0;
  /// True only if s is known to be the identity automorphism.
  virtual bool known_identity(StateId) const { return false; }
};

class TreeAutomorphism
{
public:
  TreeAutomorphism(std::shared_ptr<AutomatonSource const> src, StateId id);
  static TreeAutomorphism identity(std::size_t alphabet);

  std::size_t alphabet_size() const { return src_->alphabet_size(); }
  std::shared_ptr<AutomatonSource const> const &source() const { return src_; }
  StateId id() const { return id_; }

  Letter image(Letter x) const;
  TreeAutomorphism state(Letter x) const;
  std::vector<Letter> root_permutation() const;
  std::optional<Letter> first_moved_letter() const;
  std::vector<Letter> act_on_word(std::vector<Letter> const &w) const;

private:
  std::shared_ptr<AutomatonSource const> src_;
  StateId id_;
};

/// First alpha, then beta.
TreeAutomorphism compose(TreeAutomorphism const &alpha, TreeAutomorphism const &beta);
TreeAutomorphism inverse(TreeAutomorphism const &alpha);

/// Same action on all words of length <= depth.
bool equal_to_depth(TreeAutomorphism const &a, TreeAutomorphism const &b, std::size_t depth);
bool trivial_to_depth(TreeAutomorphism const &a, std::size_t depth);
/// Least d such that the action on words of length d is nontrivial.
std::optional<std::size_t> least_nontrivial_depth(TreeAutomorphism const &a, std::size_t max_depth);

/// Permutations at every vertex of the tree truncated at `depth`, vertices in
/// level order (each level in lexicographic order of the vertex words).
/// Vertex v occupies entries [v m, (v + 1) m).
class Portrait
{
public:
  Portrait(std::size_t alphabet, std::size_t depth, std::vector<Letter> entries);

  std::size_t alphabet_size() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  std::size_t vertex_count() const { return alphabet_ ? entries_.size() / alphabet_ : 0; }
  std::span<Letter const> permutation(std::size_t v) const
  {
    return std::span<Letter const>(entries_).subspan(v * alphabet_, alphabet_);
  }
  std::vector<Letter> const &entries() const { return entries_; }
  bool is_trivial() const;

  std::string to_text() const;
  std::string to_dot() const;
  nlohmann::json to_json() const;

  friend bool operator==(Portrait const &, Portrait const &) = default;
  friend auto operator<=>(Portrait const &, Portrait const &) = default;

private:
  std::size_t alphabet_;
  std::size_t depth_;
  std::vector<Letter> entries_;
};

/// Throws std::domain_error when the portrait would exceed `max_letters` entries.
Portrait portrait(TreeAutomorphism const &a, std::size_t depth, std::size_t max_letters = std::size_t(1) << 22);
Portrait compose_to_depth(TreeAutomorphism const &a, TreeAutomorphism const &b, std::size_t depth);
/// Distinct portraits (to `depth`) of the states of a reachable within `depth` levels, a included.
std::vector<Portrait> states(TreeAutomorphism const &a, std::size_t depth);
/// Composition of portraits of equal shape (first a, then b).
Portrait compose(Portrait const &a, Portrait const &b);

/// Finite automaton given explicitly.
class FiniteAutomaton : public AutomatonSource
{
public:
  struct State {
    std::vector<Letter> perm;
    std::vector<StateId> next;
  };
  FiniteAutomaton(std::size_t alphabet, std::vector<State> states);

  std::size_t alphabet_size() const override { return alphabet_; }
  Letter image(StateId s, Letter x) const override { return states_.at(s).perm.at(x); }
  StateId next(StateId s, Letter x) const override { return states_.at(s).next.at(x); }
  bool known_identity(StateId s) const override;
  std::size_t size() const { return states_.size(); }

private:
  std::size_t alphabet_;
  std::vector<State> states_;
};

/**
 * Reachable part of the automaton of `a` as
 * {"alphabet": m, "states": [{"perm": [...], "next": [...]}], "initial": 0}.
 * Exploration stops after `max_states`; then "truncated" is true and
 * transitions into unexplored states are null.
 */
nlohmann::json export_automaton(TreeAutomorphism const &a, std::size_t max_states);
/// Inverse of export_automaton for complete exports.
TreeAutomorphism import_automaton(nlohmann::json const &j);

} // namespace nilself

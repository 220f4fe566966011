#pragma once

/**
 * @file intlattice.hpp
 * @brief Exact integer linear algebra: Hermite/Smith normal forms and lattices.
 *
 * All matrices act on row vectors: a lattice is the set of integer
 * combinations of the rows of its basis, and a linear map Z^p -> Z^q is a
 * p x q matrix applied as v * M.
 */

#include "nilself/integer.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace nilself {

class IntMatrix
{
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::vector<Vec> const &rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int const &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  void set_row(std::size_t r, Vec const &v);
  void append_row(Vec const &v);
  IntMatrix transpose() const;
  /// Rows [begin, end).
  IntMatrix row_block(std::size_t begin, std::size_t end) const;
  /// Columns [begin, end).
  IntMatrix col_block(std::size_t begin, std::size_t end) const;
  bool is_zero() const;

  friend bool operator==(IntMatrix const &, IntMatrix const &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(IntMatrix const &a, IntMatrix const &b);
/// Row vector times matrix.
Vec operator*(Vec const &v, IntMatrix const &m);
std::ostream &operator<<(std::ostream &os, IntMatrix const &m);

struct HnfResult {
  IntMatrix h; // row Hermite normal form, zero rows last
  IntMatrix u; // unimodular, h == u * m
  std::size_t rank = 0;
};

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot).
HnfResult hnf(IntMatrix const &m);

/// Invariant factors d_1 | d_2 | ... (min(rows, cols) entries, zeros last).
std::vector<Int> snf(IntMatrix const &m);

/// Exact determinant (fraction-free elimination).
Int det(IntMatrix const &m);

/// Integer x with x * m == y, if one exists.
std::optional<Vec> solve_left(IntMatrix const &m, Vec const &y);

/// Inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix unimodular_inverse(IntMatrix const &m);

class Lattice
{
public:
  explicit Lattice(std::size_t ambient_rank = 0);
  /// Lattice generated by the given rows (any shape, any dependencies).
  static Lattice from_generators(IntMatrix const &gens);
  static Lattice from_generators(std::vector<Vec> const &gens, std::size_t ambient_rank);
  static Lattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  bool is_zero() const { return basis_.rows() == 0; }
  /// Basis in row HNF with zero rows removed.
  IntMatrix const &basis() const { return basis_; }
  std::vector<Vec> basis_vectors() const;

  friend bool operator==(Lattice const &, Lattice const &) = default;

private:
  std::size_t ambient_;
  IntMatrix basis_;
};

Lattice lattice_intersect(Lattice const &a, Lattice const &b);
/// {v : v * m == 0}
Lattice lattice_kernel(IntMatrix const &m);
bool lattice_member(Vec const &v, Lattice const &l);
/// a is a sublattice of b
bool lattice_contains(Lattice const &b, Lattice const &a);
/// {v in Z^p : v * map in target}, map being p x q.
Lattice lattice_preimage(IntMatrix const &map, Lattice const &target);
/// Index of a full-rank sublattice (0 when the rank is deficient).
Int lattice_index(Lattice const &l);

/**
 * Surjection Z^n -> Z^(n-r) with kernel exactly l, as an n x (n-r) matrix.
 * Requires Z^n / l to be torsion-free; throws std::domain_error otherwise.
 */
IntMatrix quotient_map(Lattice const &l);

} // namespace nilself

#pragma once

/**
 * @file suites.hpp
 * @brief Named verification suites shared by the command line and the
 * acceptance runner.  Output is deterministic: fixed seeds, fixed order.
 */

#include "nilself/selfsim.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace nilself {

struct Check {
  std::string label;
  bool ok = false;
  std::string detail; // counterexample or summary
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
  void print(std::ostream &os) const;
};

/// Defining relators of n34 collect to 1 and the presentation is consistent.
SuiteResult suite_n34_presentation();
/// Derived relations of n34 for (m, n, k, j) in [1, bound]^4.
SuiteResult suite_n34_derived(int bound = 3);
/// Both of the above.
SuiteResult suite_n34_relations();
/// psi maps on free_nil_c3_r2 and two_gen_c3:1,0.
SuiteResult suite_psi();
/// dm endomorphisms of ut:3 and ut:4 for m = 2, 3.
SuiteResult suite_dm();
/// Consistency of every zoo group, or of the listed group specs.
SuiteResult suite_consistency(std::vector<std::string> const &specs = {});

/// All elements of g with every exponent in [lo, hi], in lexicographic order.
std::vector<GroupElement> exponent_box(PresentationPtr const &g, int lo, int hi);

} // namespace nilself

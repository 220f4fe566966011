#include "nilself/suites.hpp"

#include "nilself/expr.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace nilself {

namespace {

std::string params_string(std::vector<Int> const &p)
{
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? "," : "") + p[i].str();
  return s + ")";
}

bool divisible(GroupElement const &x, Int const &m)
{
  return std::all_of(x.exponents().begin(), x.exponents().end(), [&](Int const &e) { return e % m == 0; });
}

// Central elements of h, as exponent vectors, when the center is a coordinate tail.
Lattice central_part(Subgroup const &h)
{
  auto g = h.presentation();
  auto tail = central_tail(*g);
  if (!tail)
    throw std::domain_error("center is not a coordinate tail");
  std::vector<Vec> rows;
  for (std::size_t l = 0; l < h.hirsch_length(); ++l)
    if (h.leading_indices()[l] >= *tail)
      rows.push_back(h.standard_sequence()[l].exponents());
  return Lattice::from_generators(rows, g->size());
}

} // namespace

bool SuiteResult::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.ok; });
}

void SuiteResult::print(std::ostream &os) const
{
  std::size_t good = 0;
  for (auto const &c : checks) {
    good += c.ok;
    os << (c.ok ? "PASS " : "FAIL ") << c.label;
    if (!c.detail.empty())
      os << ": " << c.detail;
    os << "\n";
  }
  os << "suite " << name << ": " << (passed() ? "PASS" : "FAIL") << " (" << good << "/" << checks.size()
     << " checks)\n";
}

std::vector<GroupElement> exponent_box(PresentationPtr const &g, int lo, int hi)
{
  std::vector<GroupElement> out;
  Vec v(g->size(), Int(lo));
  while (true) {
    out.emplace_back(g, v);
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] == hi)
      v[--i] = lo;
    if (i == 0)
      return out;
    v[i - 1] += 1;
  }
}

SuiteResult suite_n34_presentation()
{
  SuiteResult r{"n34-presentation", {}};
  auto g = n34();
  auto relators = n34_defining_relators(g);
  std::size_t bad = 0;
  std::string first;
  for (auto const &[label, value] : relators)
    if (!value.is_identity() && bad++ == 0)
      first = label + " collects to " + value.to_string();
  r.checks.push_back({"defining relators collect to 1", bad == 0,
                      bad ? first : std::to_string(relators.size()) + " relators"});
  auto c = consistency_check(*g);
  r.checks.push_back({"consistency", c.ok,
                      c.ok ? std::to_string(c.overlaps_checked) + " overlaps, " + std::to_string(c.jacobi_checked) +
                                 " Jacobi triples"
                           : c.message});
  r.checks.push_back({"Hirsch length 13", g->hirsch_length() == 13, std::to_string(g->hirsch_length())});
  auto z = center_lattice(*g);
  r.checks.push_back({"center rank 5", z.rank() == 5, std::to_string(z.rank())});
  return r;
}

SuiteResult suite_n34_derived(int bound)
{
  SuiteResult r{"n34-derived", {}};
  auto g = n34();
  std::vector<std::string> labels;
  std::vector<std::size_t> failures;
  std::vector<std::string> first;
  std::size_t tuples = 0;
  for (int m = 1; m <= bound; ++m)
    for (int n = 1; n <= bound; ++n)
      for (int k = 1; k <= bound; ++k)
        for (int j = 1; j <= bound; ++j) {
          ++tuples;
          auto rels = n34_derived_relations(g, m, n, k, j);
          if (labels.empty()) {
            for (auto const &x : rels)
              labels.push_back(x.label);
            failures.assign(rels.size(), 0);
            first.assign(rels.size(), {});
          }
          for (std::size_t i = 0; i < rels.size(); ++i)
            if (rels[i].lhs != rels[i].rhs && failures[i]++ == 0)
              first[i] = "(m,n,k,j)=" + params_string({m, n, k, j}) + " lhs " + rels[i].lhs.to_string() +
                         " rhs " + rels[i].rhs.to_string();
        }
  for (std::size_t i = 0; i < labels.size(); ++i)
    r.checks.push_back({labels[i], failures[i] == 0,
                        failures[i] ? std::to_string(failures[i]) + " failing tuples, first " + first[i]
                                    : std::to_string(tuples) + " tuples"});
  return r;
}

SuiteResult suite_n34_relations()
{
  auto a = suite_n34_presentation();
  auto b = suite_n34_derived();
  a.name = "n34-relations";
  a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
  return a;
}

SuiteResult suite_psi()
{
  SuiteResult r{"psi", {}};
  for (std::string spec : {"free_nil_c3_r2", "two_gen_c3:1,0"}) {
    auto g = make_group(parse_group_spec(spec));
    for (auto [m1, m2, m3] : std::vector<std::array<int, 3>>{{2, -1, 1}, {2, 0, 0}, {3, 1, -1}}) {
      std::string tag = spec + " psi" + params_string({m1, m2, m3});
      std::optional<Endomorphism> psi;
      try {
        psi = psi_endo(g, m1, m2, m3);
      } catch (std::exception const &e) {
        r.checks.push_back({tag + " injective", false, e.what()});
        continue;
      }
      r.checks.push_back({tag + " injective", psi->is_injective(),
                          "graded determinant " + psi->graded_determinant().str()});

      auto a = parse_element(g, "a"), b = parse_element(g, "b");
      auto AB = commutator(psi->apply(a), psi->apply(b));
      Int h = binom2(Int(m1));
      auto expected = parse_element(g, "[a,b]").pow(m1 * m1) * parse_element(g, "[a,b,a]").pow(m1 * (h - m3)) *
                      parse_element(g, "[a,b,b]").pow(m1 * (m2 + h));
      r.checks.push_back({tag + " [A,B] expansion", AB == expected,
                          "[A,B] = " + AB.to_string() + ", expected " + expected.to_string()});
      r.checks.push_back({tag + " [A,B] divisible by m1", divisible(AB, m1), AB.to_string()});

      auto a2 = psi->apply(psi->apply(a)), b2 = psi->apply(psi->apply(b));
      r.checks.push_back({tag + " psi^2 images divisible by m1", divisible(a2, m1) && divisible(b2, m1),
                          "a -> " + a2.to_string() + ", b -> " + b2.to_string()});

      auto rep = build_cosettree_rep(*psi);
      auto report = faithful_to_depth(*rep, exponent_box(g, -2, 2), 10);
      std::size_t deepest = 0;
      std::string missed;
      for (auto const &e : report.entries) {
        if (e.depth)
          deepest = std::max(deepest, *e.depth);
        else if (missed.empty())
          missed = e.element.to_string();
      }
      r.checks.push_back({tag + " faithful to depth " + std::to_string(report.depth), report.all_detected(),
                          missed.empty() ? std::to_string(report.entries.size()) + " elements, deepest " +
                                               std::to_string(deepest) + ", alphabet " +
                                               std::to_string(rep->alphabet_size())
                                         : "undetected " + missed});
    }
  }
  return r;
}

SuiteResult suite_dm()
{
  SuiteResult r{"dm", {}};
  for (std::size_t n : {3, 4})
    for (int m : {2, 3}) {
      std::string tag = "ut:" + std::to_string(n) + " m=" + std::to_string(m);
      auto psi = dm_conjugation(n, m);
      auto f = dm_endo(n, m);
      auto g = f.presentation();
      Int expected = 1;
      for (std::size_t i = 0; i < (n * n * n - n) / 6; ++i)
        expected *= m;
      auto index = f.domain().index();
      Int det = abs(psi.graded_determinant());
      r.checks.push_back({tag + " index", index && *index == expected && det == expected,
                          "index " + (index ? index->str() : "infinite") + ", |det| " + det.str() + ", expected " +
                              expected.str()});
      r.checks.push_back({tag + " bijective onto the group", f.is_injective() && f.is_surjective(), ""});

      GData data({f});
      auto sat = invariant_central_sublattice(data, central_part(f.domain()), 64);
      r.checks.push_back({tag + " no invariant central sublattice", !sat || sat->is_zero(),
                          sat ? "invariant sublattice of rank " + std::to_string(sat->rank())
                              : "chain does not stabilize within 64 steps"});

      std::mt19937_64 rng(1000 * n + m);
      std::uniform_int_distribution<int> dist(-3, 3);
      std::vector<GroupElement> sample;
      while (sample.size() < 50) {
        Vec v(g->size());
        for (auto &e : v)
          e = dist(rng);
        GroupElement x(g, v);
        if (!x.is_identity())
          sample.push_back(x);
      }
      auto rep = build_cosettree_rep(f);
      auto report = faithful_to_depth(*rep, sample, 8);
      std::size_t deepest = 0;
      std::string missed;
      for (auto const &e : report.entries) {
        if (e.depth)
          deepest = std::max(deepest, *e.depth);
        else if (missed.empty())
          missed = e.element.to_string();
      }
      r.checks.push_back({tag + " 50 random elements act nontrivially by depth " + std::to_string(report.depth),
                          report.all_detected() && report.entries.size() == 50,
                          missed.empty() ? "deepest " + std::to_string(deepest) : "undetected " + missed});
    }
  return r;
}

SuiteResult suite_consistency(std::vector<std::string> const &specs)
{
  SuiteResult r{"consistency", {}};
  std::vector<std::string> list = specs;
  if (list.empty())
    list = {"free_abelian:3", "heisenberg", "free_nil_c3", "free_nil_c3:3", "two_gen_c3:1,0",
            "two_gen_c3:2,3", "ut:3", "ut:4", "n34"};
  for (auto const &s : list) {
    auto g = make_group(parse_group_spec(s));
    auto c = consistency_check(*g);
    std::ostringstream d;
    if (c.ok)
      d << c.overlaps_checked << " overlaps, " << c.jacobi_checked << " Jacobi triples";
    else
      d << c.message;
    r.checks.push_back({s, c.ok, d.str()});
  }
  return r;
}

} // namespace nilself

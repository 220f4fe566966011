// Acceptance runner: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include "nilself/cli.hpp"
#include "nilself/expr.hpp"
#include "nilself/suites.hpp"
#include "n34_corpus.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace nilself;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::string first_failure(SuiteResult const &r)
{
  for (auto const &c : r.checks)
    if (!c.ok)
      return c.label + ": " + c.detail;
  return {};
}

Outcome suite_outcome(SuiteResult const &r, double elapsed, double limit)
{
  std::size_t good = 0;
  for (auto const &c : r.checks)
    good += c.ok;
  std::string d = std::to_string(good) + "/" + std::to_string(r.checks.size()) + " checks, " + fmt_seconds(elapsed);
  if (limit > 0)
    d += " (limit " + fmt_seconds(limit) + ")";
  if (!r.passed())
    d += "; " + first_failure(r);
  return {r.passed() && (limit <= 0 || elapsed < limit), d};
}

Outcome presentation()
{
  auto t0 = std::chrono::steady_clock::now();
  auto r = suite_n34_presentation();
  return suite_outcome(r, seconds_since(t0), 10);
}

Outcome derived_relations()
{
  auto t0 = std::chrono::steady_clock::now();
  auto r = suite_n34_derived(3);
  return suite_outcome(r, seconds_since(t0), 60);
}

Outcome dm()
{
  auto t0 = std::chrono::steady_clock::now();
  auto r = suite_dm();
  return suite_outcome(r, seconds_since(t0), 0);
}

Outcome psi()
{
  auto t0 = std::chrono::steady_clock::now();
  auto r = suite_psi();
  return suite_outcome(r, seconds_since(t0), 0);
}

Outcome adding_machine()
{
  auto z = make_group(parse_group_spec("free_abelian:1"));
  auto rep = build_cosettree_rep(Endomorphism(z, {GroupElement::generator(z, 0, 2)}));
  auto one = rep->lambda(GroupElement::generator(z, 0));
  std::size_t good = 0;
  for (std::size_t v = 0; v < 8; ++v) {
    std::vector<Letter> w{Letter(v & 1), Letter((v >> 1) & 1), Letter((v >> 2) & 1)};
    auto img = one.act_on_word(w);
    std::size_t u = img[0] + 2 * img[1] + 4 * img[2];
    good += u == (v + 1) % 8;
  }
  std::size_t nstates = states(one, 8).size();
  return {good == 8 && nstates == 2 && rep->alphabet_size() == 2,
          std::to_string(good) + "/8 words incremented, " + std::to_string(nstates) + " states"};
}

Outcome portrait_homomorphism()
{
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dist(-3, 3);
  std::size_t pairs = 0, bad = 0;
  std::string first;
  for (std::string s : {"free_abelian:1", "free_abelian:3", "heisenberg", "free_nil_c3", "two_gen_c3:1,0", "ut:3",
                        "ut:4", "n34"}) {
    auto spec = parse_group_spec(s);
    auto g = make_group(spec);
    auto rep = build_representation(canonical_gdata(spec, g));
    auto random = [&] {
      Vec v(g->size());
      for (auto &e : v)
        e = dist(rng);
      return GroupElement(g, v);
    };
    for (int t = 0; t < 200; ++t, ++pairs) {
      auto x = random(), y = random();
      auto px = portrait(rep->lambda(x), 4);
      bool ok = compose(px, portrait(rep->lambda(y), 4)) == portrait(rep->lambda(x * y), 4) &&
                compose(px, portrait(rep->lambda(x.inverse()), 4)).is_trivial();
      if (!ok && bad++ == 0)
        first = s + " at g = " + x.to_string() + ", h = " + y.to_string();
    }
  }
  return {bad == 0, std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " pairs over 8 groups at depth 4" +
                        (bad ? "; first failure " + first : "")};
}

Outcome fcore()
{
  auto corpus = testing_support::n34_corpus();
  std::size_t verified = 0, center_cases = 0;
  std::string first;
  for (auto const &entry : corpus) {
    auto r = fcore_witness(entry.data);
    bool ok = r.witness.has_value() && r.check.ok();
    if (ok) {
      auto g = r.witness->presentation();
      for (auto const &f : entry.data.parts())
        ok = ok && invariant_check(f, *r.witness);
      for (std::size_t i = 0; i < 4; ++i)
        for (auto const &s : r.witness->standard_sequence())
          ok = ok && r.witness->contains(conjugate(s, GroupElement::generator(g, i))) &&
               r.witness->contains(conjugate(s, GroupElement::generator(g, i).inverse()));
    }
    bool invertible = std::all_of(r.determinants.begin(), r.determinants.end(), [](Int const &d) { return d != 0; });
    if (ok && invertible) {
      ++center_cases;
      auto zk = Subgroup::generated_by(r.witness->presentation(), [&] {
        std::vector<GroupElement> v;
        for (auto const &b : r.center_of_K.basis_vectors())
          v.emplace_back(r.witness->presentation(), b);
        return v;
      }());
      ok = *r.witness == zk && r.pointwise_fixed;
    }
    if (ok)
      ++verified;
    else if (first.empty())
      first = entry.name + ": " + r.message;
  }
  return {corpus.size() >= 10 && verified == corpus.size(),
          std::to_string(verified) + "/" + std::to_string(corpus.size()) + " G-data with verified witness, " +
              std::to_string(center_cases) + " of them Z(K) fixed pointwise" + (first.empty() ? "" : "; " + first)};
}

std::optional<std::string> capture(std::string const &command)
{
  FILE *p = popen(command.c_str(), "r");
  if (!p)
    return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0)
    out.append(buf, n);
  if (pclose(p) == -1)
    return std::nullopt;
  return out;
}

Outcome determinism(std::string const &binary)
{
  std::vector<std::vector<std::string>> invocations{{"verify", "psi"},
                                                    {"verify", "dm"},
                                                    {"rep", "--group", "heisenberg"},
                                                    {"rep", "--group", "ut:3", "--endo", "dm:2"},
                                                    {"rep", "--group", "n34", "--element", "a*b", "--format", "json"}};
  std::size_t same = 0;
  std::string mode = binary.empty() ? "in-process" : "separate processes";
  for (auto const &args : invocations) {
    std::string a, b;
    if (binary.empty()) {
      std::ostringstream o1, o2, e;
      run_cli(args, o1, e);
      run_cli(args, o2, e);
      a = o1.str();
      b = o2.str();
    } else {
      std::string cmd = "'" + binary + "'";
      for (auto const &x : args)
        cmd += " '" + x + "'";
      auto r1 = capture(cmd + " 2>/dev/null"), r2 = capture(cmd + " 2>/dev/null");
      if (!r1 || !r2)
        return {false, "cannot run " + binary};
      a = *r1;
      b = *r2;
    }
    same += !a.empty() && a == b;
  }
  return {same == invocations.size(),
          std::to_string(same) + "/" + std::to_string(invocations.size()) + " invocations byte-identical (" + mode + ")"};
}

} // namespace

int main(int argc, char **argv)
{
  std::string binary;
#ifdef NILSELF_BINARY
  binary = NILSELF_BINARY;
#endif
  if (argc > 1)
    binary = argv[1];

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"n34 presentation: defining relators collect to 1, consistent, < 10 s", presentation},
      {"n34 derived relations hold for all (m,n,k,j) in [1,3]^4, < 60 s", derived_relations},
      {"dm endomorphisms: index m^((n^3-n)/6) = |det|, bijective, no invariant central sublattice, faithful to depth 8",
       dm},
      {"psi maps: injective, [A,B] expansion divisible by m1, psi^2 divisibility, faithful to depth 10", psi},
      {"adding machine: little-endian increment on length-3 words, 2 states", adding_machine},
      {"portrait homomorphism and inverse on 200 random pairs per zoo group", portrait_homomorphism},
      {"fcore witnesses verified on the n34 G-data corpus", fcore},
      {"determinism of verify and rep output", [&] { return determinism(binary); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- " << o.detail
              << std::endl;
  }
  return all ? 0 : 1;
}

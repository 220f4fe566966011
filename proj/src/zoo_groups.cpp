#include "nilself/zoo.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nilself {

namespace {

std::string letter_name(std::size_t i)
{
  if (i >= 26)
    throw std::invalid_argument("too many generators");
  return std::string(1, static_cast<char>('a' + i));
}

std::vector<std::string> split(std::string const &s, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::size_t small_param(Int const &x, std::size_t lo, std::size_t hi, char const *what)
{
  if (x < lo || x > hi)
    throw std::invalid_argument(std::string(what) + " out of range");
  return x.convert_to<std::size_t>();
}

Vec unit(std::size_t n, std::size_t i, Int const &e = 1)
{
  Vec v = zero_vec(n);
  v[i] = e;
  return v;
}

} // namespace

std::string GroupSpec::to_string() const
{
  auto join = [&] {
    std::string s;
    for (std::size_t i = 0; i < params.size(); ++i)
      s += (i ? "," : ":") + params[i].str();
    return s;
  };
  switch (kind) {
  case GroupKind::free_abelian:
    return "free_abelian" + join();
  case GroupKind::heisenberg:
    return "heisenberg";
  case GroupKind::free_nil_c3:
    return "free_nil_c3" + join();
  case GroupKind::two_gen_c3:
    return "two_gen_c3" + join();
  case GroupKind::unitriangular:
    return "ut" + join();
  case GroupKind::n34:
    return "n34";
  }
  return {};
}

GroupSpec parse_group_spec(std::string const &s)
{
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::vector<Int> params;
  if (colon != std::string::npos)
    for (auto const &p : split(s.substr(colon + 1), ','))
      params.push_back(parse_int(p));
  auto expect = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("group spec '" + s + "' expects " + std::to_string(n) + " parameter(s)");
  };
  GroupSpec spec;
  spec.params = params;
  if (head == "free_abelian") {
    expect(1);
    spec.kind = GroupKind::free_abelian;
  } else if (head == "heisenberg") {
    expect(0);
    spec.kind = GroupKind::heisenberg;
  } else if (head == "free_nil_c3" || head == "free_nil_c3_r2") {
    if (params.empty() || head == "free_nil_c3_r2") {
      expect(0);
      spec.params = {2};
    } else {
      expect(1);
    }
    spec.kind = GroupKind::free_nil_c3;
  } else if (head == "two_gen_c3") {
    expect(2);
    spec.kind = GroupKind::two_gen_c3;
  } else if (head == "ut" || head == "unitriangular") {
    expect(1);
    spec.kind = GroupKind::unitriangular;
  } else if (head == "n34") {
    expect(0);
    spec.kind = GroupKind::n34;
  } else {
    throw std::invalid_argument("unknown group spec '" + s + "'");
  }
  return spec;
}

namespace {

PresentationPtr build_group(GroupSpec const &spec)
{
  switch (spec.kind) {
  case GroupKind::free_abelian:
    return free_abelian(small_param(spec.params.at(0), 1, 26, "free_abelian rank"));
  case GroupKind::heisenberg:
    return heisenberg();
  case GroupKind::free_nil_c3:
    return free_nilpotent_c3(small_param(spec.params.at(0), 1, 26, "free_nil_c3 rank"));
  case GroupKind::two_gen_c3:
    return two_gen_c3(spec.params.at(0), spec.params.at(1));
  case GroupKind::unitriangular:
    return unitriangular(small_param(spec.params.at(0), 2, 4, "unitriangular dimension"));
  case GroupKind::n34:
    return n34();
  }
  throw std::invalid_argument("unknown group kind");
}

} // namespace

PresentationPtr make_group(GroupSpec const &spec)
{
  static std::mutex mutex;
  static std::map<std::string, PresentationPtr> cache;
  std::string key = spec.to_string();
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }
  auto g = build_group(spec);
  std::lock_guard lock(mutex);
  return cache.emplace(key, g).first->second;
}

PresentationPtr free_abelian(std::size_t n)
{
  std::vector<GeneratorSpec> gens;
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({letter_name(i), 1, {}});
  return PcPresentation::create(std::move(gens), {});
}

PresentationPtr heisenberg()
{
  std::vector<GeneratorSpec> gens{{"a", 1, {}}, {"b", 1, {}}, {"[a,b]", 2, {{0, 1, 1}}}};
  CommutatorTable t;
  t[{1, 0}] = Vec{0, 0, -1};
  return PcPresentation::create(std::move(gens), t);
}

PresentationPtr free_nilpotent_c3(std::size_t r)
{
  if (r == 0)
    throw std::invalid_argument("rank must be positive");
  std::vector<GeneratorSpec> gens;
  for (std::size_t i = 0; i < r; ++i)
    gens.push_back({letter_name(i), 1, {}});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> u;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      u[{i, j}] = gens.size();
      gens.push_back({"[" + gens[i].name + "," + gens[j].name + "]", 2, {{i, j, 1}}});
    }
  std::map<std::array<std::size_t, 3>, std::size_t> v;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = i; k < r; ++k) {
        v[{i, j, k}] = gens.size();
        gens.push_back({"[" + gens[i].name + "," + gens[j].name + "," + gens[k].name + "]", 3,
                        {{u.at({i, j}), k, 1}}});
      }
  std::size_t n = gens.size();
  CommutatorTable t;
  for (auto const &[ij, idx] : u)
    t[{ij.second, ij.first}] = unit(n, idx, -1);
  for (auto const &[ij, idx] : u) {
    auto [i, j] = ij;
    for (std::size_t k = 0; k < r; ++k) {
      Vec e = zero_vec(n);
      if (k >= i) {
        e[v.at({i, j, k})] = 1;
      } else {
        // Jacobi: [[x_i,x_j],x_k] = [[x_k,x_j],x_i] - [[x_k,x_i],x_j] for k < i
        e[v.at({k, j, i})] += 1;
        e[v.at({k, i, j})] -= 1;
      }
      t[{idx, k}] = e;
    }
  }
  return PcPresentation::create(std::move(gens), t);
}

PresentationPtr free_nil_c3_r2()
{
  return free_nilpotent_c3(2);
}

PresentationPtr two_gen_c3(Int const &k14, Int const &k15)
{
  auto f = free_nil_c3_r2();
  if (k14 == 0 && k15 == 0)
    return f;
  if (snf(IntMatrix::from_rows({Vec{k14, k15}}, 2)) != std::vector<Int>{1})
    throw std::domain_error("two_gen_c3: gcd(k14, k15) must be 1 for a torsion-free quotient");
  IntMatrix q = quotient_map(Lattice::from_generators({Vec{k14, k15}}, 2)); // 2 x 1
  // Choose the surviving generator: a basis commutator when one maps to +-1.
  std::string name = "z";
  std::vector<CommutatorFactor> def;
  for (std::size_t l = 0; l < 2 && def.empty(); ++l)
    if (abs(q(l, 0)) == 1) {
      if (q(l, 0) < 0) {
        q(0, 0) = -q(0, 0);
        q(1, 0) = -q(1, 0);
      }
      name = f->name(3 + l);
      def.push_back({2, l, 1});
    }
  if (def.empty()) {
    auto pre = solve_left(q, Vec{1});
    Vec w = *pre;
    name = "z";
    def.push_back({2, 0, w[0]});
    def.push_back({2, 1, w[1]});
  }
  auto gens = std::vector<GeneratorSpec>{{"a", 1, {}}, {"b", 1, {}}, {"[a,b]", 2, {{0, 1, 1}}}, {name, 3, def}};
  auto project = [&](Vec const &v) { return Vec{v[0], v[1], v[2], v[3] * q(0, 0) + v[4] * q(1, 0)}; };
  CommutatorTable t;
  for (auto const &[key, v] : f->table())
    t[key] = project(v);
  return PcPresentation::create(std::move(gens), t);
}

// --- unitriangular -------------------------------------------------------

UTMatrix::UTMatrix(std::size_t n) : m_(IntMatrix::identity(n)) {}

UTMatrix::UTMatrix(IntMatrix m) : m_(std::move(m))
{
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("UTMatrix: matrix must be square");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m_(i, j) != (i == j ? 1 : 0))
        throw std::invalid_argument("UTMatrix: not upper unitriangular");
}

UTMatrix UTMatrix::transvection(std::size_t n, std::size_t i, std::size_t j, Int const &e)
{
  if (!(i < j && j < n))
    throw std::invalid_argument("transvection position must lie above the diagonal");
  UTMatrix t(n);
  t.m_(i, j) = e;
  return t;
}

UTMatrix UTMatrix::inverse() const
{
  // (I + N)^-1 = I - N + N^2 - ...
  std::size_t n = dimension();
  IntMatrix nil = m_;
  for (std::size_t i = 0; i < n; ++i)
    nil(i, i) = 0;
  IntMatrix acc = IntMatrix::identity(n), term = IntMatrix::identity(n);
  for (std::size_t p = 1; p < n; ++p) {
    term = term * nil;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        acc(i, j) += (p % 2 ? -1 : 1) * term(i, j);
  }
  return UTMatrix(acc);
}

UTMatrix operator*(UTMatrix const &a, UTMatrix const &b)
{
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("UTMatrix dimension mismatch");
  return UTMatrix(a.m_ * b.m_);
}

std::vector<std::pair<std::size_t, std::size_t>> unitriangular_basis(std::size_t n)
{
  std::vector<std::pair<std::size_t, std::size_t>> b;
  for (std::size_t w = 1; w < n; ++w)
    for (std::size_t i = 0; i + w < n; ++i)
      b.emplace_back(i, i + w);
  return b;
}

namespace {

std::size_t ut_dimension(PcPresentation const &p)
{
  for (std::size_t n = 2; n <= 4; ++n)
    if (n * (n - 1) / 2 == p.size() && p.name(0) == "t12")
      return n;
  throw std::invalid_argument("not a unitriangular presentation");
}

Vec matrix_to_exponents(std::size_t n, UTMatrix m)
{
  auto basis = unitriangular_basis(n);
  Vec e = zero_vec(basis.size());
  std::size_t pos = 0;
  for (std::size_t w = 1; w < n; ++w) {
    // After clearing lower levels, the w-th superdiagonal holds this level's exponents.
    UTMatrix level(n);
    for (std::size_t i = 0; i + w < n; ++i, ++pos) {
      e[pos] = m(i, i + w);
      level = level * UTMatrix::transvection(n, i, i + w, e[pos]);
    }
    m = level.inverse() * m;
  }
  return e;
}

UTMatrix exponents_to_matrix(std::size_t n, Vec const &e)
{
  auto basis = unitriangular_basis(n);
  UTMatrix m(n);
  for (std::size_t l = 0; l < basis.size(); ++l)
    if (e[l] != 0)
      m = m * UTMatrix::transvection(n, basis[l].first, basis[l].second, e[l]);
  return m;
}

} // namespace

PresentationPtr unitriangular(std::size_t n)
{
  if (n < 2 || n > 4)
    throw std::invalid_argument("unitriangular: dimension must be 2, 3 or 4 (class at most 3)");
  auto basis = unitriangular_basis(n);
  std::vector<GeneratorSpec> gens;
  for (auto [i, j] : basis) {
    GeneratorSpec g{"t" + std::to_string(i + 1) + std::to_string(j + 1), static_cast<int>(j - i), {}};
    if (j - i >= 2) {
      std::size_t left = 0, right = 0;
      for (std::size_t l = 0; l < basis.size(); ++l) {
        if (basis[l] == std::make_pair(i, i + 1))
          left = l;
        if (basis[l] == std::make_pair(i + 1, j))
          right = l;
      }
      g.definition.push_back({left, right, 1});
    }
    gens.push_back(g);
  }
  CommutatorTable t;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      UTMatrix x = UTMatrix::transvection(n, basis[b].first, basis[b].second);
      UTMatrix y = UTMatrix::transvection(n, basis[a].first, basis[a].second);
      UTMatrix c = x.inverse() * y.inverse() * x * y;
      t[{b, a}] = matrix_to_exponents(n, c);
    }
  return PcPresentation::create(std::move(gens), t);
}

UTMatrix to_matrix(GroupElement const &x)
{
  return exponents_to_matrix(ut_dimension(*x.presentation()), x.exponents());
}

GroupElement from_matrix(PresentationPtr const &ut, UTMatrix const &m)
{
  std::size_t n = ut_dimension(*ut);
  if (m.dimension() != n)
    throw std::invalid_argument("matrix dimension does not match the group");
  return GroupElement(ut, matrix_to_exponents(n, m));
}

// --- n34 -----------------------------------------------------------------

namespace {

struct N34Relator {
  std::string label;
  GroupElement value;
};

/// Relators written in the free class-3 group on a, b, c, d.
std::vector<N34Relator> n34_relators_in(PresentationPtr const &g, std::array<GroupElement, 4> const &x)
{
  auto const &[a, b, c, d] = x;
  auto C = [](GroupElement const &p, GroupElement const &q) { return commutator(p, q); };
  auto C3 = [](GroupElement const &p, GroupElement const &q, GroupElement const &r) {
    return commutator(commutator(p, q), r);
  };
  (void)g;
  std::vector<N34Relator> rel;
  rel.push_back({"[a,[a,b]]", C(a, C(a, b))});
  rel.push_back({"[a,b,b]", C3(a, b, b)});
  rel.push_back({"[a,[c,d]]", C(a, C(c, d))});
  rel.push_back({"[a,d,d]", C3(a, d, d)});
  rel.push_back({"[b,[b,c]]", C(b, C(b, c))});
  rel.push_back({"[b,[c,d]]", C(b, C(c, d))});
  rel.push_back({"[c,[c,d]]", C(c, C(c, d))});
  rel.push_back({"[c,d,d]", C3(c, d, d)});
  rel.push_back({"[a,[b,c]][a,c,b]", C(a, C(b, c)) * C3(a, c, b)});
  rel.push_back({"[a,[b,d]][a,d,b]", C(a, C(b, d)) * C3(a, d, b)});
  rel.push_back({"[a,[a,d]][b,c,c]^-1", C(a, C(a, d)) * C3(b, c, c).inverse()});
  rel.push_back({"[a,[a,c]][b,[b,d]]^-1", C(a, C(a, c)) * C(b, C(b, d)).inverse()});
  rel.push_back({"[a,c,b][b,d,d]^-1", C3(a, c, b) * C3(b, d, d).inverse()});
  rel.push_back({"[a,c,c][b,d,c]^-1", C3(a, c, c) * C3(b, d, c).inverse()});
  rel.push_back({"[a,d,b][a,d,c]^-1", C3(a, d, b) * C3(a, d, c).inverse()});
  rel.push_back({"[a,b][a,c,c]^-1", C(a, b) * C3(a, c, c).inverse()});
  rel.push_back({"[c,d][a,[a,c]]^-1", C(c, d) * C(a, C(a, c)).inverse()});
  return rel;
}

std::array<GroupElement, 4> first_four(PresentationPtr const &g)
{
  return {GroupElement::generator(g, 0), GroupElement::generator(g, 1), GroupElement::generator(g, 2),
          GroupElement::generator(g, 3)};
}

} // namespace

std::vector<std::pair<std::string, GroupElement>> n34_defining_relators(PresentationPtr const &g)
{
  std::vector<std::pair<std::string, GroupElement>> out;
  for (auto &r : n34_relators_in(g, first_four(g)))
    out.emplace_back(r.label, r.value);
  return out;
}

PresentationPtr n34()
{
  auto f = free_nilpotent_c3(4);
  std::size_t const kf = f->size(); // 30
  std::size_t const n1 = 4;
  auto x = first_four(f);
  auto tail = [&](GroupElement const &e) {
    return Vec(e.exponents().begin() + n1, e.exponents().end());
  };

  // Normal closure of the relators inside the abelian group gamma_2(F).
  std::vector<Vec> rows;
  for (auto const &r : n34_relators_in(f, x)) {
    if (!is_zero(graded_image(r.value, 1)))
      throw std::logic_error("n34 relator outside the derived subgroup");
    rows.push_back(tail(r.value));
    for (auto const &g : x)
      rows.push_back(tail(commutator(r.value, g)));
  }
  Lattice rel = Lattice::from_generators(rows, kf - n1);

  auto [a, b, c, d] = x;
  std::vector<GroupElement> reps{commutator(a, c),
                                 commutator(a, d),
                                 commutator(b, c),
                                 commutator(b, d),
                                 commutator(a, b),
                                 commutator(c, d),
                                 commutator(a, commutator(a, d)),
                                 commutator(a, commutator(b, c)),
                                 commutator(a, commutator(b, d))};
  std::vector<std::string> names{"[a,c]", "[a,d]", "[b,c]", "[b,d]", "[a,b]",
                                 "[c,d]", "[a,[a,d]]", "[a,[b,c]]", "[a,[b,d]]"};
  std::size_t const k = 4 + reps.size();

  IntMatrix m(0, kf - n1);
  for (auto const &r : reps)
    m.append_row(tail(r));
  for (auto const &v : rel.basis_vectors())
    m.append_row(v);
  if (m.rows() != m.cols() || abs(det(m)) != 1)
    throw std::logic_error("n34: named elements do not complete the relation lattice to a basis");

  auto to_g = [&](GroupElement const &e) {
    if (!is_zero(graded_image(e, 1)))
      throw std::logic_error("n34: expected an element of the derived subgroup");
    auto sol = solve_left(m, tail(e));
    Vec v = zero_vec(k);
    for (std::size_t i = 0; i < reps.size(); ++i)
      v[4 + i] = (*sol)[i];
    return v;
  };

  std::vector<GeneratorSpec> gens{{"a", 1, {}}, {"b", 1, {}}, {"c", 1, {}}, {"d", 1, {}}};
  gens.push_back({names[0], 2, {{0, 2, 1}}});
  gens.push_back({names[1], 2, {{0, 3, 1}}});
  gens.push_back({names[2], 2, {{1, 2, 1}}});
  gens.push_back({names[3], 2, {{1, 3, 1}}});
  gens.push_back({names[4], 3, {{0, 1, 1}}});
  gens.push_back({names[5], 3, {{2, 3, 1}}});
  // [a,[x,y]] = [[x,y],a]^-1
  gens.push_back({names[6], 3, {{5, 0, -1}}});
  gens.push_back({names[7], 3, {{6, 0, -1}}});
  gens.push_back({names[8], 3, {{7, 0, -1}}});

  std::vector<GroupElement> all_reps{a, b, c, d};
  all_reps.insert(all_reps.end(), reps.begin(), reps.end());
  CommutatorTable t;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      t[{j, i}] = to_g(commutator(all_reps[j], all_reps[i]));
  return PcPresentation::create(std::move(gens), t);
}

} // namespace nilself

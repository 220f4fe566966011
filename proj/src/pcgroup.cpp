#include "nilself/pcgroup.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace nilself {

namespace {

Vec slice(Vec const &v, std::size_t begin, std::size_t end)
{
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end));
}

} // namespace

void require_same(PresentationPtr const &a, PresentationPtr const &b)
{
  if (!a || !b || a != b)
    throw std::invalid_argument("elements belong to different presentations");
}

PresentationPtr PcPresentation::create(std::vector<GeneratorSpec> gens, CommutatorTable const &table,
                                       bool validate)
{
  std::shared_ptr<PcPresentation> p(new PcPresentation());
  std::size_t k = gens.size();
  std::set<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    auto const &g = gens[i];
    if (g.weight < 1 || g.weight > 3)
      throw std::invalid_argument("generator '" + g.name + "': weight must be 1, 2 or 3");
    if (i > 0 && g.weight < gens[i - 1].weight)
      throw std::invalid_argument("generator weights must be nondecreasing");
    if (g.name.empty() || !names.insert(g.name).second)
      throw std::invalid_argument("generator names must be nonempty and distinct");
    if (g.weight == 1 && !g.definition.empty())
      throw std::invalid_argument("weight-1 generator '" + g.name + "' cannot have a definition");
    for (auto const &f : g.definition)
      if (f.left >= k || f.right >= k)
        throw std::invalid_argument("definition of '" + g.name + "' uses an unknown generator");
  }
  for (auto const &[key, v] : table) {
    auto [j, i] = key;
    if (!(j > i) || j >= k)
      throw std::invalid_argument("commutator table keys must be (j, i) with j > i");
    if (v.size() != k)
      throw std::invalid_argument("commutator table entry has the wrong length");
    int wsum = gens[i].weight + gens[j].weight;
    for (std::size_t l = 0; l < k; ++l)
      if (v[l] != 0 && gens[l].weight < wsum)
        throw std::invalid_argument("[" + gens[j].name + "," + gens[i].name +
                                    "] involves a generator of too small weight");
  }
  p->gens_ = std::move(gens);
  p->zero_ = zero_vec(k);
  for (auto const &[key, v] : table)
    if (!is_zero(v))
      p->table_.emplace(key, v);
  p->build_caches();
  if (validate) {
    auto report = consistency_check(*p);
    if (!report.ok)
      throw std::domain_error("inconsistent presentation: " + report.message);
    for (std::size_t i = 0; i < k; ++i) {
      auto const &def = p->gens_[i].definition;
      if (def.empty())
        continue;
      Vec acc = p->zero_;
      for (auto const &f : def) {
        Vec gl = p->zero_, gr = p->zero_;
        gl[f.left] = 1;
        gr[f.right] = 1;
        acc = p->multiply(acc, p->power(p->commutator(gl, gr), f.exponent));
      }
      Vec expect = p->zero_;
      expect[i] = 1;
      if (acc != expect)
        throw std::domain_error("definition of generator '" + p->gens_[i].name + "' does not hold");
    }
  }
  return p;
}

int PcPresentation::max_weight() const
{
  return gens_.empty() ? 0 : gens_.back().weight;
}

std::optional<std::size_t> PcPresentation::index_of(std::string const &name) const
{
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name)
      return i;
  return std::nullopt;
}

std::size_t PcPresentation::weight_begin(int w) const
{
  std::size_t i = 0;
  while (i < gens_.size() && gens_[i].weight < w)
    ++i;
  return i;
}

std::size_t PcPresentation::weight_end(int w) const
{
  return weight_begin(w + 1);
}

Vec const &PcPresentation::commutator_entry(std::size_t j, std::size_t i) const
{
  auto it = table_.find({j, i});
  return it == table_.end() ? zero_ : it->second;
}

void PcPresentation::build_caches()
{
  std::size_t k = gens_.size();
  n1_ = weight_end(1);
  n2_ = weight_end(2);
  c2_.assign(n1_, std::vector<Vec>(n1_));
  c3_.assign(n1_, std::vector<Vec>(n1_));
  for (std::size_t l = 0; l < n1_; ++l)
    for (std::size_t i = 0; i < l; ++i) {
      auto const &c = commutator_entry(l, i);
      c2_[l][i] = slice(c, n1_, n2_);
      c3_[l][i] = slice(c, n2_, k);
    }
  q_.assign(n1_, std::vector<Vec>(n2_ - n1_));
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t m = n1_; m < n2_; ++m)
      q_[i][m - n1_] = slice(commutator_entry(m, i), n2_, k);
  z_.assign(n1_, std::vector<Vec>(n1_));
  for (std::size_t l = 0; l < n1_; ++l)
    for (std::size_t i = 0; i < l; ++i)
      z_[l][i] = bracket_with(c2_[l][i], i);
  w_.assign(n1_, std::vector<std::vector<Vec>>(n1_, std::vector<Vec>(n1_)));
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t l = i + 1; l < n1_; ++l)
      for (std::size_t l2 = l; l2 < n1_; ++l2)
        w_[i][l][l2] = bracket_with(c2_[l][i], l2);
}

Vec PcPresentation::bracket_with(Vec const &beta, std::size_t i) const
{
  Vec r = zero_vec(gens_.size() - n2_);
  for (std::size_t m = 0; m < beta.size(); ++m)
    axpy(r, beta[m], q_[i][m]);
  return r;
}

/*
 * x = A(alpha) B(beta) C(gamma) by weight blocks.  For a weight-1 generator
 * g_i, moving g_i^e left past g_l^{alpha_l} (l > i) turns each into
 * (g_l c^e z^{C(e,2)})^{alpha_l} with c = [g_l, g_i] and z = [c, g_i]; the
 * weight-2 parts produced are then moved right past the later g_l' factors.
 */
void PcPresentation::multiply_generator_power(Vec &x, std::size_t i, Int const &e) const
{
  if (e == 0)
    return;
  if (i >= n1_) {
    x[i] += e;
    return;
  }
  std::size_t const n2w = n2_ - n1_;
  std::size_t const n3w = gens_.size() - n2_;
  Vec beta_add = zero_vec(n2w);
  Vec gamma_add = zero_vec(n3w);

  if (n3w > 0) {
    Vec beta_old = slice(x, n1_, n2_);
    axpy(gamma_add, e, bracket_with(beta_old, i));
  }
  Int const be = binom2(e);
  for (std::size_t l = i + 1; l < n1_; ++l) {
    Int const &al = x[l];
    if (al == 0)
      continue;
    Int ae = al * e;
    axpy(beta_add, ae, c2_[l][i]);
    if (n3w == 0)
      continue;
    axpy(gamma_add, ae, c3_[l][i]);
    axpy(gamma_add, al * be, z_[l][i]);
    axpy(gamma_add, binom2(al) * e, w_[i][l][l]);
    for (std::size_t l2 = l + 1; l2 < n1_; ++l2)
      if (x[l2] != 0)
        axpy(gamma_add, x[l2] * ae, w_[i][l][l2]);
  }
  x[i] += e;
  for (std::size_t m = 0; m < n2w; ++m)
    x[n1_ + m] += beta_add[m];
  for (std::size_t m = 0; m < n3w; ++m)
    x[n2_ + m] += gamma_add[m];
}

Vec PcPresentation::multiply(Vec x, Vec const &y) const
{
  if (x.size() != gens_.size() || y.size() != gens_.size())
    throw std::invalid_argument("exponent vector length does not match the presentation");
  for (std::size_t i = 0; i < n1_; ++i)
    multiply_generator_power(x, i, y[i]);
  for (std::size_t i = n1_; i < gens_.size(); ++i)
    x[i] += y[i];
  return x;
}

Vec PcPresentation::inverse(Vec const &x) const
{
  if (x.size() != gens_.size())
    throw std::invalid_argument("exponent vector length does not match the presentation");
  Vec r = zero_;
  for (std::size_t i = n1_; i < gens_.size(); ++i)
    r[i] = -x[i];
  for (std::size_t i = n1_; i-- > 0;)
    multiply_generator_power(r, i, -x[i]);
  return r;
}

Vec PcPresentation::power(Vec const &x, Int n) const
{
  Vec base = n < 0 ? inverse(x) : x;
  if (n < 0)
    n = -n;
  Vec r = zero_;
  while (n > 0) {
    if ((n & 1) != 0)
      r = multiply(std::move(r), base);
    n >>= 1;
    if (n > 0)
      base = multiply(base, base);
  }
  return r;
}

Vec PcPresentation::commutator(Vec const &x, Vec const &y) const
{
  // [x, y] = (yx)^-1 (xy)
  return multiply(inverse(multiply(y, x)), multiply(x, y));
}

GroupElement::GroupElement(PresentationPtr p) : pres_(std::move(p))
{
  if (!pres_)
    throw std::invalid_argument("null presentation");
  exps_ = zero_vec(pres_->size());
}

GroupElement::GroupElement(PresentationPtr p, Vec exponents) : pres_(std::move(p)), exps_(std::move(exponents))
{
  if (!pres_)
    throw std::invalid_argument("null presentation");
  if (exps_.size() != pres_->size())
    throw std::invalid_argument("exponent vector length does not match the presentation");
}

GroupElement GroupElement::generator(PresentationPtr p, std::size_t i, Int const &e)
{
  GroupElement g(std::move(p));
  if (i >= g.exps_.size())
    throw std::out_of_range("generator index out of range");
  g.exps_[i] = e;
  return g;
}

GroupElement GroupElement::inverse() const
{
  return GroupElement(pres_, pres_->inverse(exps_));
}

GroupElement GroupElement::pow(Int const &n) const
{
  return GroupElement(pres_, pres_->power(exps_, n));
}

GroupElement &GroupElement::operator*=(GroupElement const &y)
{
  require_same(pres_, y.pres_);
  exps_ = pres_->multiply(std::move(exps_), y.exps_);
  return *this;
}

std::string GroupElement::to_string() const
{
  std::string s;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0)
      continue;
    if (!s.empty())
      s += "*";
    s += pres_->name(i);
    if (exps_[i] != 1)
      s += "^" + exps_[i].str();
  }
  return s.empty() ? "1" : s;
}

GroupElement multiply(GroupElement const &x, GroupElement const &y)
{
  return x * y;
}

GroupElement inverse(GroupElement const &x)
{
  return x.inverse();
}

GroupElement power(GroupElement const &x, Int const &n)
{
  return x.pow(n);
}

GroupElement commutator(GroupElement const &x, GroupElement const &y)
{
  require_same(x.presentation(), y.presentation());
  return GroupElement(x.presentation(), x.presentation()->commutator(x.exponents(), y.exponents()));
}

GroupElement commutator(std::vector<GroupElement> const &xs)
{
  if (xs.empty())
    throw std::invalid_argument("empty commutator");
  GroupElement r = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i)
    r = commutator(r, xs[i]);
  return r;
}

GroupElement conjugate(GroupElement const &x, GroupElement const &y)
{
  return y.inverse() * x * y;
}

ConsistencyReport consistency_check(PcPresentation const &p)
{
  ConsistencyReport rep;
  std::size_t k = p.size();
  auto gen = [&](std::size_t i, int s) {
    Vec v = zero_vec(k);
    v[i] = s;
    return v;
  };
  auto fail = [&](std::size_t i, std::size_t j, std::size_t l, std::string what) {
    rep.ok = false;
    rep.witness = std::array<std::size_t, 3>{i, j, l};
    rep.message = what + " fails for (" + p.name(i) + ", " + p.name(j) + ", " + p.name(l) + ")";
  };
  for (std::size_t i = 0; i < k && rep.ok; ++i)
    for (std::size_t j = i; j < k && rep.ok; ++j)
      for (std::size_t l = j; l < k && rep.ok; ++l) {
        if (p.weight(i) + p.weight(j) + p.weight(l) > 3 && !(i < j && j < l))
          continue;
        for (int signs = 0; signs < 8 && rep.ok; ++signs) {
          Vec gk = gen(l, (signs & 1) ? -1 : 1);
          Vec gj = gen(j, (signs & 2) ? -1 : 1);
          Vec gi = gen(i, (signs & 4) ? -1 : 1);
          ++rep.overlaps_checked;
          if (p.multiply(p.multiply(gk, gj), gi) != p.multiply(gk, p.multiply(gj, gi)))
            fail(l, j, i, "associativity");
        }
      }
  std::size_t n1 = p.weight_end(1);
  for (std::size_t i = 0; i < n1 && rep.ok; ++i)
    for (std::size_t j = i + 1; j < n1 && rep.ok; ++j)
      for (std::size_t l = j + 1; l < n1 && rep.ok; ++l) {
        Vec x = gen(i, 1), y = gen(j, 1), z = gen(l, 1);
        Vec t = p.multiply(p.multiply(p.commutator(p.commutator(x, y), z), p.commutator(p.commutator(y, z), x)),
                           p.commutator(p.commutator(z, x), y));
        ++rep.jacobi_checked;
        if (!is_zero(t))
          fail(i, j, l, "Jacobi identity");
      }
  return rep;
}

Lattice center_lattice(PcPresentation const &p)
{
  std::size_t k = p.size();
  // Linearised condition: the exponent vector v is central iff
  // sum_l v_l [g_l, g_i] = 0 for every i (bilinear part of [x, g_i]).
  IntMatrix cond(k, k * k);
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < k; ++i) {
      if (l == i)
        continue;
      Vec c = l > i ? p.commutator_entry(l, i) : scale(p.commutator_entry(i, l), -1);
      for (std::size_t t = 0; t < k; ++t)
        cond(l, i * k + t) = c[t];
    }
  Lattice z = lattice_kernel(cond);
  auto basis = z.basis_vectors();
  for (auto const &v : basis)
    for (std::size_t i = 0; i < k; ++i) {
      Vec g = zero_vec(k);
      g[i] = 1;
      if (p.multiply(v, g) != p.multiply(g, v))
        throw std::domain_error("center is not given by the linearised conditions");
    }
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b)
      if (p.multiply(basis[a], basis[b]) != add(basis[a], basis[b]))
        throw std::domain_error("center coordinates are not additive");
  return z;
}

std::optional<std::size_t> central_tail(PcPresentation const &p)
{
  Lattice z = center_lattice(p);
  std::size_t k = p.size();
  std::size_t c = k - z.rank();
  std::vector<Vec> tail;
  for (std::size_t l = c; l < k; ++l) {
    Vec e = zero_vec(k);
    e[l] = 1;
    tail.push_back(e);
  }
  if (Lattice::from_generators(tail, k) == z)
    return c;
  return std::nullopt;
}

Vec graded_image(GroupElement const &x, int weight)
{
  auto const &p = *x.presentation();
  return slice(x.exponents(), p.weight_begin(weight), p.weight_end(weight));
}

} // namespace nilself

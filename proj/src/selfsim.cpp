#include "nilself/selfsim.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace nilself {

// --- G-data and the representation ----------------------------------------

GData::GData(std::vector<VirtualEndomorphism> parts) : parts_(std::move(parts))
{
  if (parts_.empty())
    throw std::invalid_argument("G-data needs at least one part");
  for (auto const &f : parts_) {
    require_same(parts_.front().presentation(), f.presentation());
    sizes_.push_back(f.domain().finite_index());
    alphabet_ += sizes_.back();
  }
  if (alphabet_ >= (std::uint64_t(1) << 32))
    throw std::domain_error("tree arity too large");
}

Representation::Representation(GData data, std::optional<Endomorphism> psi)
  : data_(std::move(data)), psi_(std::move(psi))
{
  std::uint64_t off = 0;
  for (auto m : data_.part_sizes()) {
    offsets_.push_back(off);
    off += m;
  }
  GroupElement e(data_.presentation());
  ids_.emplace(e.exponents(), 0);
  elements_.push_back(e);
}

std::shared_ptr<Representation> Representation::create(GData data, std::optional<Endomorphism> psi)
{
  return std::shared_ptr<Representation>(new Representation(std::move(data), std::move(psi)));
}

TreeAutomorphism Representation::lambda(GroupElement const &g) const
{
  return TreeAutomorphism(shared_from_this(), state_of(g));
}

StateId Representation::state_of(GroupElement const &g) const
{
  require_same(presentation(), g.presentation());
  std::lock_guard lock(mutex_);
  auto [it, fresh] = ids_.try_emplace(g.exponents(), elements_.size());
  if (fresh)
    elements_.push_back(g);
  return it->second;
}

GroupElement Representation::element(StateId s) const
{
  std::lock_guard lock(mutex_);
  return elements_.at(s);
}

std::pair<std::size_t, std::uint64_t> Representation::letter_position(Letter x) const
{
  if (x >= alphabet_size())
    throw std::out_of_range("letter outside the alphabet");
  std::size_t part = std::upper_bound(offsets_.begin(), offsets_.end(), std::uint64_t(x)) - offsets_.begin() - 1;
  return {part, x - offsets_[part]};
}

Letter Representation::letter(std::size_t part, std::uint64_t coset) const
{
  if (part >= offsets_.size() || coset >= data_.part_sizes()[part])
    throw std::out_of_range("no such letter");
  return static_cast<Letter>(offsets_[part] + coset);
}

GroupElement Representation::transversal_element(Letter x) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = transversal_.find(x); it != transversal_.end())
      return it->second;
  }
  auto [part, coset] = letter_position(x);
  auto t = data_.parts()[part].domain().transversal_element(coset);
  std::lock_guard lock(mutex_);
  return transversal_.try_emplace(x, t).first->second;
}

Representation::Entry Representation::entry(StateId s, Letter x) const
{
  if (x >= alphabet_size())
    throw std::out_of_range("letter outside the alphabet");
  if (s == 0)
    return {x, 0};
  std::uint64_t key = (s << 32) | x;
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
  }
  GroupElement g = element(s);
  auto [part, coset] = letter_position(x);
  auto const &f = data_.parts()[part];
  auto d = f.domain().decompose(transversal_element(x) * g);
  Entry e{letter(part, d.coset), state_of(f.apply_word(d.word))};
  std::lock_guard lock(mutex_);
  memo_.emplace(key, e);
  return e;
}

RepresentationPtr build_cosettree_rep(Endomorphism const &psi)
{
  if (!psi.is_injective())
    throw std::domain_error("coset tree needs an injective endomorphism");
  if (!psi.image().is_finite_index())
    throw std::domain_error("coset tree needs an image of finite index");
  return Representation::create(GData({psi.inverse_on_image()}), psi);
}

RepresentationPtr build_cosettree_rep(VirtualEndomorphism const &f)
{
  return Representation::create(GData({f}));
}

RepresentationPtr build_representation(GData const &data)
{
  return Representation::create(data);
}

std::size_t max_expansion_depth()
{
  char const *v = std::getenv("SELFSIM_MAX_DEPTH");
  if (!v || !*v)
    return 16;
  char *end = nullptr;
  unsigned long d = std::strtoul(v, &end, 10);
  if (*end != '\0' || d == 0)
    return 16;
  return d;
}

// --- faithfulness probes ----------------------------------------------------

DivisibilityCertificate divisibility_certificate(Endomorphism const &psi, std::size_t kmax)
{
  auto g = psi.presentation();
  DivisibilityCertificate c;
  c.kmax = kmax;
  c.m1 = 0;
  IntMatrix w1 = psi.graded_block(1);
  for (std::size_t i = 0; i < w1.rows(); ++i)
    for (std::size_t j = 0; j < w1.cols(); ++j)
      c.m1 = gcd(c.m1, w1(i, j));
  std::vector<GroupElement> cur;
  for (std::size_t i = 0; i < g->size(); ++i)
    cur.push_back(GroupElement::generator(g, i));
  Int modulus = 1;
  for (std::size_t k = 1; k <= kmax; ++k) {
    modulus *= c.m1;
    for (auto &x : cur)
      x = psi.apply(psi.apply(x));
    for (auto const &x : cur)
      for (auto const &e : x.exponents())
        if (modulus == 0 ? e != 0 : e % modulus != 0) {
          c.failing_k = k;
          return c;
        }
  }
  c.holds = true;
  return c;
}

bool FaithfulnessReport::all_detected() const
{
  return std::all_of(entries.begin(), entries.end(), [](Entry const &e) { return e.depth.has_value(); });
}

FaithfulnessReport faithful_to_depth(Representation const &rep, std::vector<GroupElement> const &elements,
                                     std::size_t depth)
{
  FaithfulnessReport r;
  r.depth = std::min(depth, max_expansion_depth());
  for (auto const &g : elements) {
    if (g.is_identity())
      continue;
    r.entries.push_back({g, least_nontrivial_depth(rep.lambda(g), r.depth)});
  }
  if (rep.endomorphism())
    r.certificate = divisibility_certificate(*rep.endomorphism(), std::min<std::size_t>(r.depth, 8));
  return r;
}

// --- invariance and the induced matrix ---------------------------------------

bool invariant_check(VirtualEndomorphism const &f, Subgroup const &n)
{
  require_same(f.presentation(), n.presentation());
  for (auto const &s : n.standard_sequence())
    if (!f.domain().contains(s))
      throw std::invalid_argument("subgroup is not contained in the domain");
  for (auto const &s : n.standard_sequence())
    if (!n.contains(f.apply(s)))
      return false;
  return true;
}

IntMatrix nf_matrix(VirtualEndomorphism const &f, std::array<Int, 4> const &powers)
{
  auto g = f.presentation();
  if (g->weight_end(1) != 4)
    throw std::invalid_argument("N_f needs exactly four weight-1 generators");
  IntMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    auto y = graded_image(f.apply(GroupElement::generator(g, i, powers[i])), 1);
    for (std::size_t j = 0; j < 4; ++j)
      m(i, j) = y[j];
  }
  return m;
}

namespace {

// Coefficient lattice {c : prod images^c is central with tail coordinates in
// target}; coordinates below `tail` are cleared weight by weight, where the
// induced maps are additive.
Lattice central_preimage(PresentationPtr const &g, std::vector<GroupElement> images, Lattice const &target,
                         std::size_t tail)
{
  std::size_t r = images.size();
  IntMatrix u = IntMatrix::identity(r);
  auto combine = [&](IntMatrix const &x) {
    std::vector<GroupElement> out;
    for (std::size_t k = 0; k < x.rows(); ++k) {
      GroupElement y(g);
      for (std::size_t l = 0; l < x.cols(); ++l)
        if (x(k, l) != 0)
          y *= images[l].pow(x(k, l));
      out.push_back(y);
    }
    images = std::move(out);
    u = x * u;
  };
  for (int w = 1; w <= g->max_weight(); ++w) {
    std::size_t b = g->weight_begin(w), e = std::min(g->weight_end(w), tail);
    if (b >= e)
      continue;
    IntMatrix m(images.size(), e - b);
    for (std::size_t k = 0; k < images.size(); ++k)
      for (std::size_t l = b; l < e; ++l)
        m(k, l - b) = images[k][l];
    if (m.is_zero())
      continue;
    auto ker = lattice_kernel(m);
    if (ker.is_zero())
      return Lattice(r);
    combine(ker.basis());
  }
  IntMatrix full(images.size(), g->size());
  for (std::size_t k = 0; k < images.size(); ++k)
    full.set_row(k, images[k].exponents());
  auto pre = lattice_preimage(full, target);
  if (pre.is_zero())
    return Lattice(r);
  return Lattice::from_generators(pre.basis() * u);
}

std::vector<GroupElement> elements_of(PresentationPtr const &g, Lattice const &l)
{
  std::vector<GroupElement> out;
  for (auto const &v : l.basis_vectors())
    out.emplace_back(g, v);
  return out;
}

// Exponent vectors sum_l c_l b_l for coefficient rows c over a basis b.
Lattice expand(Lattice const &coeffs, Lattice const &over)
{
  if (coeffs.is_zero())
    return Lattice(over.ambient_rank());
  return Lattice::from_generators(coeffs.basis() * over.basis());
}

} // namespace

Lattice abelian_kernel(PresentationPtr const &g, std::vector<GroupElement> const &images)
{
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!commutator(images[i], images[j]).is_identity())
        throw std::invalid_argument("abelian_kernel: images do not commute");
  return central_preimage(g, images, Lattice(g->size()), g->size());
}

std::optional<Lattice> invariant_central_sublattice(GData const &data, Lattice const &start, std::size_t bound)
{
  auto g = data.presentation();
  auto tail = central_tail(*g);
  if (!tail)
    throw std::domain_error("center is not a coordinate tail");
  Lattice l = start;
  for (std::size_t t = 0; t <= bound; ++t) {
    if (l.is_zero())
      return l;
    Lattice next = l;
    auto gens = elements_of(g, l);
    for (auto const &f : data.parts()) {
      std::vector<GroupElement> images;
      for (auto const &x : gens)
        images.push_back(f.apply(x));
      next = lattice_intersect(next, expand(central_preimage(g, images, l, *tail), l));
    }
    if (next == l)
      return l;
    l = next;
  }
  return std::nullopt;
}

WitnessCheck verify_witness(GData const &data, Subgroup const &w)
{
  WitnessCheck c;
  auto g = data.presentation();
  auto const &seq = w.standard_sequence();
  c.nontrivial = !seq.empty();
  c.inside_domains = std::all_of(data.parts().begin(), data.parts().end(), [&](VirtualEndomorphism const &f) {
    return std::all_of(seq.begin(), seq.end(), [&](GroupElement const &s) { return f.domain().contains(s); });
  });
  c.normal = true;
  for (std::size_t i = 0; i < g->weight_end(1) && c.normal; ++i)
    for (int e : {1, -1}) {
      auto x = GroupElement::generator(g, i, e);
      for (auto const &s : seq)
        if (!w.contains(conjugate(s, x)))
          c.normal = false;
    }
  c.invariant = c.inside_domains && std::all_of(data.parts().begin(), data.parts().end(),
                                                [&](VirtualEndomorphism const &f) { return invariant_check(f, w); });
  return c;
}

FcoreResult fcore_witness(GData const &data)
{
  auto g = data.presentation();
  if (g->weight_end(1) != 4)
    throw std::invalid_argument("fcore_witness needs four weight-1 generators");
  auto tail = central_tail(*g);
  if (!tail)
    throw std::domain_error("center is not a coordinate tail");

  FcoreResult r;
  std::vector<GroupElement> kgens;
  for (std::size_t i = 0; i < 4; ++i) {
    Int p = 1;
    auto x = GroupElement::generator(g, i);
    for (auto const &f : data.parts()) {
      std::uint64_t idx = f.domain().finite_index();
      std::uint64_t e = 1;
      GroupElement y = x;
      while (!f.domain().contains(y)) {
        if (++e > idx)
          throw std::logic_error("no power of a generator lies in a finite-index subgroup");
        y *= x;
      }
      p = lcm(p, Int(e));
    }
    r.powers[i] = p;
    kgens.push_back(x.pow(p));
  }
  Subgroup k = Subgroup::generated_by(g, kgens);
  std::vector<Vec> central;
  for (std::size_t l = 0; l < k.hirsch_length(); ++l)
    if (k.leading_indices()[l] >= *tail)
      central.push_back(k.standard_sequence()[l].exponents());
  r.center_of_K = Lattice::from_generators(central, g->size());

  bool all_invertible = true;
  for (auto const &f : data.parts()) {
    r.nf.push_back(nf_matrix(f, r.powers));
    r.determinants.push_back(det(r.nf.back()));
    if (r.determinants.back() == 0)
      all_invertible = false;
  }

  Lattice candidate = r.center_of_K;
  if (all_invertible) {
    r.method = "center";
  } else {
    r.method = "kernel";
    auto gens = elements_of(g, r.center_of_K);
    for (std::size_t i = 0; i < data.parts().size(); ++i) {
      if (r.determinants[i] != 0)
        continue;
      std::vector<GroupElement> images;
      for (auto const &x : gens)
        images.push_back(data.parts()[i].apply(x));
      candidate = lattice_intersect(candidate, expand(abelian_kernel(g, images), r.center_of_K));
    }
  }

  auto attempt = [&](Lattice const &l) {
    Subgroup w = Subgroup::generated_by(g, elements_of(g, l));
    r.check = verify_witness(data, w);
    if (r.check.ok())
      r.witness = w;
    return r.check.ok();
  };
  if (candidate.is_zero() || !attempt(candidate)) {
    r.method = "saturation";
    auto sat = invariant_central_sublattice(data, r.center_of_K, 64);
    if (!sat || sat->is_zero() || !attempt(*sat)) {
      r.message = "no invariant sublattice found within bound";
      return r;
    }
  }
  r.pointwise_fixed = true;
  for (auto const &f : data.parts())
    for (auto const &s : r.witness->standard_sequence())
      if (f.apply(s) != s)
        r.pointwise_fixed = false;
  r.message = "witness of rank " + std::to_string(r.witness->hirsch_length()) + " (" + r.method + ")";
  return r;
}

GData canonical_gdata(GroupSpec const &spec, PresentationPtr const &g)
{
  if (spec.kind == GroupKind::n34) {
    // x -> a^(e_a(x) / 2) on <a^2, b, c, d>
    auto k = n34_subgroup_K(g, 2, 1, 1, 1);
    std::vector<GroupElement> images;
    for (auto const &s : k.standard_sequence())
      images.push_back(GroupElement::generator(g, 0, s[0] / 2));
    return GData({VirtualEndomorphism(k, std::move(images))});
  }
  return GData({canonical_endomorphism(spec, g).inverse_on_image()});
}

} // namespace nilself

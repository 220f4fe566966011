#include "nilself/subgroup.hpp"

#include <deque>
#include <stdexcept>

namespace nilself {

namespace {

std::optional<std::size_t> leading(Vec const &v)
{
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      return i;
  return std::nullopt;
}

/// Element of the subgroup under construction with an optional tracked image.
struct Item {
  Vec g;
  Vec img;
};

class Sifter
{
public:
  Sifter(PcPresentation const &p, PcPresentation const *q) : p_(p), q_(q), table_(p.size()) {}

  void push(Item x) { queue_.push_back(std::move(x)); }

  void run()
  {
    while (true) {
      drain();
      // Closure pass: all commutators of table entries must reduce to 1.
      auto before = snapshot();
      for (std::size_t j = 0; j < table_.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (table_[i] && table_[j])
            push(comm(*table_[j], *table_[i]));
      drain();
      if (snapshot() == before)
        break;
    }
    normalize();
  }

  std::vector<std::optional<Item>> const &table() const { return table_; }

private:
  Item mul(Item const &a, Item const &b) const
  {
    return {p_.multiply(a.g, b.g), q_ ? q_->multiply(a.img, b.img) : Vec{}};
  }
  Item inv(Item const &a) const { return {p_.inverse(a.g), q_ ? q_->inverse(a.img) : Vec{}}; }
  Item pow(Item const &a, Int const &n) const
  {
    return {p_.power(a.g, n), q_ ? q_->power(a.img, n) : Vec{}};
  }
  Item comm(Item const &a, Item const &b) const
  {
    return {p_.commutator(a.g, b.g), q_ ? q_->commutator(a.img, b.img) : Vec{}};
  }

  std::vector<Vec> snapshot() const
  {
    std::vector<Vec> s;
    for (auto const &t : table_)
      s.push_back(t ? t->g : Vec{});
    return s;
  }

  void install(std::size_t l, Item x)
  {
    for (auto const &t : table_)
      if (t)
        push(comm(x, *t));
    table_[l] = std::move(x);
  }

  void drain()
  {
    while (!queue_.empty()) {
      Item x = std::move(queue_.front());
      queue_.pop_front();
      while (true) {
        auto l = leading(x.g);
        if (!l) {
          if (q_ && !is_zero(x.img))
            throw std::domain_error("assignment is not a homomorphism: a relation maps to a nontrivial element");
          break;
        }
        if (!table_[*l]) {
          if (x.g[*l] < 0)
            x = inv(x);
          install(*l, std::move(x));
          break;
        }
        Item const &y = *table_[*l];
        Int a = x.g[*l], b = y.g[*l];
        if (a % b == 0) {
          x = mul(pow(y, -(a / b)), x);
          continue;
        }
        auto eg = ext_gcd(a, b);
        Item z = mul(pow(x, eg.s), pow(y, eg.t)); // leading exponent gcd(a, b)
        Item old = y;
        install(*l, std::move(z));
        push(std::move(old));
      }
    }
  }

  /// Reduce entries at the leading positions of later entries into [0, p).
  void normalize()
  {
    for (std::size_t l = 0; l < table_.size(); ++l) {
      if (!table_[l])
        continue;
      for (std::size_t m = l + 1; m < table_.size(); ++m) {
        if (!table_[m])
          continue;
        Int qm = floor_div(table_[l]->g[m], table_[m]->g[m]);
        if (qm != 0)
          table_[l] = mul(*table_[l], pow(*table_[m], -qm));
      }
    }
  }

  PcPresentation const &p_;
  PcPresentation const *q_;
  std::vector<std::optional<Item>> table_;
  std::deque<Item> queue_;
};

} // namespace

Subgroup Subgroup::generated_by(PresentationPtr g, std::vector<GroupElement> const &gens)
{
  if (!g)
    throw std::invalid_argument("null presentation");
  Sifter s(*g, nullptr);
  for (auto const &x : gens) {
    require_same(g, x.presentation());
    s.push({x.exponents(), {}});
  }
  s.run();
  Subgroup h;
  h.pres_ = g;
  h.slot_.assign(g->size(), -1);
  for (std::size_t l = 0; l < g->size(); ++l)
    if (s.table()[l]) {
      h.slot_[l] = static_cast<std::ptrdiff_t>(h.seq_.size());
      h.seq_.emplace_back(g, s.table()[l]->g);
      h.lead_.push_back(l);
    }
  return h;
}

Subgroup Subgroup::whole(PresentationPtr g)
{
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g->size(); ++i)
    gens.push_back(GroupElement::generator(g, i));
  return generated_by(g, gens);
}

Vec Subgroup::leading_exponents() const
{
  Vec p;
  for (std::size_t i = 0; i < seq_.size(); ++i)
    p.push_back(seq_[i][lead_[i]]);
  return p;
}

std::optional<Int> Subgroup::index() const
{
  if (!is_finite_index())
    return std::nullopt;
  Int r = 1;
  for (auto const &p : leading_exponents())
    r *= p;
  return r;
}

std::uint64_t Subgroup::finite_index() const
{
  auto i = index();
  if (!i)
    throw std::domain_error("subgroup has infinite index");
  if (*i > Int(std::uint64_t(1) << 62))
    throw std::domain_error("subgroup index too large");
  return i->convert_to<std::uint64_t>();
}

std::optional<Vec> Subgroup::word_of(GroupElement const &x) const
{
  require_same(pres_, x.presentation());
  Vec q = zero_vec(seq_.size());
  Vec r = x.exponents();
  for (std::size_t l = 0; l < r.size(); ++l) {
    if (r[l] == 0)
      continue;
    if (slot_[l] < 0)
      return std::nullopt;
    auto pos = static_cast<std::size_t>(slot_[l]);
    Int const &p = seq_[pos][l];
    if (r[l] % p != 0)
      return std::nullopt;
    q[pos] = r[l] / p;
    r = pres_->multiply(pres_->power(seq_[pos].exponents(), -q[pos]), r);
  }
  return q;
}

bool Subgroup::contains(GroupElement const &x) const
{
  return word_of(x).has_value();
}

bool Subgroup::is_subgroup_of(Subgroup const &other) const
{
  for (auto const &s : seq_)
    if (!other.contains(s))
      return false;
  return true;
}

Subgroup::CosetDecomposition Subgroup::decompose(GroupElement const &x) const
{
  require_same(pres_, x.presentation());
  if (!is_finite_index())
    throw std::domain_error("coset decomposition needs a finite-index subgroup");
  Vec q = zero_vec(seq_.size());
  Vec r = x.exponents();
  std::uint64_t coset = 0;
  for (std::size_t l = 0; l < r.size(); ++l) {
    Int const &p = seq_[l][l];
    q[l] = floor_div(r[l], p);
    if (q[l] != 0)
      r = pres_->multiply(pres_->power(seq_[l].exponents(), -q[l]), r);
    coset = coset * p.convert_to<std::uint64_t>() + r[l].convert_to<std::uint64_t>();
  }
  return {q, GroupElement(pres_, r), coset};
}

std::uint64_t Subgroup::coset_of(GroupElement const &x) const
{
  return decompose(x).coset;
}

GroupElement Subgroup::transversal_element(std::uint64_t j) const
{
  std::uint64_t m = finite_index();
  if (j >= m)
    throw std::out_of_range("transversal index out of range");
  Vec e = zero_vec(pres_->size());
  for (std::size_t l = pres_->size(); l-- > 0;) {
    auto p = seq_[l][l].convert_to<std::uint64_t>();
    e[l] = j % p;
    j /= p;
  }
  return GroupElement(pres_, e);
}

std::vector<GroupElement> Subgroup::transversal() const
{
  std::uint64_t m = finite_index();
  std::vector<GroupElement> t;
  t.reserve(m);
  for (std::uint64_t j = 0; j < m; ++j)
    t.push_back(transversal_element(j));
  return t;
}

GroupElement Subgroup::evaluate(Vec const &q) const
{
  if (q.size() != seq_.size())
    throw std::invalid_argument("word length does not match the standard sequence");
  Vec r = zero_vec(pres_->size());
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0)
      r = pres_->multiply(r, pres_->power(seq_[i].exponents(), q[i]));
  return GroupElement(pres_, r);
}

Subgroup sift(std::vector<GroupElement> const &generators)
{
  if (generators.empty())
    throw std::invalid_argument("sift needs at least one generator");
  return Subgroup::generated_by(generators.front().presentation(), generators);
}

std::optional<Int> index(Subgroup const &h)
{
  return h.index();
}

std::vector<GroupElement> transversal(Subgroup const &h)
{
  return h.transversal();
}

bool contains(Subgroup const &h, GroupElement const &x)
{
  return h.contains(x);
}

std::uint64_t coset_of(Subgroup const &h, GroupElement const &x)
{
  return h.coset_of(x);
}

SiftedMap sift_with_images(PresentationPtr g, std::vector<std::pair<GroupElement, GroupElement>> const &pairs)
{
  if (!g)
    throw std::invalid_argument("null presentation");
  PresentationPtr target = pairs.empty() ? g : pairs.front().second.presentation();
  Sifter s(*g, target.get());
  for (auto const &[x, y] : pairs) {
    require_same(g, x.presentation());
    require_same(target, y.presentation());
    s.push({x.exponents(), y.exponents()});
  }
  s.run();
  std::vector<GroupElement> seq;
  std::vector<GroupElement> images;
  for (auto const &t : s.table())
    if (t) {
      seq.emplace_back(g, t->g);
      images.emplace_back(target, t->img);
    }
  Subgroup h = Subgroup::generated_by(g, seq);
  if (h.standard_sequence() != seq)
    throw std::logic_error("sifted sequence is not in standard form");
  return {h, images};
}

} // namespace nilself

#include "nilself/vendo.hpp"

#include <stdexcept>

namespace nilself {

namespace {

GroupElement evaluate_word(PresentationPtr const &g, std::vector<GroupElement> const &images, Vec const &q)
{
  GroupElement r(g);
  for (std::size_t l = 0; l < q.size(); ++l)
    if (q[l] != 0)
      r *= images[l].pow(q[l]);
  return r;
}

} // namespace

Endomorphism::Endomorphism(PresentationPtr g, std::vector<GroupElement> images)
  : pres_(std::move(g)), images_(std::move(images))
{
  if (!pres_)
    throw std::invalid_argument("null presentation");
  if (images_.size() != pres_->size())
    throw std::invalid_argument("an endomorphism needs one image per basis generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    require_same(pres_, images_[i].presentation());
    for (std::size_t l = 0; l < pres_->size(); ++l)
      if (pres_->weight(l) < pres_->weight(i) && images_[i][l] != 0)
        throw std::domain_error("image of " + pres_->name(i) + " leaves the weight filtration");
  }
  for (std::size_t j = 0; j < images_.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      auto lhs = commutator(images_[j], images_[i]);
      auto rhs = evaluate_word(pres_, images_, pres_->commutator_entry(j, i));
      if (lhs != rhs)
        throw std::domain_error("not a homomorphism: relation [" + pres_->name(j) + "," + pres_->name(i) +
                                "] maps to a nontrivial element");
    }
}

Endomorphism Endomorphism::from_generator_images(PresentationPtr g, std::vector<GroupElement> const &weight1)
{
  std::size_t n1 = g->weight_end(1);
  if (weight1.size() != n1)
    throw std::invalid_argument("expected one image per weight-1 generator");
  std::vector<GroupElement> images(weight1.begin(), weight1.end());
  for (std::size_t i = n1; i < g->size(); ++i) {
    auto const &def = g->definition(i);
    if (def.empty())
      throw std::invalid_argument("generator " + g->name(i) + " has no commutator definition");
    GroupElement x(g);
    for (auto const &f : def) {
      if (f.left >= i || f.right >= i)
        throw std::invalid_argument("definition of " + g->name(i) + " refers to a later generator");
      x *= commutator(images[f.left], images[f.right]).pow(f.exponent);
    }
    images.push_back(x);
  }
  return Endomorphism(std::move(g), std::move(images));
}

Endomorphism Endomorphism::identity(PresentationPtr g)
{
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < g->size(); ++i)
    images.push_back(GroupElement::generator(g, i));
  return Endomorphism(std::move(g), std::move(images));
}

Endomorphism Endomorphism::inner(PresentationPtr g, GroupElement const &x)
{
  require_same(g, x.presentation());
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < g->size(); ++i)
    images.push_back(conjugate(GroupElement::generator(g, i), x));
  return Endomorphism(std::move(g), std::move(images));
}

Endomorphism Endomorphism::trivial(PresentationPtr g)
{
  std::vector<GroupElement> images(g->size(), GroupElement(g));
  return Endomorphism(std::move(g), std::move(images));
}

GroupElement Endomorphism::apply(GroupElement const &x) const
{
  require_same(pres_, x.presentation());
  return evaluate_word(pres_, images_, x.exponents());
}

IntMatrix Endomorphism::graded_block(int w) const
{
  std::size_t b = pres_->weight_begin(w), e = pres_->weight_end(w);
  IntMatrix m(e - b, e - b);
  for (std::size_t i = b; i < e; ++i)
    for (std::size_t l = b; l < e; ++l)
      m(i - b, l - b) = images_[i][l];
  return m;
}

Int Endomorphism::graded_determinant() const
{
  Int d = 1;
  for (int w = 1; w <= pres_->max_weight(); ++w)
    d *= det(graded_block(w));
  return d;
}

Subgroup Endomorphism::image() const
{
  return Subgroup::generated_by(pres_, images_);
}

std::optional<GroupElement> Endomorphism::preimage(GroupElement const &y) const
{
  require_same(pres_, y.presentation());
  GroupElement residual = y;
  Vec x = zero_vec(pres_->size());
  for (int w = 1; w <= pres_->max_weight(); ++w) {
    std::size_t b = pres_->weight_begin(w), e = pres_->weight_end(w);
    if (b == e)
      continue;
    auto sol = solve_left(graded_block(w), graded_image(residual, w));
    if (!sol)
      return std::nullopt;
    Vec part = zero_vec(pres_->size());
    for (std::size_t l = b; l < e; ++l)
      part[l] = x[l] = (*sol)[l - b];
    residual = apply(GroupElement(pres_, part)).inverse() * residual;
  }
  if (!residual.is_identity())
    return std::nullopt;
  return GroupElement(pres_, x);
}

VirtualEndomorphism Endomorphism::as_virtual() const
{
  return VirtualEndomorphism(Subgroup::whole(pres_), images_);
}

VirtualEndomorphism Endomorphism::restrict_to(Subgroup const &h) const
{
  require_same(pres_, h.presentation());
  std::vector<GroupElement> images;
  for (auto const &s : h.standard_sequence())
    images.push_back(apply(s));
  return VirtualEndomorphism(h, std::move(images));
}

VirtualEndomorphism Endomorphism::inverse_on_image() const
{
  if (!is_injective())
    throw std::domain_error("endomorphism is not injective");
  Subgroup h = image();
  std::vector<GroupElement> pre;
  for (auto const &s : h.standard_sequence()) {
    auto p = preimage(s);
    if (!p)
      throw std::logic_error("image generator without preimage");
    pre.push_back(*p);
  }
  return VirtualEndomorphism(h, pre);
}

VirtualEndomorphism::VirtualEndomorphism(Subgroup domain, std::vector<GroupElement> images)
  : domain_(std::move(domain)), images_(std::move(images))
{
  auto const &seq = domain_.standard_sequence();
  if (images_.size() != seq.size())
    throw std::invalid_argument("one image is needed per standard generator of the domain");
  for (auto const &y : images_)
    require_same(domain_.presentation(), y.presentation());
  if (!domain_.is_finite_index())
    throw std::domain_error("domain of a virtual endomorphism must have finite index");
  for (std::size_t j = 0; j < seq.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      auto q = domain_.word_of(commutator(seq[j], seq[i]));
      if (!q)
        throw std::logic_error("standard sequence is not closed under commutators");
      if (commutator(images_[j], images_[i]) != apply_word(*q))
        throw std::domain_error("not a homomorphism: relation between standard generators " + std::to_string(j) +
                                " and " + std::to_string(i) + " is violated");
    }
}

VirtualEndomorphism VirtualEndomorphism::from_pairs(PresentationPtr g,
                                                    std::vector<std::pair<GroupElement, GroupElement>> const &pairs)
{
  auto m = sift_with_images(std::move(g), pairs);
  return VirtualEndomorphism(std::move(m.domain), std::move(m.images));
}

GroupElement VirtualEndomorphism::apply_word(Vec const &q) const
{
  return evaluate_word(presentation(), images_, q);
}

GroupElement VirtualEndomorphism::apply(GroupElement const &x) const
{
  auto q = domain_.word_of(x);
  if (!q)
    throw std::invalid_argument("element " + x.to_string() + " is outside the domain");
  return apply_word(*q);
}

Subgroup VirtualEndomorphism::image() const
{
  return Subgroup::generated_by(presentation(), images_);
}

bool VirtualEndomorphism::is_injective() const
{
  return image().hirsch_length() == domain_.hirsch_length();
}

bool VirtualEndomorphism::is_surjective() const
{
  auto i = image().index();
  return i && *i == 1;
}

VirtualEndomorphism make_vendo(Subgroup domain, std::vector<GroupElement> images)
{
  return VirtualEndomorphism(std::move(domain), std::move(images));
}

GroupElement apply(VirtualEndomorphism const &f, GroupElement const &x)
{
  return f.apply(x);
}

} // namespace nilself

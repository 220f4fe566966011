#include "nilself/intlattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilself {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
  : rows_(rows), cols_(cols), data_(rows * cols, Int(0))
{}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (auto const &r : rows) {
    if (r.size() != cols_)
      throw std::invalid_argument("IntMatrix: ragged initializer");
    for (auto x : r)
      data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::vector<Vec> const &rows, std::size_t cols)
{
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.set_row(r, rows[r]);
  return m;
}

Vec IntMatrix::row(std::size_t r) const
{
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_row(std::size_t r, Vec const &v)
{
  if (v.size() != cols_)
    throw std::invalid_argument("IntMatrix::set_row: length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

void IntMatrix::append_row(Vec const &v)
{
  if (rows_ == 0 && cols_ == 0)
    cols_ = v.size();
  if (v.size() != cols_)
    throw std::invalid_argument("IntMatrix::append_row: length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::row_block(std::size_t begin, std::size_t end) const
{
  IntMatrix b(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      b(r - begin, c) = (*this)(r, c);
  return b;
}

IntMatrix IntMatrix::col_block(std::size_t begin, std::size_t end) const
{
  IntMatrix b(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c)
      b(r, c - begin) = (*this)(r, c);
  return b;
}

bool IntMatrix::is_zero() const
{
  return std::all_of(data_.begin(), data_.end(), [](Int const &x) { return x == 0; });
}

IntMatrix operator*(IntMatrix const &a, IntMatrix const &b)
{
  if (a.cols() != b.rows())
    throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

Vec operator*(Vec const &v, IntMatrix const &m)
{
  if (v.size() != m.rows())
    throw std::invalid_argument("vector-matrix product: dimension mismatch");
  Vec r = zero_vec(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[j] += v[i] * m(i, j);
  }
  return r;
}

std::ostream &operator<<(std::ostream &os, IntMatrix const &m)
{
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c)
      os << (c ? "," : "") << m(r, c);
    os << "]";
  }
  return os << "]";
}

namespace {

void swap_rows(IntMatrix &m, std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    std::swap(m(a, c), m(b, c));
}

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b (simultaneously)
void combine_rows(IntMatrix &m, std::size_t a, std::size_t b, Int const &s, Int const &t,
                  Int const &u, Int const &v)
{
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Int x = m(a, c), y = m(b, c);
    if (x == 0 && y == 0)
      continue;
    m(a, c) = s * x + t * y;
    m(b, c) = u * x + v * y;
  }
}

void add_row_multiple(IntMatrix &m, std::size_t dst, std::size_t src, Int const &q)
{
  if (q == 0)
    return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(src, c) != 0)
      m(dst, c) += q * m(src, c);
}

void negate_row(IntMatrix &m, std::size_t r)
{
  for (std::size_t c = 0; c < m.cols(); ++c)
    m(r, c) = -m(r, c);
}

} // namespace

HnfResult hnf(IntMatrix const &m)
{
  HnfResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix &h = res.h;
  IntMatrix &u = res.u;
  std::size_t p = 0;
  for (std::size_t c = 0; c < h.cols() && p < h.rows(); ++c) {
    // smallest nonzero entry first keeps intermediate growth down
    std::size_t best = h.rows();
    for (std::size_t r = p; r < h.rows(); ++r)
      if (h(r, c) != 0 && (best == h.rows() || abs(h(r, c)) < abs(h(best, c))))
        best = r;
    if (best == h.rows())
      continue;
    swap_rows(h, p, best);
    swap_rows(u, p, best);
    for (std::size_t r = p + 1; r < h.rows(); ++r) {
      if (h(r, c) == 0)
        continue;
      Int a = h(p, c), b = h(r, c);
      auto [g, s, t] = ext_gcd(a, b);
      Int ug = -b / g, vg = a / g;
      combine_rows(h, p, r, s, t, ug, vg);
      combine_rows(u, p, r, s, t, ug, vg);
    }
    if (h(p, c) < 0) {
      negate_row(h, p);
      negate_row(u, p);
    }
    for (std::size_t r = 0; r < p; ++r) {
      Int q = floor_div(h(r, c), h(p, c));
      add_row_multiple(h, r, p, -q);
      add_row_multiple(u, r, p, -q);
    }
    ++p;
  }
  res.rank = p;
  return res;
}

std::vector<Int> snf(IntMatrix const &m)
{
  IntMatrix a = m;
  std::size_t const n = std::min(a.rows(), a.cols());
  std::vector<Int> d;
  std::size_t t = 0;
  for (; t < n; ++t) {
    for (;;) {
      // locate smallest nonzero entry of the trailing block
      std::size_t br = a.rows(), bc = a.cols();
      for (std::size_t r = t; r < a.rows(); ++r)
        for (std::size_t c = t; c < a.cols(); ++c)
          if (a(r, c) != 0 && (br == a.rows() || abs(a(r, c)) < abs(a(br, bc)))) {
            br = r;
            bc = c;
          }
      if (br == a.rows())
        goto done;
      swap_rows(a, t, br);
      if (bc != t)
        for (std::size_t r = 0; r < a.rows(); ++r)
          std::swap(a(r, t), a(r, bc));
      bool clean = true;
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        Int q = a(r, t) / a(t, t);
        add_row_multiple(a, r, t, -q);
        if (a(r, t) != 0)
          clean = false;
      }
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        Int q = a(t, c) / a(t, t);
        if (q != 0)
          for (std::size_t r = 0; r < a.rows(); ++r)
            a(r, c) -= q * a(r, t);
        if (a(t, c) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // divisibility: fold an offending row into the pivot row and retry
      bool divides = true;
      for (std::size_t r = t + 1; r < a.rows() && divides; ++r)
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (a(r, c) % a(t, t) != 0) {
            add_row_multiple(a, t, r, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    d.push_back(abs(a(t, t)));
  }
done:
  while (d.size() < n)
    d.emplace_back(0);
  return d;
}

Int det(IntMatrix const &m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("det: matrix not square");
  std::size_t const n = m.rows();
  if (n == 0)
    return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0)
        ++r;
      if (r == n)
        return 0;
      swap_rows(a, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<Vec> solve_left(IntMatrix const &m, Vec const &y)
{
  if (y.size() != m.cols())
    throw std::invalid_argument("solve_left: dimension mismatch");
  auto const [h, u, rank] = hnf(m);
  Vec xp = zero_vec(m.rows());
  Vec rest = y;
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t c = 0;
    while (h(i, c) == 0)
      ++c;
    if (rest[c] % h(i, c) != 0)
      return std::nullopt;
    xp[i] = rest[c] / h(i, c);
    axpy(rest, -xp[i], h.row(i));
  }
  if (!is_zero(rest))
    return std::nullopt;
  return xp * u;
}

IntMatrix unimodular_inverse(IntMatrix const &m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("unimodular_inverse: matrix not square");
  auto const r = hnf(m);
  if (!(r.h == IntMatrix::identity(m.rows())))
    throw std::domain_error("unimodular_inverse: matrix is not unimodular");
  return r.u;
}

Lattice::Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

Lattice Lattice::from_generators(IntMatrix const &gens)
{
  Lattice l(gens.cols());
  auto const r = hnf(gens);
  l.basis_ = r.h.row_block(0, r.rank);
  return l;
}

Lattice Lattice::from_generators(std::vector<Vec> const &gens, std::size_t ambient_rank)
{
  return from_generators(IntMatrix::from_rows(gens, ambient_rank));
}

Lattice Lattice::full(std::size_t ambient_rank)
{
  return from_generators(IntMatrix::identity(ambient_rank));
}

std::vector<Vec> Lattice::basis_vectors() const
{
  std::vector<Vec> v;
  for (std::size_t r = 0; r < basis_.rows(); ++r)
    v.push_back(basis_.row(r));
  return v;
}

namespace {

// rows of u spanning the left kernel of m
std::vector<Vec> left_kernel_rows(IntMatrix const &m)
{
  auto const r = hnf(m);
  std::vector<Vec> k;
  for (std::size_t i = r.rank; i < m.rows(); ++i)
    k.push_back(r.u.row(i));
  return k;
}

IntMatrix stack(IntMatrix const &a, IntMatrix const &b, bool negate_b)
{
  IntMatrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    s.set_row(r, a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r)
    s.set_row(a.rows() + r, negate_b ? scale(b.row(r), -1) : b.row(r));
  return s;
}

} // namespace

Lattice lattice_intersect(Lattice const &a, Lattice const &b)
{
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("lattice_intersect: ambient rank mismatch");
  if (a.is_zero() || b.is_zero())
    return Lattice(a.ambient_rank());
  auto const ker = left_kernel_rows(stack(a.basis(), b.basis(), false));
  std::vector<Vec> gens;
  for (auto const &k : ker) {
    Vec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    gens.push_back(x * a.basis());
  }
  return Lattice::from_generators(gens, a.ambient_rank());
}

Lattice lattice_kernel(IntMatrix const &m)
{
  return Lattice::from_generators(left_kernel_rows(m), m.rows());
}

bool lattice_member(Vec const &v, Lattice const &l)
{
  if (v.size() != l.ambient_rank())
    throw std::invalid_argument("lattice_member: rank mismatch");
  if (is_zero(v))
    return true;
  if (l.is_zero())
    return false;
  return solve_left(l.basis(), v).has_value();
}

bool lattice_contains(Lattice const &b, Lattice const &a)
{
  for (auto const &v : a.basis_vectors())
    if (!lattice_member(v, b))
      return false;
  return true;
}

Lattice lattice_preimage(IntMatrix const &map, Lattice const &target)
{
  if (map.cols() != target.ambient_rank())
    throw std::invalid_argument("lattice_preimage: dimension mismatch");
  if (map.rows() == 0)
    return Lattice(0);
  auto const ker = left_kernel_rows(stack(map, target.basis(), true));
  std::vector<Vec> gens;
  for (auto const &k : ker)
    gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(map.rows()));
  return Lattice::from_generators(gens, map.rows());
}

Int lattice_index(Lattice const &l)
{
  if (l.rank() < l.ambient_rank())
    return 0;
  Int p = 1;
  for (std::size_t i = 0; i < l.rank(); ++i)
    p *= l.basis()(i, i);
  return p;
}

IntMatrix quotient_map(Lattice const &l)
{
  std::size_t const n = l.ambient_rank(), r = l.rank();
  auto const res = hnf(l.basis().transpose());
  for (std::size_t i = 0; i < r; ++i)
    if (res.h(i, i) != 1)
      throw std::domain_error("quotient_map: quotient has torsion");
  IntMatrix q(n, n - r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n - r; ++j)
      q(i, j) = res.u(r + j, i);
  return q;
}

} // namespace nilself

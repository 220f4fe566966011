#include "nilself/integer.hpp"

#include <stdexcept>

namespace nilself {

Int floor_div(Int const &a, Int const &b)
{
  if (b == 0)
    throw std::domain_error("floor_div: division by zero");
  Int q = a / b; // truncates toward zero
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0)))
    --q;
  return q;
}

Int floor_mod(Int const &a, Int const &b)
{
  return a - floor_div(a, b) * b;
}

ExtGcd ext_gcd(Int const &a, Int const &b)
{
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Int gcd(Int const &a, Int const &b)
{
  return ext_gcd(a, b).g;
}

Int lcm(Int const &a, Int const &b)
{
  if (a == 0 || b == 0)
    return 0;
  Int l = a / gcd(a, b) * b;
  return l < 0 ? Int(-l) : l;
}

Int binom2(Int const &n)
{
  // n(n-1) is always even
  return n * (n - 1) / 2;
}

bool is_zero(Vec const &v)
{
  for (auto const &x : v)
    if (x != 0)
      return false;
  return true;
}

Vec zero_vec(std::size_t n)
{
  return Vec(n, Int(0));
}

Vec add(Vec const &a, Vec const &b)
{
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] += b[i];
  return r;
}

Vec sub(Vec const &a, Vec const &b)
{
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] -= b[i];
  return r;
}

Vec scale(Vec const &a, Int const &s)
{
  Vec r(a);
  for (auto &x : r)
    x *= s;
  return r;
}

void axpy(Vec &a, Int const &s, Vec const &b)
{
  if (s == 0)
    return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0)
      a[i] += s * b[i];
}

std::string to_string(Int const &x)
{
  return x.str();
}

std::string to_string(Vec const &v)
{
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += v[i].str();
  }
  return s + ")";
}

Int parse_int(std::string_view s)
{
  if (s.empty())
    throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size())
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  Int r = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    r = r * 10 + (s[i] - '0');
  }
  return neg ? Int(-r) : r;
}

std::int64_t to_i64(Int const &x)
{
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

} // namespace nilself

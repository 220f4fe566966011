#pragma once

// Magnus embedding oracle: the free nilpotent group of class 3 on generators
// x_i embeds in the units of the free associative ring Z<X_i> truncated above
// degree 3, via x_i -> 1 + X_i.  Equality there is equality in the group.

#include <map>
#include <string>

namespace testing_support {

struct Magnus {
  std::map<std::string, long long> c; // word over 'A', 'B', ... -> coefficient

  static Magnus one()
  {
    Magnus m;
    m.c[""] = 1;
    return m;
  }
  static Magnus gen(int i)
  {
    Magnus m = one();
    m.c[std::string(1, static_cast<char>('A' + i))] = 1;
    return m;
  }
  friend Magnus operator*(Magnus const &a, Magnus const &b)
  {
    Magnus r;
    for (auto const &[u, x] : a.c)
      for (auto const &[v, y] : b.c)
        if (u.size() + v.size() <= 3)
          r.c[u + v] += x * y;
    r.clean();
    return r;
  }
  friend Magnus operator+(Magnus a, Magnus const &b)
  {
    for (auto const &[u, y] : b.c)
      a.c[u] += y;
    a.clean();
    return a;
  }
  Magnus scaled(long long s) const
  {
    Magnus r = *this;
    for (auto &[u, x] : r.c)
      x *= s;
    r.clean();
    return r;
  }
  void clean()
  {
    for (auto it = c.begin(); it != c.end();)
      it = it->second == 0 ? c.erase(it) : std::next(it);
  }
  // (1 + n)^-1 = 1 - n + n^2 - n^3
  Magnus inverse() const
  {
    Magnus n = *this + one().scaled(-1);
    Magnus r = one(), p = one();
    for (int k = 1; k <= 3; ++k) {
      p = p * n;
      r = r + p.scaled(k % 2 ? -1 : 1);
    }
    return r;
  }
  Magnus pow(long long e) const
  {
    Magnus b = e < 0 ? inverse() : *this, r = one();
    for (long long i = 0; i < (e < 0 ? -e : e); ++i)
      r = r * b;
    return r;
  }
  friend bool operator==(Magnus const &, Magnus const &) = default;
};

inline Magnus magnus_commutator(Magnus const &x, Magnus const &y)
{
  return x.inverse() * y.inverse() * x * y;
}

} // namespace testing_support

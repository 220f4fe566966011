#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nilself {

/// Arbitrary-precision signed integer used for every exponent and matrix entry.
using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;

/// Floor division (rounds toward negative infinity); b must be nonzero.
Int floor_div(Int const &a, Int const &b);
/// Remainder matching floor_div, so the result has the sign of b.
Int floor_mod(Int const &a, Int const &b);

struct ExtGcd {
  Int g; // nonnegative
  Int s;
  Int t; // s*a + t*b == g
};
ExtGcd ext_gcd(Int const &a, Int const &b);

Int gcd(Int const &a, Int const &b);
Int lcm(Int const &a, Int const &b);

/// n(n-1)/2, valid for negative n as well.
Int binom2(Int const &n);

bool is_zero(Vec const &v);
Vec zero_vec(std::size_t n);
Vec add(Vec const &a, Vec const &b);
Vec sub(Vec const &a, Vec const &b);
Vec scale(Vec const &a, Int const &s);
/// a += s * b
void axpy(Vec &a, Int const &s, Vec const &b);

std::string to_string(Int const &x);
std::string to_string(Vec const &v);
Int parse_int(std::string_view s);
std::int64_t to_i64(Int const &x);

} // namespace nilself

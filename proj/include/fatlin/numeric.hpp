#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fatlin {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace num {

/// base^exp in 64 bits; throws InvalidInput on overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

BigInt big_pow(std::uint64_t base, unsigned exp);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Reduces a signed value into [0, m).
inline std::uint64_t mod_signed(std::int64_t a, std::uint64_t m) {
  const auto sm = static_cast<__int128>(m);
  __int128 r = static_cast<__int128>(a) % sm;
  if (r < 0) r += sm;
  return static_cast<std::uint64_t>(r);
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

bool is_prime(std::uint64_t n);

/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Positive divisors, ascending.
std::vector<unsigned> divisors(unsigned n);

/// Least solution a in [0, m/g) of a*e = l (mod m), if any.
bool solve_linear_congruence(std::uint64_t e, std::uint64_t l, std::uint64_t m,
                             std::uint64_t& least, std::uint64_t& period);

}  // namespace num
}  // namespace fatlin

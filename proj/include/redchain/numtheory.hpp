#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "redchain/errors.hpp"

namespace redchain::numtheory {

using Int = mpz_class;

/// Deterministic primality test. Miller-Rabin with a fixed base set that is
/// exact below 2^64; trial division for larger inputs.
bool is_prime(const Int& n);

/// Smallest prime strictly greater than n.
Int next_prime_above(const Int& n);

/// The first `count` primes in increasing order.
std::vector<Int> nth_primes(std::size_t count);

/// The first `count` primes p with p > floor and p^exponent > bound.
/// The power comparison is exact integer arithmetic.
std::vector<Int> primes_above(std::size_t count, unsigned long exponent, const Int& bound,
                              const Int& floor);

struct ExtGcdResult {
  Int g;  // gcd(|a|, |b|), nonnegative
  Int u;
  Int v;  // u*a + v*b == g
};

ExtGcdResult ext_gcd(const Int& a, const Int& b);

/// Inverse of a modulo m, in [1, m-1]. Throws not_coprime if gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

struct Congruence {
  Int residue;
  Int modulus;
};

struct CrtResult {
  Int value;    // in [0, modulus)
  Int modulus;  // product of the input moduli
};

/// Simultaneous solution of the congruences; moduli must be pairwise coprime.
CrtResult crt(const std::vector<Congruence>& congruences);

/// All r in [0, p) with r^2 == a (mod p), p an odd prime, 0 <= a < p.
/// Tonelli-Shanks; the empty vector encodes a non-residue.
std::vector<Int> sqrt_mod_odd_prime(const Int& a, const Int& p);

/// All r in [0, 2^k) with r^2 == a (mod 2^k), by exhaustive scan. k <= 16.
std::vector<Int> sqrt_mod_two_pow(const Int& a, unsigned k);

struct Factorization {
  struct Entry {
    Int prime;
    unsigned long exponent;
  };
  std::vector<Entry> factors;  // primes strictly increasing

  Int value() const;
  void validate() const;  // primality, ordering, exponents >= 1
};

inline Int pow_ui(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace redchain::numtheory

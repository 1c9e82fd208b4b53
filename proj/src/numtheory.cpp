#include "redchain/numtheory.hpp"

#include <algorithm>
#include <cstdint>

namespace redchain::numtheory {

namespace {

bool miller_rabin_composite(const Int& n, const Int& d, unsigned long r, const Int& base) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    // exact for n < 3.3 * 10^24 with this base set
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d >>= r;
    for (int base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      if (miller_rabin_composite(n, d, r, base)) return false;
    }
    return true;
  }
  for (Int d = 41; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Int next_prime_above(const Int& n) {
  Int c = n < 2 ? Int(2) : Int(n + 1);
  if (c > 2 && mpz_even_p(c.get_mpz_t())) ++c;
  while (!is_prime(c)) c += (c == 2) ? 1 : 2;
  return c;
}

std::vector<Int> nth_primes(std::size_t count) {
  if (count < 1) fail(errc::invalid_argument, "nth_primes: count must be >= 1");
  // sieve with a grown bound until enough primes are found
  std::size_t limit = std::max<std::size_t>(32, count * 16);
  for (;;) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<Int> primes;
    for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
      if (composite[i]) continue;
      primes.push_back(Int(static_cast<unsigned long>(i)));
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    if (primes.size() == count) return primes;
    limit *= 2;
  }
}

std::vector<Int> primes_above(std::size_t count, unsigned long exponent, const Int& bound,
                              const Int& floor) {
  if (count < 1 || exponent < 1) fail(errc::invalid_argument, "primes_above: bad count/exponent");
  std::vector<Int> out;
  Int p = 1;
  while (out.size() < count) {
    p = next_prime_above(p);
    if (p <= floor) continue;
    if (pow_ui(p, exponent) > bound) out.push_back(p);
  }
  return out;
}

ExtGcdResult ext_gcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) fail(errc::invalid_argument, "ext_gcd: both arguments zero");
  ExtGcdResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  if (m < 2) fail(errc::invalid_argument, "mod_inverse: modulus must be >= 2");
  auto e = ext_gcd(a, m);
  if (e.g != 1) fail(errc::not_coprime, "mod_inverse: arguments not coprime");
  Int x = e.u % m;
  if (x < 0) x += m;
  return x;
}

CrtResult crt(const std::vector<Congruence>& congruences) {
  if (congruences.empty()) fail(errc::invalid_argument, "crt: no congruences");
  Int z = 0;
  Int m = 1;
  for (const auto& c : congruences) {
    if (c.modulus < 2) fail(errc::invalid_argument, "crt: modulus must be >= 2");
    if (c.residue < 0 || c.residue >= c.modulus)
      fail(errc::invalid_argument, "crt: residue out of range");
    Int g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    if (g != 1) fail(errc::moduli_not_coprime, "crt: moduli not pairwise coprime");
    // z' = z + m * ((residue - z) * m^-1 mod modulus)
    Int t = (c.residue - z) % c.modulus;
    if (t < 0) t += c.modulus;
    t = t * mod_inverse(m % c.modulus, c.modulus) % c.modulus;
    z += m * t;
    m *= c.modulus;
  }
  return {z, m};
}

std::vector<Int> sqrt_mod_odd_prime(const Int& a, const Int& p) {
  if (p < 3 || !is_prime(p)) fail(errc::invalid_argument, "sqrt_mod_odd_prime: p not an odd prime");
  if (a < 0 || a >= p) fail(errc::invalid_argument, "sqrt_mod_odd_prime: a out of range");
  if (a == 0) return {Int(0)};
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return {};

  Int root;
  if (p % 4 == 3) {
    Int e = (p + 1) / 4;
    mpz_powm(root.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  } else {
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Int nonres = 2;
    while (mpz_legendre(nonres.get_mpz_t(), p.get_mpz_t()) != -1) ++nonres;
    Int c;
    mpz_powm(c.get_mpz_t(), nonres.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e = (q + 1) / 2;
    mpz_powm(root.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    Int t;
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
      Int tt = t;
      unsigned long i = 0;
      while (tt != 1) {
        tt = tt * tt % p;
        ++i;
      }
      Int b = c;
      for (unsigned long k = 0; k + i + 1 < m; ++k) b = b * b % p;
      root = root * b % p;
      c = b * b % p;
      t = t * c % p;
      m = i;
    }
  }
  if (root * root % p != a) fail(errc::invalid_argument, "sqrt_mod_odd_prime: internal check failed");
  Int other = p - root;
  std::vector<Int> roots{root, other};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<Int> sqrt_mod_two_pow(const Int& a, unsigned k) {
  if (k < 1 || k > 16) fail(errc::invalid_argument, "sqrt_mod_two_pow: k must be in [1,16]");
  unsigned long mod = 1ul << k;
  if (a < 0 || a >= mod) fail(errc::invalid_argument, "sqrt_mod_two_pow: a out of range");
  unsigned long av = a.get_ui();
  std::vector<Int> roots;
  for (unsigned long r = 0; r < mod; ++r) {
    if (r * r % mod == av) roots.push_back(Int(r));
  }
  return roots;
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& f : factors) v *= pow_ui(f.prime, f.exponent);
  return v;
}

void Factorization::validate() const {
  if (factors.empty()) fail(errc::invalid_argument, "Factorization: empty");
  Int prev = 1;
  for (const auto& f : factors) {
    if (f.prime <= prev) fail(errc::invalid_argument, "Factorization: primes not increasing");
    if (f.exponent < 1) fail(errc::invalid_argument, "Factorization: exponent < 1");
    if (!is_prime(f.prime)) fail(errc::invalid_argument, "Factorization: entry not prime");
    prev = f.prime;
  }
}

}  // namespace redchain::numtheory

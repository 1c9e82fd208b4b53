#include <doctest.h>

#include <algorithm>

#include "redchain/numtheory.hpp"

using namespace redchain;
using namespace redchain::numtheory;

namespace {

// independent trial-division oracle
bool is_prime_oracle(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("nth_primes basics") {
  CHECK(nth_primes(5) == std::vector<Int>{2, 3, 5, 7, 11});
  CHECK(nth_primes(1) == std::vector<Int>{2});
  CHECK(nth_primes(13).back() == 41);
}

TEST_CASE("nth_primes agrees with trial division up to 10^4 primes") {
  auto primes = nth_primes(10000);
  REQUIRE(primes.size() == 10000);
  unsigned long expect = 2;
  for (const Int& p : primes) {
    while (!is_prime_oracle(expect)) ++expect;
    CHECK(p == expect);
    ++expect;
  }
}

TEST_CASE("primes_above exact power threshold") {
  CHECK(primes_above(2, 1, 10, 0) == std::vector<Int>{11, 13});
  CHECK(primes_above(1, 3, 7, 0) == std::vector<Int>{2});   // 2^3 = 8 > 7
  CHECK(primes_above(1, 2, 25, 0) == std::vector<Int>{7});  // 5^2 = 25 is not > 25
  CHECK(primes_above(3, 1, 0, 10) == std::vector<Int>{11, 13, 17});
}

TEST_CASE("primes_above results satisfy the predicate, predecessors fail it") {
  Int bound("123456789123456789");
  auto got = primes_above(4, 5, bound, 7);
  REQUIRE(got.size() == 4);
  Int prev = 7;
  for (const Int& p : got) {
    CHECK(p > 7);
    CHECK(pow_ui(p, 5) > bound);
    // every prime between the floor/previous hit and p must fail the predicate
    Int q = next_prime_above(prev);
    while (q < p) {
      CHECK(pow_ui(q, 5) <= bound);
      q = next_prime_above(q);
    }
    prev = p;
  }
}

TEST_CASE("ext_gcd identities") {
  auto r = ext_gcd(240, 46);
  CHECK(r.g == 2);
  CHECK(r.u * 240 + r.v * 46 == r.g);

  r = ext_gcd(7, 0);
  CHECK(r.g == 7);
  CHECK(r.u == 1);
  CHECK(r.v == 0);

  r = ext_gcd(3, 7);
  CHECK(r.g == 1);
  CHECK(r.u * 3 + r.v * 7 == 1);

  CHECK_THROWS_AS(ext_gcd(0, 0), Error);
}

TEST_CASE("ext_gcd property on random 256-bit integers") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(12345);
  for (int i = 0; i < 200; ++i) {
    Int a = rng.get_z_bits(256);
    Int b = rng.get_z_bits(256);
    if (i % 3 == 0) a = -a;
    if (i % 5 == 0) b = -b;
    if (a == 0 && b == 0) continue;
    auto r = ext_gcd(a, b);
    CHECK(r.u * a + r.v * b == r.g);
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    CHECK(r.g == g);
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(1, 97) == 1);
  CHECK_THROWS_AS(mod_inverse(2, 4), Error);
  try {
    mod_inverse(2, 4);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_coprime);
  }
}

TEST_CASE("crt basics") {
  auto r = crt({{2, 3}, {3, 5}});
  CHECK(r.value == 8);
  CHECK(r.modulus == 15);

  r = crt({{4, 9}});
  CHECK(r.value == 4);
  CHECK(r.modulus == 9);

  CHECK_THROWS_AS(crt({{1, 4}, {3, 6}}), Error);
}

TEST_CASE("crt agrees with direct scan") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(777);
  std::vector<std::vector<Int>> moduli_sets = {{7, 9, 11}, {4, 27, 5}, {8, 3, 25}, {13, 16, 9, 5}};
  for (const auto& moduli : moduli_sets) {
    std::vector<Congruence> cs;
    for (const Int& m : moduli) cs.push_back({rng.get_z_range(m), m});
    auto r = crt(cs);
    CHECK(r.value >= 0);
    CHECK(r.value < r.modulus);
    for (const auto& c : cs) CHECK(r.value % c.modulus == c.residue);
    // uniqueness below the product
    for (Int z = 0; z < r.modulus; ++z) {
      bool all = true;
      for (const auto& c : cs)
        if (z % c.modulus != c.residue) {
          all = false;
          break;
        }
      if (all) {
        CHECK(z == r.value);
        break;
      }
    }
  }
}

TEST_CASE("sqrt_mod_odd_prime") {
  CHECK(sqrt_mod_odd_prime(2, 7) == std::vector<Int>{3, 4});
  CHECK(sqrt_mod_odd_prime(13, 17) == std::vector<Int>{8, 9});
  CHECK(sqrt_mod_odd_prime(3, 5).empty());
  CHECK(sqrt_mod_odd_prime(0, 11) == std::vector<Int>{0});
}

TEST_CASE("sqrt_mod_odd_prime root sets square back and close under negation") {
  for (unsigned long p : {3ul, 5ul, 13ul, 10007ul, 65537ul, 1000003ul}) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(p);
    for (int i = 0; i < 20; ++i) {
      Int a = rng.get_z_range(Int(p));
      auto roots = sqrt_mod_odd_prime(a, p);
      for (const Int& r : roots) {
        CHECK(r * r % p == a);
        if (a != 0)
          CHECK(std::find(roots.begin(), roots.end(), (p - r) % p) != roots.end());
      }
      if (a != 0 && !roots.empty()) CHECK(roots.size() == 2);
    }
  }
}

TEST_CASE("sqrt_mod_two_pow") {
  CHECK(sqrt_mod_two_pow(1, 4) == std::vector<Int>{1, 7, 9, 15});
  CHECK(sqrt_mod_two_pow(9, 4) == std::vector<Int>{3, 5, 11, 13});
  CHECK(sqrt_mod_two_pow(2, 4).empty());
  CHECK(sqrt_mod_two_pow(0, 1) == std::vector<Int>{0});
  for (unsigned k = 1; k <= 6; ++k)
    for (unsigned long a = 0; a < (1ul << k); ++a)
      for (const Int& r : sqrt_mod_two_pow(a, k)) CHECK(r * r % (1ul << k) == a);
}

TEST_CASE("Factorization") {
  Factorization f{{{2, 4}, {3, 1}, {7, 2}}};
  f.validate();
  CHECK(f.value() == 16 * 3 * 49);

  Factorization unordered{{{3, 1}, {2, 1}}};
  CHECK_THROWS_AS(unordered.validate(), Error);
  Factorization composite{{{4, 1}}};
  CHECK_THROWS_AS(composite.validate(), Error);
  Factorization zero_exp{{{2, 0}}};
  CHECK_THROWS_AS(zero_exp.validate(), Error);
}

#include <doctest.h>

#include <cstdint>

#include "redchain/mrd.hpp"

using namespace redchain;
using namespace redchain::mrd;
using numtheory::Int;

namespace {

// platform-stable generator for the property corpus
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

MRDInstance two_eq_instance(Int zeta) {
  MRDInstance inst;
  inst.equations = {{3, {1, 2}}, {5, {2, 3}}};
  inst.zeta = zeta;
  inst.mode = ResidueMode::full;
  return inst;
}

}  // namespace

TEST_CASE("validate rejects malformed instances") {
  MRDInstance inst = two_eq_instance(10);
  validate(inst);  // ok

  MRDInstance bad = inst;
  bad.equations[1].q = 6;  // gcd(3,6) != 1
  CHECK_THROWS_AS(validate(bad), Error);

  bad = inst;
  bad.equations[0].roots = {3};  // out of range
  CHECK_THROWS_AS(validate(bad), Error);

  bad = inst;
  bad.mode = ResidueMode::pair;
  bad.equations[0].roots = {0, 1, 2};
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("reduce_qc_to_mrd") {
  qc::QCInstance inst;
  inst.alpha = 4;
  inst.beta = 15;
  inst.gamma = 4;
  inst.beta_factorization.factors = {{3, 1}, {5, 1}};
  auto out = reduce_qc_to_mrd(inst, ResidueMode::full);
  REQUIRE(out.has_value());
  CHECK(out->zeta == 4);
  REQUIRE(out->equations.size() == 2);
  CHECK(out->equations[0].q == 3);
  CHECK(out->equations[0].roots == std::vector<Int>{1, 2});
  CHECK(out->equations[1].q == 5);
  CHECK(out->equations[1].roots == std::vector<Int>{2, 3});

  // non-residue -> trivial no-instance
  qc::QCInstance nr;
  nr.alpha = 2;
  nr.beta = 5;
  nr.gamma = 5;
  nr.beta_factorization.factors = {{5, 1}};
  CHECK_FALSE(reduce_qc_to_mrd(nr, ResidueMode::full).has_value());

  // zero residue: single root, x = y
  qc::QCInstance zr;
  zr.alpha = 0;
  zr.beta = 3;
  zr.gamma = 3;
  zr.beta_factorization.factors = {{3, 1}};
  auto z_out = reduce_qc_to_mrd(zr, ResidueMode::full);
  REQUIRE(z_out.has_value());
  CHECK(z_out->equations[0].roots == std::vector<Int>{0});

  // odd prime exponent > 1 unsupported
  qc::QCInstance sq;
  sq.alpha = 1;
  sq.beta = 9;
  sq.gamma = 9;
  sq.beta_factorization.factors = {{3, 2}};
  CHECK_THROWS_AS(reduce_qc_to_mrd(sq, ResidueMode::full), Error);
}

TEST_CASE("reduce_qc_to_mrd modulo 16: pair mode stores two of the four roots") {
  qc::QCInstance inst;
  inst.alpha = 33;  // 1 mod 16, residue mod 3 = 0
  inst.beta = 48;
  inst.gamma = 48;
  inst.beta_factorization.factors = {{2, 4}, {3, 1}};

  auto full = reduce_qc_to_mrd(inst, ResidueMode::full);
  REQUIRE(full.has_value());
  CHECK(full->equations[0].roots == std::vector<Int>{1, 7, 9, 15});

  auto pair = reduce_qc_to_mrd(inst, ResidueMode::pair);
  REQUIRE(pair.has_value());
  CHECK(pair->equations[0].roots == std::vector<Int>{1, 15});
}

TEST_CASE("pair-mode roots are distinct for odd moduli with nonzero residue") {
  qc::QCInstance inst;
  inst.alpha = 4;
  inst.beta = 15;
  inst.gamma = 4;
  inst.beta_factorization.factors = {{3, 1}, {5, 1}};
  auto out = reduce_qc_to_mrd(inst, ResidueMode::pair);
  REQUIRE(out.has_value());
  for (const auto& e : out->equations) {
    REQUIRE(e.roots.size() == 2);
    CHECK(e.roots[0] != e.roots[1]);
    CHECK(e.roots[1] == e.q - e.roots[0]);
  }
}

TEST_CASE("solve_mrd") {
  auto inst = two_eq_instance(10);
  auto sol = solve_mrd(inst);
  REQUIRE(sol.has_value());
  CHECK(sol->z == 2);
  CHECK(sol->choices == std::vector<Int>{2, 2});

  // zeta below the least candidate
  CHECK_FALSE(solve_mrd(two_eq_instance(1)).has_value());

  // CRT value 0 lifts to the product
  MRDInstance zero;
  zero.equations = {{5, {0}}};
  zero.zeta = 10;
  auto z = solve_mrd(zero);
  REQUIRE(z.has_value());
  CHECK(z->z == 5);
}

TEST_CASE("solve_mrd_scan") {
  CHECK(solve_mrd_scan(two_eq_instance(10)) == Int(2));
  CHECK_FALSE(solve_mrd_scan(two_eq_instance(1)).has_value());

  MRDInstance zero;
  zero.equations = {{5, {0}}};
  zero.zeta = 10;
  CHECK(solve_mrd_scan(zero) == Int(5));

  MRDInstance big = two_eq_instance(100);
  big.equations.push_back({Int("100000019"), {7}});  // modulus above the scan bound
  CHECK(solve_mrd_scan(big) == Int(7));  // 7 mod 3 = 1, 7 mod 5 = 2: covered
}

TEST_CASE("mrd_witness_from_z") {
  auto inst = two_eq_instance(10);
  CHECK(mrd_witness_from_z(inst, 8) == std::vector<Int>{2, 3});

  MRDInstance zero;
  zero.equations = {{5, {0}}};
  zero.zeta = 10;
  CHECK(mrd_witness_from_z(zero, 5) == std::vector<Int>{0});

  CHECK_THROWS_AS(mrd_witness_from_z(inst, 4), Error);  // 4 mod 5 = 4 not covered
  try {
    mrd_witness_from_z(inst, 4);
  } catch (const Error& e) {
    CHECK(e.code() == errc::residue_not_covered);
  }
}

TEST_CASE("verify_mrd") {
  auto inst = two_eq_instance(10);
  CHECK(verify_mrd(inst, 2));
  CHECK(verify_mrd(inst, 7));
  CHECK_FALSE(verify_mrd(inst, 0));
  CHECK_FALSE(verify_mrd(inst, 11));  // above zeta
  CHECK_FALSE(verify_mrd(inst, 4));
}

TEST_CASE("solve_mrd agrees with the linear scan on random instances") {
  Rng rng{2024};
  const std::vector<Int> moduli_pool{3, 4, 5, 7, 9, 11, 13, 16, 17, 19, 23, 25, 29, 31, 37, 41, 43, 47};
  int checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    MRDInstance inst;
    inst.mode = trial % 2 ? ResidueMode::pair : ResidueMode::full;
    std::size_t count = 1 + rng.below(5);
    std::vector<Int> chosen;
    for (std::size_t i = 0; i < count && chosen.size() < count; ++i) {
      Int q = moduli_pool[rng.below(moduli_pool.size())];
      bool coprime = true;
      for (const Int& other : chosen) {
        Int g;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), other.get_mpz_t());
        if (g != 1) coprime = false;
      }
      if (coprime) chosen.push_back(q);
    }
    Int product = 1;
    for (const Int& q : chosen) {
      Equation e;
      e.q = q;
      std::size_t max_roots = inst.mode == ResidueMode::pair ? 2 : 3;
      std::size_t root_count = 1 + rng.below(max_roots);
      while (e.roots.size() < root_count) {
        Int r = static_cast<unsigned long>(rng.below(q.get_ui()));
        if (std::find(e.roots.begin(), e.roots.end(), r) == e.roots.end()) e.roots.push_back(r);
      }
      std::sort(e.roots.begin(), e.roots.end());
      inst.equations.push_back(e);
      product *= q;
    }
    inst.zeta = 1 + Int(static_cast<unsigned long>(rng.below(1000000)));

    auto a = solve_mrd(inst);
    auto b = solve_mrd_scan(inst);
    CHECK(a.has_value() == b.has_value());
    if (a && b) {
      CHECK(a->z == *b);
      CHECK(verify_mrd(inst, a->z));
      CHECK(mrd_witness_from_z(inst, a->z) == a->choices);
    }
    ++checked;
  }
  CHECK(checked == 250);
}

#include "redchain/mrd.hpp"

#include <algorithm>
#include <cstdint>

namespace redchain::mrd {

using numtheory::Congruence;
using numtheory::sqrt_mod_odd_prime;
using numtheory::sqrt_mod_two_pow;

std::string to_string(ResidueMode m) { return m == ResidueMode::pair ? "pair" : "full"; }

ResidueMode residue_mode_from_string(const std::string& s) {
  if (s == "pair") return ResidueMode::pair;
  if (s == "full") return ResidueMode::full;
  fail(errc::invalid_argument, "unknown residue mode: " + s);
}

void validate(const MRDInstance& inst) {
  if (inst.equations.empty()) fail(errc::invalid_argument, "MRDInstance: no equations");
  if (inst.zeta < 1) fail(errc::invalid_argument, "MRDInstance: zeta must be positive");
  for (std::size_t i = 0; i < inst.equations.size(); ++i) {
    const auto& e = inst.equations[i];
    if (e.q < 2) fail(errc::invalid_argument, "MRDInstance: modulus < 2");
    if (e.roots.empty()) fail(errc::invalid_argument, "MRDInstance: empty root set");
    for (const Int& r : e.roots)
      if (r < 0 || r >= e.q) fail(errc::invalid_argument, "MRDInstance: root out of range");
    if (inst.mode == ResidueMode::pair && e.roots.size() > 2)
      fail(errc::invalid_argument, "MRDInstance: pair mode allows at most 2 roots");
    for (std::size_t j = i + 1; j < inst.equations.size(); ++j) {
      Int g;
      mpz_gcd(g.get_mpz_t(), e.q.get_mpz_t(), inst.equations[j].q.get_mpz_t());
      if (g != 1) fail(errc::moduli_not_coprime, "MRDInstance: moduli not pairwise coprime");
    }
  }
}

std::optional<MRDInstance> reduce_qc_to_mrd(const qc::QCInstance& inst, ResidueMode mode) {
  inst.beta_factorization.validate();
  if (inst.beta_factorization.value() != inst.beta)
    fail(errc::invalid_argument, "reduce_qc_to_mrd: factorization does not match beta");

  MRDInstance out;
  out.mode = mode;
  out.zeta = inst.gamma;
  for (const auto& fct : inst.beta_factorization.factors) {
    Equation eq;
    std::vector<Int> roots;
    if (fct.prime == 2) {
      if (fct.exponent > 4)
        fail(errc::unsupported_exponent, "reduce_qc_to_mrd: 2 occurs more than 4 times");
      eq.q = numtheory::pow_ui(Int(2), fct.exponent);
      roots = sqrt_mod_two_pow(inst.alpha % eq.q, static_cast<unsigned>(fct.exponent));
    } else {
      if (fct.exponent != 1)
        fail(errc::unsupported_exponent, "reduce_qc_to_mrd: odd prime exponent > 1");
      eq.q = fct.prime;
      roots = sqrt_mod_odd_prime(inst.alpha % eq.q, eq.q);
    }
    if (roots.empty()) return std::nullopt;  // trivial no-instance
    if (mode == ResidueMode::pair) {
      Int x = roots.front();  // smallest root
      Int y = (eq.q - x) % eq.q;
      eq.roots = {x};
      if (y != x) eq.roots.push_back(y);
      std::sort(eq.roots.begin(), eq.roots.end());
    } else {
      eq.roots = roots;
    }
    out.equations.push_back(eq);
  }
  return out;
}

std::optional<MrdSolution> solve_mrd(const MRDInstance& inst) {
  validate(inst);
  const std::size_t n = inst.equations.size();
  double space = 1.0;
  for (const auto& e : inst.equations) space *= static_cast<double>(e.roots.size());
  if (space > static_cast<double>(1u << 24))
    fail(errc::search_space_too_large, "solve_mrd: more than 2^24 choice vectors");

  // CRT idempotents: basis[i] == 1 (mod q_i), == 0 (mod q_j) for j != i
  Int big_q = 1;
  for (const auto& e : inst.equations) big_q *= e.q;
  std::vector<Int> basis;
  for (const auto& e : inst.equations) {
    Int rest = big_q / e.q;
    basis.push_back(rest * numtheory::mod_inverse(rest % e.q, e.q) % big_q);
  }

  std::vector<std::size_t> pick(n, 0);
  std::optional<MrdSolution> best;
  bool done = false;
  while (!done) {
    Int z = 0;
    for (std::size_t i = 0; i < n; ++i) z += inst.equations[i].roots[pick[i]] * basis[i];
    z %= big_q;
    if (z == 0) z = big_q;  // smallest positive representative
    if (best && z == best->z)
      fail(errc::invalid_argument, "solve_mrd: distinct choice vectors collided");
    if (!best || z < best->z) {
      MrdSolution s;
      s.z = z;
      for (std::size_t i = 0; i < n; ++i) s.choices.push_back(inst.equations[i].roots[pick[i]]);
      best = s;
    }
    // advance the choice vector, last index fastest
    done = true;
    for (std::size_t i = n; i-- > 0;) {
      if (++pick[i] < inst.equations[i].roots.size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
  }
  if (best->z <= inst.zeta) return best;
  return std::nullopt;
}

std::optional<Int> solve_mrd_scan(const MRDInstance& inst) {
  validate(inst);
  Int big_q = 1;
  for (const auto& e : inst.equations) big_q *= e.q;
  Int cap = std::min(inst.zeta, big_q);
  if (cap > 10000000) fail(errc::cap_exceeded, "solve_mrd_scan: scan bound exceeds 10^7");

  const std::uint64_t top = cap.get_ui();
  // moduli above the scan bound constrain z to literal root values
  std::vector<std::uint64_t> mods;
  std::vector<std::vector<std::uint64_t>> roots;
  std::optional<std::vector<std::uint64_t>> direct;  // intersection over oversized moduli
  for (const auto& e : inst.equations) {
    if (e.q <= cap) {
      mods.push_back(e.q.get_ui());
      std::vector<std::uint64_t> rs;
      for (const Int& r : e.roots) rs.push_back(r.get_ui());
      roots.push_back(rs);
    } else {
      std::vector<std::uint64_t> allowed;
      for (const Int& r : e.roots)
        if (r >= 1 && r <= cap) allowed.push_back(r.get_ui());
      if (!direct) {
        direct = allowed;
      } else {
        std::vector<std::uint64_t> merged;
        for (std::uint64_t v : *direct)
          if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) merged.push_back(v);
        direct = merged;
      }
    }
  }
  auto feasible = [&](std::uint64_t z) {
    for (std::size_t i = 0; i < mods.size(); ++i) {
      std::uint64_t res = z % mods[i];
      if (std::find(roots[i].begin(), roots[i].end(), res) == roots[i].end()) return false;
    }
    return true;
  };
  if (direct) {
    std::sort(direct->begin(), direct->end());
    for (std::uint64_t z : *direct)
      if (feasible(z)) return Int(static_cast<unsigned long>(z));
    return std::nullopt;
  }
  for (std::uint64_t z = 1; z <= top; ++z) {
    if (feasible(z)) return Int(static_cast<unsigned long>(z));
  }
  return std::nullopt;
}

std::vector<Int> mrd_witness_from_z(const MRDInstance& inst, const Int& z) {
  if (z < 1) fail(errc::invalid_argument, "mrd_witness_from_z: z must be positive");
  std::vector<Int> choices;
  for (const auto& e : inst.equations) {
    Int r = z % e.q;
    if (std::find(e.roots.begin(), e.roots.end(), r) == e.roots.end())
      fail(errc::residue_not_covered, "mrd_witness_from_z: residue not in root set");
    choices.push_back(r);
  }
  return choices;
}

bool verify_mrd(const MRDInstance& inst, const Int& z) {
  if (z < 1 || z > inst.zeta) return false;
  for (const auto& e : inst.equations) {
    Int r = z % e.q;
    if (std::find(e.roots.begin(), e.roots.end(), r) == e.roots.end()) return false;
  }
  return true;
}

}  // namespace redchain::mrd

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "redchain/numtheory.hpp"
#include "redchain/sat.hpp"

namespace redchain::qc {

using numtheory::Int;

enum class CoeffMode { derived, paper };

std::string to_string(CoeffMode m);
CoeffMode coeff_mode_from_string(const std::string& s);

/// Primes underlying the transformation of one simplified formula:
/// the clause primes p_0..p_{2m'}, the (n+1)^2 grid primes p_{i,j} (row
/// major), and p*. The grid primes are the first (n+1)^2 primes exceeding
/// p_{2m'} whose (n^2+2n+1)th power exceeds 4(n+1)*2^3 times the primorial of
/// the first n^2+2n+1 primes; the comparison is exact integer arithmetic.
///
/// p* is the smallest prime that is at least the (n^2+2n+2m'+13)th prime and
/// strictly greater than every grid prime. The second condition is what the
/// construction actually needs (p* must not collide with a grid prime for the
/// factorization of beta to be squarefree away from 2); at desk scale the
/// (n^2+2n+2m'+13)th prime alone lands inside the grid range.
struct PrimeSelection {
  int m_prime = 0;
  int ell_prime = 0;
  int n = 0;
  std::vector<Int> clause_primes;  // p_0..p_{2m'}
  std::vector<Int> grid_primes;    // (n+1)^2 entries, row major
  Int p_star;
  Int m1;  // 2^3 * p* * prod_{i=1..m'} p_i
};

PrimeSelection select_primes(int m_prime, int ell_prime);

struct LinearForm {
  std::vector<Int> coeffs;  // C_0..C_n
  Int tau;
  Int m1;
  std::vector<Int> clause_primes;
};

/// Coefficients and constant by the literal printed formulas, kept exact as
/// rationals for cross-reference (they are half-integral in general).
struct PaperLinearForm {
  std::vector<mpq_class> coeffs;
  mpq_class tau;
};

PaperLinearForm paper_coefficients(const sat::Formula& f, const std::vector<Int>& clause_primes);

/// Integer linear form with: f satisfiable iff some sign vector a in
/// {-1,+1}^{n+1} has sum C_j a_j == tau (mod m1). Derived mode expands the
/// clause equations symbolically and is always integral; paper mode evaluates
/// the printed formulas and throws paper_mode_non_integral when they are not.
LinearForm derive_linear_form(const sat::Formula& f, CoeffMode mode);

/// Least positive theta with theta == coeff (mod m1), theta == 0 (mod the
/// product of all grid primes outside row j), theta != 0 (mod p_{j,1}).
Int build_theta(const Int& coeff, const Int& m1, const std::vector<Int>& grid_primes, int j, int n);

struct SatLinearSystem {
  int m_prime = 0;
  int ell_prime = 0;
  int n = 0;  // 2m' + ell'
  CoeffMode mode = CoeffMode::derived;
  sat::Formula formula;  // the simplified source formula
  std::vector<Int> clause_primes;
  std::vector<Int> grid_primes;
  Int p_star;
  Int m1;
  std::vector<Int> coeffs;
  Int tau;
  std::vector<Int> thetas;
  Int big_h;  // sum of thetas
  Int big_k;  // product of grid primes
};

struct QCInstance {
  Int alpha;
  Int beta;
  Int gamma;
  numtheory::Factorization beta_factorization;
};

struct SatToQc {
  QCInstance instance;
  SatLinearSystem system;
};

/// Full transformation of a simplified formula with m' >= 2.
SatToQc reduce_sat_to_qc(const sat::Formula& f, CoeffMode mode);

struct QcWitness {
  Int z;
  std::vector<int> alpha_vec;  // entries in {-1,+1}
};

/// Sign vector and |sum theta_j a_j| for a satisfying assignment.
QcWitness qc_witness(const SatLinearSystem& sys, const sat::Assignment& a);

/// Exhaustive scan of all 2^(n+1) sign vectors, first hit in
/// (-1 before +1) lexicographic order. Requires n+1 <= 20.
std::optional<std::vector<int>> sign_vector_feasible(const SatLinearSystem& sys);

bool verify_qc(const QCInstance& inst, const Int& z);

/// Least z in [1, min(gamma, cap)] with z^2 == alpha (mod beta).
std::optional<Int> solve_qc_brute(const QCInstance& inst, const Int& cap);

struct AuditCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  std::size_t beta_prime_count = 0;
  std::size_t alpha_bits = 0;
  std::size_t beta_bits = 0;
  std::size_t gamma_bits = 0;

  bool all_passed() const;
};

/// Structural checks on a reduction output (Theorem 1/2 claims that are exact
/// statements, plus the bit-length report).
AuditReport audit(const QCInstance& inst, const SatLinearSystem& sys);

/// Throws audit_violation listing every failed check.
void require_clean(const AuditReport& report);

}  // namespace redchain::qc

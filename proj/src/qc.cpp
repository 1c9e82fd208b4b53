#include "redchain/qc.hpp"

#include <algorithm>
#include <sstream>

namespace redchain::qc {

using numtheory::Congruence;
using numtheory::crt;
using numtheory::mod_inverse;
using numtheory::nth_primes;
using numtheory::pow_ui;
using numtheory::primes_above;

std::string to_string(CoeffMode m) { return m == CoeffMode::derived ? "derived" : "paper"; }

CoeffMode coeff_mode_from_string(const std::string& s) {
  if (s == "derived") return CoeffMode::derived;
  if (s == "paper") return CoeffMode::paper;
  fail(errc::invalid_argument, "unknown coeff mode: " + s);
}

PrimeSelection select_primes(int m_prime, int ell_prime) {
  if (m_prime < 1) fail(errc::invalid_argument, "select_primes: need at least one clause");
  PrimeSelection sel;
  sel.m_prime = m_prime;
  sel.ell_prime = ell_prime;
  sel.n = 2 * m_prime + ell_prime;
  const int n = sel.n;
  const unsigned long exp = static_cast<unsigned long>(n) * n + 2 * n + 1;

  sel.clause_primes = nth_primes(static_cast<std::size_t>(2 * m_prime + 1));

  Int bound = 4 * Int(n + 1) * 8;
  for (const Int& q : nth_primes(exp)) bound *= q;
  sel.grid_primes = primes_above(static_cast<std::size_t>((n + 1) * (n + 1)), exp, bound,
                                 sel.clause_primes.back());

  Int floor_star = nth_primes(exp + static_cast<unsigned long>(2 * m_prime) + 12).back();
  sel.p_star = floor_star > sel.grid_primes.back()
                   ? floor_star
                   : numtheory::next_prime_above(sel.grid_primes.back());

  sel.m1 = 8 * sel.p_star;
  for (int i = 1; i <= m_prime; ++i) sel.m1 *= sel.clause_primes[static_cast<std::size_t>(i)];
  return sel;
}

PaperLinearForm paper_coefficients(const sat::Formula& f, const std::vector<Int>& clause_primes) {
  const int m_prime = static_cast<int>(f.clauses.size());
  const int ell_prime = f.num_vars;
  const int n = 2 * m_prime + ell_prime;
  auto prefix = [&](int j) {  // prod_{i=1..j} p_i
    Int p = 1;
    for (int i = 1; i <= j; ++i) p *= clause_primes[static_cast<std::size_t>(i)];
    return p;
  };

  mpq_class tau_phi = 0;
  for (int i = 1; i <= m_prime; ++i) tau_phi -= prefix(i);

  std::vector<mpq_class> f_pos(static_cast<std::size_t>(ell_prime) + 1);
  std::vector<mpq_class> f_neg(static_cast<std::size_t>(ell_prime) + 1);
  for (int j = 1; j <= m_prime; ++j) {
    Int p = prefix(j);
    for (int lit : f.clauses[static_cast<std::size_t>(j - 1)]) {
      if (lit > 0)
        f_pos[static_cast<std::size_t>(lit)] += p;
      else
        f_neg[static_cast<std::size_t>(-lit)] += p;
    }
  }

  PaperLinearForm lf;
  lf.coeffs.assign(static_cast<std::size_t>(n) + 1, mpq_class(0));
  for (int j = 1; j <= 2 * m_prime; ++j) {
    mpq_class c(prefix(j));
    if (j % 2 == 1) c /= 2;
    lf.coeffs[static_cast<std::size_t>(j)] = -c;
  }
  for (int j = 1; j <= ell_prime; ++j)
    lf.coeffs[static_cast<std::size_t>(2 * m_prime + j)] =
        (f_pos[static_cast<std::size_t>(j)] - f_neg[static_cast<std::size_t>(j)]) / 2;

  lf.tau = tau_phi;
  for (const auto& c : lf.coeffs) lf.tau += c;
  for (int i = 1; i <= ell_prime; ++i) lf.tau += f_neg[static_cast<std::size_t>(i)];
  for (auto& c : lf.coeffs) c.canonicalize();
  lf.tau.canonicalize();
  return lf;
}

LinearForm derive_linear_form(const sat::Formula& f, CoeffMode mode) {
  const int m_prime = static_cast<int>(f.clauses.size());
  const int ell_prime = f.num_vars;
  if (m_prime < 1) fail(errc::empty_formula, "derive_linear_form: formula has no clauses");
  const int n = 2 * m_prime + ell_prime;

  PrimeSelection sel = select_primes(m_prime, ell_prime);
  LinearForm lf;
  lf.m1 = sel.m1;
  lf.clause_primes = sel.clause_primes;
  lf.coeffs.assign(static_cast<std::size_t>(n) + 1, Int(0));

  if (mode == CoeffMode::paper) {
    PaperLinearForm plf = paper_coefficients(f, sel.clause_primes);
    for (std::size_t j = 0; j < plf.coeffs.size(); ++j) {
      if (plf.coeffs[j].get_den() != 1)
        fail(errc::paper_mode_non_integral,
             "paper-mode coefficient c_" + std::to_string(j) + " is not an integer");
      lf.coeffs[j] = plf.coeffs[j].get_num();
    }
    if (plf.tau.get_den() != 1)
      fail(errc::paper_mode_non_integral, "paper-mode tau is not an integer");
    lf.tau = plf.tau.get_num();
    return lf;
  }

  // Expand sum_k R_k * prod_{i=0..k} p_i with the sign substitutions
  // y_k = (1/2)[(1-a_{2k-1}) + 2(1-a_{2k})], r(x_i) = (1-a_{2m'+i})/2.
  // Every prefix product includes p_0 = 2, so the halves are integral.
  Int constant = 0;
  lf.coeffs[0] = 2;  // R_0 * p_0 = (a_0 + 1) * 2
  constant += 2;
  Int prefix = sel.clause_primes[0];  // prod_{i=0..k} p_i
  for (int k = 1; k <= m_prime; ++k) {
    prefix *= sel.clause_primes[static_cast<std::size_t>(k)];
    Int half = prefix / 2;
    lf.coeffs[static_cast<std::size_t>(2 * k - 1)] -= half;
    lf.coeffs[static_cast<std::size_t>(2 * k)] -= prefix;
    const auto& clause = f.clauses[static_cast<std::size_t>(k - 1)];
    for (int lit : clause) {
      std::size_t idx = static_cast<std::size_t>(2 * m_prime + std::abs(lit));
      if (lit > 0)
        lf.coeffs[idx] += half;
      else
        lf.coeffs[idx] -= half;
    }
    constant += half * Int(5 - static_cast<int>(clause.size()));
  }
  lf.tau = -constant;
  return lf;
}

Int build_theta(const Int& coeff, const Int& m1, const std::vector<Int>& grid_primes, int j,
                int n) {
  const int row = n + 1;
  Int off_row_product = 1;
  for (int i = 0; i < row * row; ++i) {
    if (i / row == j) continue;
    off_row_product *= grid_primes[static_cast<std::size_t>(i)];
  }
  Int residue = coeff % m1;
  if (residue < 0) residue += m1;
  auto combined = crt({Congruence{residue, m1}, Congruence{Int(0), off_row_product}});
  Int theta = combined.value;
  if (theta == 0) theta = combined.modulus;  // least positive, not least nonnegative
  const Int& excluded = grid_primes[static_cast<std::size_t>(j * row + 1)];  // p_{j,1}
  if (theta % excluded == 0) theta += combined.modulus;
  return theta;
}

SatToQc reduce_sat_to_qc(const sat::Formula& f, CoeffMode mode) {
  const int m_prime = static_cast<int>(f.clauses.size());
  if (m_prime < 2) fail(errc::too_few_clauses, "reduce_sat_to_qc: need at least 2 clauses");
  {
    auto s = sat::simplify(f);
    if (!(s.formula == f)) fail(errc::invalid_argument, "reduce_sat_to_qc: formula not simplified");
  }

  SatToQc out;
  SatLinearSystem& sys = out.system;
  sys.m_prime = m_prime;
  sys.ell_prime = f.num_vars;
  sys.n = 2 * m_prime + f.num_vars;
  sys.mode = mode;
  sys.formula = f;

  PrimeSelection sel = select_primes(m_prime, f.num_vars);
  sys.clause_primes = sel.clause_primes;
  sys.grid_primes = sel.grid_primes;
  sys.p_star = sel.p_star;
  sys.m1 = sel.m1;

  LinearForm lf = derive_linear_form(f, mode);
  sys.coeffs = lf.coeffs;
  sys.tau = lf.tau;

  sys.big_k = 1;
  for (const Int& p : sys.grid_primes) sys.big_k *= p;
  sys.big_h = 0;
  for (int j = 0; j <= sys.n; ++j) {
    sys.thetas.push_back(
        build_theta(sys.coeffs[static_cast<std::size_t>(j)], sys.m1, sys.grid_primes, j, sys.n));
    sys.big_h += sys.thetas.back();
  }

  QCInstance& inst = out.instance;
  Int a2 = 2 * sys.m1;  // 2^4 * p* * prod p_i
  inst.beta = a2 * sys.big_k;
  inst.gamma = sys.big_h;
  inst.alpha =
      mod_inverse(a2 + sys.big_k, inst.beta) * (sys.big_k * sys.tau * sys.tau + a2 * sys.big_h * sys.big_h) %
      inst.beta;

  inst.beta_factorization.factors.push_back({Int(2), 4});
  std::vector<Int> odd;
  for (int i = 1; i <= m_prime; ++i) odd.push_back(sys.clause_primes[static_cast<std::size_t>(i)]);
  odd.push_back(sys.p_star);
  odd.insert(odd.end(), sys.grid_primes.begin(), sys.grid_primes.end());
  std::sort(odd.begin(), odd.end());
  for (const Int& p : odd) inst.beta_factorization.factors.push_back({p, 1});
  return out;
}

QcWitness qc_witness(const SatLinearSystem& sys, const sat::Assignment& a) {
  auto ev = sat::eval(sys.formula, a);
  if (!ev.satisfied)
    fail(errc::assignment_does_not_satisfy, "qc_witness: assignment does not satisfy the formula");

  QcWitness w;
  w.alpha_vec.assign(static_cast<std::size_t>(sys.n) + 1, 1);
  w.alpha_vec[0] = -1;  // R_0 = a_0 + 1 = 0
  for (int k = 1; k <= sys.m_prime; ++k) {
    int y = ev.sat_counts[static_cast<std::size_t>(k - 1)] - 1;  // y_k in {0,1,2}
    w.alpha_vec[static_cast<std::size_t>(2 * k - 1)] = 1 - 2 * (y & 1);
    w.alpha_vec[static_cast<std::size_t>(2 * k)] = 1 - 2 * ((y >> 1) & 1);
  }
  for (int i = 1; i <= sys.ell_prime; ++i)
    w.alpha_vec[static_cast<std::size_t>(2 * sys.m_prime + i)] = a.value(i) ? -1 : 1;

  Int x = 0;
  for (int j = 0; j <= sys.n; ++j)
    x += w.alpha_vec[static_cast<std::size_t>(j)] * sys.thetas[static_cast<std::size_t>(j)];
  w.z = abs(x);
  return w;
}

std::optional<std::vector<int>> sign_vector_feasible(const SatLinearSystem& sys) {
  const int bits = sys.n + 1;
  if (bits > 20) fail(errc::too_many_signs, "sign_vector_feasible: more than 2^20 sign vectors");

  std::vector<Int> theta_mod;
  for (const Int& t : sys.thetas) theta_mod.push_back(t % sys.m1);
  Int target = sys.tau % sys.m1;
  if (target < 0) target += sys.m1;

  const std::uint32_t total = 1u << bits;
  for (std::uint32_t b = 0; b < total; ++b) {
    Int sum = 0;
    for (int j = 0; j < bits; ++j) {
      if ((b >> (bits - 1 - j)) & 1u)
        sum += theta_mod[static_cast<std::size_t>(j)];
      else
        sum -= theta_mod[static_cast<std::size_t>(j)];
    }
    sum %= sys.m1;
    if (sum < 0) sum += sys.m1;
    if (sum == target) {
      std::vector<int> alpha(static_cast<std::size_t>(bits));
      for (int j = 0; j < bits; ++j)
        alpha[static_cast<std::size_t>(j)] = ((b >> (bits - 1 - j)) & 1u) ? 1 : -1;
      return alpha;
    }
  }
  return std::nullopt;
}

bool verify_qc(const QCInstance& inst, const Int& z) {
  if (z <= 0 || z > inst.gamma) return false;
  return z * z % inst.beta == inst.alpha % inst.beta;
}

std::optional<Int> solve_qc_brute(const QCInstance& inst, const Int& cap) {
  Int bound = std::min(inst.gamma, cap);
  if (bound > 10000000) fail(errc::cap_exceeded, "solve_qc_brute: scan bound exceeds 10^7");
  if (bound < 1) return std::nullopt;
  if (mpz_sizeinbase(inst.beta.get_mpz_t(), 2) <= 32) {
    const std::uint64_t beta = inst.beta.get_ui();
    const std::uint64_t alpha = mpz_class(inst.alpha % inst.beta).get_ui();
    const std::uint64_t top = bound.get_ui();
    for (std::uint64_t z = 1; z <= top; ++z) {
      if (z * z % beta == alpha) return Int(static_cast<unsigned long>(z));
    }
    return std::nullopt;
  }
  Int alpha = inst.alpha % inst.beta;
  for (Int z = 1; z <= bound; ++z) {
    if (z * z % inst.beta == alpha) return z;
  }
  return std::nullopt;
}

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
}

namespace {

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

AuditReport audit(const QCInstance& inst, const SatLinearSystem& sys) {
  AuditReport rep;
  auto add = [&](const std::string& name, bool passed, const std::string& detail) {
    rep.checks.push_back({name, passed, detail});
  };

  const int n = sys.n;
  const std::size_t expected_primes =
      static_cast<std::size_t>((n + 1) * (n + 1) + sys.m_prime + 2);
  rep.beta_prime_count = inst.beta_factorization.factors.size();
  add("beta_distinct_prime_count", rep.beta_prime_count == expected_primes,
      str(rep.beta_prime_count) + " vs expected " + str(expected_primes));

  bool exps_ok = true;
  for (const auto& fct : inst.beta_factorization.factors) {
    if (fct.prime == 2)
      exps_ok = exps_ok && fct.exponent == 4;
    else
      exps_ok = exps_ok && fct.exponent == 1;
  }
  exps_ok = exps_ok && !inst.beta_factorization.factors.empty() &&
            inst.beta_factorization.factors.front().prime == 2;
  add("beta_exponent_pattern", exps_ok, "2^4 and odd primes once");
  add("beta_factorization_value", inst.beta_factorization.value() == inst.beta, "product check");

  add("two_H_less_than_K", 2 * sys.big_h < sys.big_k,
      "2H has " + str(mpz_sizeinbase(Int(2 * sys.big_h).get_mpz_t(), 2)) + " bits, K has " +
          str(mpz_sizeinbase(sys.big_k.get_mpz_t(), 2)));

  Int a2 = 2 * sys.m1;
  Int g1, g2;
  mpz_gcd(g1.get_mpz_t(), Int(a2 + sys.big_k).get_mpz_t(), inst.beta.get_mpz_t());
  mpz_gcd(g2.get_mpz_t(), a2.get_mpz_t(), sys.big_k.get_mpz_t());
  add("gcd_shift_term_beta", g1 == 1, "gcd(2^4 p* prod p_i + K, beta) = " + str(g1));
  add("gcd_modulus_parts", g2 == 1, "gcd(2^4 p* prod p_i, K) = " + str(g2));

  Int max_grid = *std::max_element(sys.grid_primes.begin(), sys.grid_primes.end());
  add("p_star_exceeds_grid_primes", sys.p_star > max_grid,
      "p* = " + str(sys.p_star) + ", max grid prime = " + str(max_grid));

  {
    // grid primes: distinct, above p_{2m'}, exact power threshold
    const unsigned long exp = static_cast<unsigned long>(n) * n + 2 * n + 1;
    Int bound = 4 * Int(n + 1) * 8;
    for (const Int& q : numtheory::nth_primes(exp)) bound *= q;
    bool ok = sys.grid_primes.size() == static_cast<std::size_t>((n + 1) * (n + 1));
    std::vector<Int> sorted = sys.grid_primes;
    std::sort(sorted.begin(), sorted.end());
    ok = ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    for (const Int& p : sys.grid_primes)
      ok = ok && p > sys.clause_primes.back() && pow_ui(p, exp) > bound;
    add("grid_primes_valid", ok, "distinct, above p_{2m'}, power threshold");
  }

  {
    Int abs_sum = 0;
    for (const Int& c : sys.coeffs) abs_sum += abs(c);
    abs_sum += abs(sys.tau);
    add("linear_form_range", abs_sum < sys.m1,
        "sum |C_j| + |tau| has " + str(mpz_sizeinbase(abs_sum.get_mpz_t(), 2)) +
            " bits, M1 has " + str(mpz_sizeinbase(sys.m1.get_mpz_t(), 2)));
  }

  {
    bool ok = true;
    const int row = n + 1;
    for (int j = 0; j <= n; ++j) {
      const Int& theta = sys.thetas[static_cast<std::size_t>(j)];
      Int diff = theta - sys.coeffs[static_cast<std::size_t>(j)];
      ok = ok && theta > 0 && diff % sys.m1 == 0;
      Int row_prod = 1;
      for (int k = 0; k < row; ++k) row_prod *= sys.grid_primes[static_cast<std::size_t>(j * row + k)];
      ok = ok && theta % (sys.big_k / row_prod) == 0;
      ok = ok && theta % sys.grid_primes[static_cast<std::size_t>(j * row + 1)] != 0;
    }
    add("theta_conditions", ok, "three congruences per theta_j");
  }

  rep.alpha_bits = mpz_sizeinbase(inst.alpha.get_mpz_t(), 2);
  rep.beta_bits = mpz_sizeinbase(inst.beta.get_mpz_t(), 2);
  rep.gamma_bits = mpz_sizeinbase(inst.gamma.get_mpz_t(), 2);
  return rep;
}

void require_clean(const AuditReport& report) {
  if (report.all_passed()) return;
  std::string msg = "audit failed:";
  for (const auto& c : report.checks)
    if (!c.passed) msg += " " + c.name;
  fail(errc::audit_violation, msg);
}

}  // namespace redchain::qc

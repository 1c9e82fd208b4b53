// Command-line front end for the reduction chain:
// 3-CNF -> quadratic congruence -> multiple-residue -> 2-stage ILP.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "redchain/io.hpp"
#include "redchain/pipeline.hpp"

namespace fs = std::filesystem;
using namespace redchain;
using numtheory::Int;

namespace {

constexpr int kExitYes = 0;   // satisfiable / feasible / verified
constexpr int kExitNo = 1;    // unsatisfiable / infeasible / no-instance
constexpr int kExitUsage = 2; // usage or data error

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    io::write_file(out_path, content);
}

sat::Formula load_formula(const std::string& path) {
  return sat::parse_dimacs(io::read_file(path));
}

int cmd_sat_qc(const std::string& input, const std::string& mode, const std::string& out) {
  auto simplified = sat::simplify(load_formula(input));
  auto reduction = qc::reduce_sat_to_qc(simplified.formula, qc::coeff_mode_from_string(mode));
  emit(out, io::write_qc(reduction.instance));
  return sat::solve_brute(simplified.formula) ? kExitYes : kExitNo;
}

int cmd_qc_mrd(const std::string& input, const std::string& mode, const std::string& out) {
  auto inst = io::read_qc(io::read_file(input));
  auto mrd_inst = mrd::reduce_qc_to_mrd(inst, mrd::residue_mode_from_string(mode));
  emit(out, io::write_mrd(mrd_inst));
  return mrd_inst ? kExitYes : kExitNo;
}

int cmd_mrd_ilp(const std::string& input, const std::string& out) {
  auto inst = io::read_mrd(io::read_file(input));
  if (!inst) {
    std::cerr << "input is the trivial no-instance; no ILP emitted\n";
    return kExitNo;
  }
  emit(out, silp::write_2ssilp(silp::reduce_mrd_to_ilp(*inst)));
  return kExitYes;
}

int cmd_encode(const std::string& input, const std::string& out) {
  auto ilp = silp::read_2ssilp(io::read_file(input));
  emit(out, silp::write_2ssilp(silp::encode_binary(ilp).ilp));
  return kExitYes;
}

int cmd_solve(const std::string& kind, const std::string& input, const Int& cap,
              const std::string& out) {
  if (kind == "sat") {
    auto model = sat::solve_brute(load_formula(input));
    if (!model) return kExitNo;
    for (std::size_t i = 0; i < model->values.size(); ++i)
      std::cout << "x" << i + 1 << "=" << (model->values[i] ? 1 : 0) << "\n";
    return kExitYes;
  }
  if (kind == "qc") {
    auto inst = io::read_qc(io::read_file(input));
    auto z = qc::solve_qc_brute(inst, cap);
    if (!z) return kExitNo;
    emit(out, io::write_qc_witness({*z, {}}));
    return kExitYes;
  }
  if (kind == "mrd") {
    auto inst = io::read_mrd(io::read_file(input));
    if (!inst) return kExitNo;
    auto sol = mrd::solve_mrd(*inst);
    if (!sol) return kExitNo;
    emit(out, io::write_mrd_witness({sol->z, sol->choices}));
    return kExitYes;
  }
  if (kind == "ilp") {
    auto ilp = silp::read_2ssilp(io::read_file(input));
    std::optional<silp::Solution> sol;
    try {
      sol = silp::solve_reduced(ilp);
    } catch (const Error& e) {
      if (e.code() != errc::invalid_argument) throw;
      sol = silp::solve_exhaustive(ilp);  // not reduction-shaped
    }
    if (!sol) return kExitNo;
    emit(out, io::write_ilp_witness({sol->x}));
    return kExitYes;
  }
  std::cerr << "unknown solve kind: " << kind << "\n";
  return kExitUsage;
}

int cmd_verify(const std::string& kind, const std::string& input, const std::string& witness) {
  std::string wtext = io::read_file(witness);
  if (kind == "qc") {
    auto inst = io::read_qc(io::read_file(input));
    return qc::verify_qc(inst, io::read_qc_witness(wtext).z) ? kExitYes : kExitNo;
  }
  if (kind == "mrd") {
    auto inst = io::read_mrd(io::read_file(input));
    if (!inst) return kExitNo;
    return mrd::verify_mrd(*inst, io::read_mrd_witness(wtext).z) ? kExitYes : kExitNo;
  }
  if (kind == "ilp") {
    auto ilp = silp::read_2ssilp(io::read_file(input));
    return silp::verify_solution(ilp, {io::read_ilp_witness(wtext).x}) ? kExitYes : kExitNo;
  }
  std::cerr << "unknown verify kind: " << kind << "\n";
  return kExitUsage;
}

int cmd_pipeline(const std::string& input, const std::string& coeff_mode,
                 const std::string& residue_mode, bool encode, const std::string& out_dir) {
  pipeline::Options opts;
  opts.coeff_mode = qc::coeff_mode_from_string(coeff_mode);
  opts.residue_mode = mrd::residue_mode_from_string(residue_mode);
  opts.encode = encode;
  auto result = pipeline::run_pipeline(load_formula(input), opts);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto& [name, content] : pipeline::render_files(result))
      io::write_file((fs::path(out_dir) / name).string(), content);
  }
  std::cout << pipeline::summary(result);
  return result.sat_answer ? kExitYes : kExitNo;
}

int cmd_audit(const std::string& input, const std::string& coeff_mode, const std::string& out) {
  auto simplified = sat::simplify(load_formula(input));
  auto reduction =
      qc::reduce_sat_to_qc(simplified.formula, qc::coeff_mode_from_string(coeff_mode));
  auto report = qc::audit(reduction.instance, reduction.system);
  if (!out.empty()) io::write_file(out, io::write_audit(report));
  for (const auto& c : report.checks)
    std::cout << "audit " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail
              << ")\n";
  std::cout << "beta distinct primes: " << report.beta_prime_count << "\n";
  std::cout << "bit lengths: alpha " << report.alpha_bits << ", beta " << report.beta_bits
            << ", gamma " << report.gamma_bits << "\n";
  return report.all_passed() ? kExitYes : kExitNo;
}

int cmd_gen_corpus(int count, int num_vars, int num_clauses, std::uint64_t seed,
                   const std::string& out_dir) {
  auto formulas = sat::generate_corpus(count, num_vars, num_clauses, seed);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "formula_%03zu.cnf", i);
    io::write_file((fs::path(out_dir) / name).string(), sat::to_dimacs(formulas[i]));
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-SAT -> quadratic congruence -> multiple-residue -> 2-stage ILP toolchain"};
  app.require_subcommand(1);

  std::string input, out, out_dir, witness, kind;
  std::string coeff_mode = "derived", residue_mode = "full";
  bool encode = false;
  std::uint64_t seed = 0;
  Int brute_cap = 10000000;
  std::string brute_cap_str = "10000000";
  int count = 10, num_vars = 4, num_clauses = 4;

  auto* sat_qc = app.add_subcommand("sat-qc", "reduce a DIMACS 3-CNF to a quadratic congruence");
  sat_qc->add_option("input", input)->required();
  sat_qc->add_option("--coeff-mode", coeff_mode)->check(CLI::IsMember({"derived", "paper"}));
  sat_qc->add_option("-o", out);

  auto* qc_mrd = app.add_subcommand("qc-mrd", "reduce a qc instance to multiple-residue");
  qc_mrd->add_option("input", input)->required();
  qc_mrd->add_option("--residue-mode", residue_mode)->check(CLI::IsMember({"pair", "full"}));
  qc_mrd->add_option("-o", out);

  auto* mrd_ilp = app.add_subcommand("mrd-ilp", "reduce a multiple-residue instance to a 2-stage ILP");
  mrd_ilp->add_option("input", input)->required();
  mrd_ilp->add_option("-o", out);

  auto* enc = app.add_subcommand("encode", "binary coefficient encoding of a .2ssilp instance");
  enc->add_option("input", input)->required();
  enc->add_option("-o", out);

  auto* solve = app.add_subcommand("solve", "solve an instance (kinds: sat, qc, mrd, ilp)");
  solve->add_option("kind", kind)->required()->check(CLI::IsMember({"sat", "qc", "mrd", "ilp"}));
  solve->add_option("input", input)->required();
  solve->add_option("--brute-cap", brute_cap_str);
  solve->add_option("-o", out);

  auto* verify = app.add_subcommand("verify", "verify a witness (kinds: qc, mrd, ilp)");
  verify->add_option("kind", kind)->required()->check(CLI::IsMember({"qc", "mrd", "ilp"}));
  verify->add_option("input", input)->required();
  verify->add_option("--witness", witness)->required();

  auto* pipe = app.add_subcommand("pipeline", "run the full reduction chain on a DIMACS file");
  pipe->add_option("input", input)->required();
  pipe->add_option("--coeff-mode", coeff_mode)->check(CLI::IsMember({"derived", "paper"}));
  pipe->add_option("--residue-mode", residue_mode)->check(CLI::IsMember({"pair", "full"}));
  pipe->add_flag("--encode", encode);
  pipe->add_option("-o", out_dir);

  auto* audit = app.add_subcommand("audit", "structural audit of the sat->qc reduction");
  audit->add_option("input", input)->required();
  audit->add_option("--coeff-mode", coeff_mode)->check(CLI::IsMember({"derived", "paper"}));
  audit->add_option("-o", out);

  auto* gen = app.add_subcommand("gen-corpus", "write a reproducible 3-CNF corpus");
  gen->add_option("--count", count)->check(CLI::PositiveNumber);
  gen->add_option("--num-vars", num_vars)->check(CLI::Range(3, 5));
  gen->add_option("--num-clauses", num_clauses)->check(CLI::Range(1, 6));
  gen->add_option("--seed", seed);
  gen->add_option("-o", out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sat_qc->parsed()) return cmd_sat_qc(input, coeff_mode, out);
    if (qc_mrd->parsed()) return cmd_qc_mrd(input, residue_mode, out);
    if (mrd_ilp->parsed()) return cmd_mrd_ilp(input, out);
    if (enc->parsed()) return cmd_encode(input, out);
    if (solve->parsed()) return cmd_solve(kind, input, Int(brute_cap_str), out);
    if (verify->parsed()) return cmd_verify(kind, input, witness);
    if (pipe->parsed()) return cmd_pipeline(input, coeff_mode, residue_mode, encode, out_dir);
    if (audit->parsed()) return cmd_audit(input, coeff_mode, out);
    if (gen->parsed()) return cmd_gen_corpus(count, num_vars, num_clauses, seed, out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

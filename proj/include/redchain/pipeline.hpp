#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redchain/io.hpp"
#include "redchain/mrd.hpp"
#include "redchain/qc.hpp"
#include "redchain/sat.hpp"
#include "redchain/silp.hpp"

namespace redchain::pipeline {

using numtheory::Int;

struct Options {
  qc::CoeffMode coeff_mode = qc::CoeffMode::derived;
  mrd::ResidueMode residue_mode = mrd::ResidueMode::full;
  bool encode = false;
};

struct Result {
  sat::Formula original;
  sat::Formula simplified;
  std::vector<int> var_map;  // new variable -> original variable

  std::optional<sat::Assignment> sat_answer;

  qc::QCInstance qc_instance;
  qc::SatLinearSystem system;
  qc::AuditReport audit;

  std::optional<mrd::MRDInstance> mrd_instance;  // nullopt = no-instance
  std::optional<silp::TwoStageILP> ilp;          // absent when no-instance
  std::optional<silp::EncodedILP> encoded;       // only with Options::encode

  // present only when sat_answer is present and the layer could be reached
  std::optional<qc::QcWitness> qc_wit;
  std::optional<std::vector<Int>> mrd_choices;
  std::optional<silp::Solution> ilp_solution;
  std::optional<silp::Solution> encoded_solution;

  std::vector<std::pair<std::string, bool>> layer_checks;

  bool all_checks_passed() const;
};

/// parse -> simplify -> brute SAT -> QC -> MRD -> ILP -> (optional) encoding,
/// propagating and verifying the witness at every reachable layer. In pair
/// residue mode the MRD witness can legitimately miss (the stored residue pair
/// does not cover z modulo 16); that is recorded as a failed layer check, not
/// an error. Deterministic for fixed input + options.
Result run_pipeline(const sat::Formula& input, const Options& opts);

/// The deterministic output files of a run: (filename, content) pairs.
std::vector<std::pair<std::string, std::string>> render_files(const Result& r);

std::string summary(const Result& r);

}  // namespace redchain::pipeline

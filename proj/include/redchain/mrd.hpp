#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redchain/qc.hpp"

namespace redchain::mrd {

using numtheory::Int;

enum class ResidueMode { pair, full };

std::string to_string(ResidueMode m);
ResidueMode residue_mode_from_string(const std::string& s);

struct Equation {
  Int q;                   // modulus, >= 2
  std::vector<Int> roots;  // nonempty, sorted, each in [0, q)
};

struct MRDInstance {
  std::vector<Equation> equations;  // moduli pairwise coprime
  Int zeta;
  ResidueMode mode = ResidueMode::full;
};

/// nullopt is the canonical trivial no-instance (some residue of alpha has no
/// square root modulo its prime power).
std::optional<MRDInstance> reduce_qc_to_mrd(const qc::QCInstance& inst, ResidueMode mode);

struct MrdSolution {
  Int z;
  std::vector<Int> choices;  // one chosen root per equation
};

/// Minimal positive z meeting one root per equation, by CRT over all choice
/// vectors. A CRT value of 0 lifts to prod q_i (z must be positive).
std::optional<MrdSolution> solve_mrd(const MRDInstance& inst);

/// Independent oracle: linear scan of z = 1 .. min(zeta, prod q_i).
std::optional<Int> solve_mrd_scan(const MRDInstance& inst);

/// The residues z mod q_i, required to be covered by the root sets.
std::vector<Int> mrd_witness_from_z(const MRDInstance& inst, const Int& z);

bool verify_mrd(const MRDInstance& inst, const Int& z);

void validate(const MRDInstance& inst);

}  // namespace redchain::mrd

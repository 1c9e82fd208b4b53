#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redchain/mrd.hpp"

namespace redchain::silp {

using numtheory::Int;

using Matrix = std::vector<std::vector<Int>>;  // row major

/// Block-structured integer program: n copies of A (r x s) down the first
/// columns, B_i (r x t) along the diagonal. Variables are the s first-stage
/// ones followed by the n blocks of t second-stage ones.
struct TwoStageILP {
  int n = 0, r = 0, s = 0, t = 0;
  std::vector<Matrix> a_blocks;  // n matrices, r x s
  std::vector<Matrix> b_blocks;  // n matrices, r x t
  std::vector<Int> b;            // length n*r
  std::vector<Int> lower, upper, w;  // length s + n*t

  int num_vars() const { return s + n * t; }
  Int delta() const;  // largest absolute constraint matrix entry
  void validate() const;
};

struct Solution {
  std::vector<Int> x;
};

struct EncodedILP {
  TwoStageILP ilp;
  int digit_count = 1;  // D
  // per-block template: for each original second-stage variable, the
  // (offset, length) of its digit group within the block
  std::vector<std::pair<int, int>> group_map;
};

/// Theorem-style formulation of an MRD instance: one block per equation with
/// rows (-1 | q_i, roots...) and the selector row; w = 0, L = 0.
TwoStageILP reduce_mrd_to_ilp(const mrd::MRDInstance& inst);

/// Solution vector from an MRD witness (z and its chosen residues).
Solution ilp_from_witness(const mrd::MRDInstance& inst, const Int& z,
                          const std::vector<Int>& choices);

/// Exact feasibility check: every block row holds and all bounds hold.
bool verify_solution(const TwoStageILP& ilp, const Solution& x);

/// Structure-aware scan over the first-stage value for instances produced by
/// reduce_mrd_to_ilp. Returns the least feasible z >= 1 as a full solution.
std::optional<Solution> solve_reduced(const TwoStageILP& ilp);

/// Box enumeration in lexicographic order with sound row-interval pruning;
/// returns the first feasible vector. The pruning makes encoded instances
/// (whose raw box is large but chained) decidable; a node budget guards
/// against genuinely oversized instances.
std::optional<Solution> solve_exhaustive(const TwoStageILP& ilp);

/// Base-2 digit encoding of the second-stage coefficients; max |entry| of the
/// result is at most 2.
EncodedILP encode_binary(const TwoStageILP& ilp);

/// Witness mapping into the encoded instance (digit k carries value * 2^k).
Solution encode_solution(const EncodedILP& enc, const Solution& original);

/// Inverse mapping: digit 0 of every group, first-stage values copied.
Solution decode_solution(const EncodedILP& enc, const Solution& encoded);

std::string write_2ssilp(const TwoStageILP& ilp);
TwoStageILP read_2ssilp(std::istream& in);
TwoStageILP read_2ssilp(const std::string& text);

}  // namespace redchain::silp

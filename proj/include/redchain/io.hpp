#pragma once

#include <optional>
#include <string>

#include "redchain/mrd.hpp"
#include "redchain/qc.hpp"
#include "redchain/silp.hpp"

namespace redchain::io {

using numtheory::Int;

/// Structured-text (JSON) instance and witness files. Every document carries
/// "kind" and "version": 1; big integers are decimal strings. Output is
/// deterministic: fixed key order, 2-space indent, trailing newline.

std::string write_qc(const qc::QCInstance& inst);
qc::QCInstance read_qc(const std::string& text);

/// nullopt serializes as the canonical no-instance marker and reads back as
/// nullopt.
std::string write_mrd(const std::optional<mrd::MRDInstance>& inst);
std::optional<mrd::MRDInstance> read_mrd(const std::string& text);

struct QcWitnessDoc {
  Int z;
  std::vector<int> alpha_vec;  // may be empty (not part of verification)
};
struct MrdWitnessDoc {
  Int z;
  std::vector<Int> choices;
};
struct IlpWitnessDoc {
  std::vector<Int> x;
};

std::string write_qc_witness(const QcWitnessDoc& w);
std::string write_mrd_witness(const MrdWitnessDoc& w);
std::string write_ilp_witness(const IlpWitnessDoc& w);

/// Readers check kind == "witness" and the expected layer tag.
QcWitnessDoc read_qc_witness(const std::string& text);
MrdWitnessDoc read_mrd_witness(const std::string& text);
IlpWitnessDoc read_ilp_witness(const std::string& text);

std::string write_audit(const qc::AuditReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace redchain::io

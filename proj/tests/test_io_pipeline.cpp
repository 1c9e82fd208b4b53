#include <doctest.h>

#include "redchain/io.hpp"
#include "redchain/pipeline.hpp"

using namespace redchain;
using numtheory::Int;

namespace {

const sat::Formula kMini{3, {{1, 2, 3}, {-1, 2, 3}}};

}  // namespace

TEST_CASE("qc file round trip") {
  qc::QCInstance inst;
  inst.alpha = Int("123456789012345678901234567890");
  inst.beta = Int(2 * 2 * 2 * 2) * 3 * 5;
  inst.alpha %= inst.beta;
  inst.gamma = 17;
  inst.beta_factorization.factors = {{2, 4}, {3, 1}, {5, 1}};
  std::string text = io::write_qc(inst);
  auto back = io::read_qc(text);
  CHECK(back.alpha == inst.alpha);
  CHECK(back.beta == inst.beta);
  CHECK(back.gamma == inst.gamma);
  CHECK(io::write_qc(back) == text);

  CHECK_THROWS_AS(io::read_qc("{}"), Error);
  CHECK_THROWS_AS(io::read_qc("not json"), Error);
}

TEST_CASE("mrd file round trip including the no-instance marker") {
  mrd::MRDInstance inst;
  inst.equations = {{3, {1, 2}}, {5, {2, 3}}};
  inst.zeta = 10;
  inst.mode = mrd::ResidueMode::pair;
  std::string text = io::write_mrd(inst);
  auto back = io::read_mrd(text);
  REQUIRE(back.has_value());
  CHECK(back->zeta == 10);
  CHECK(back->mode == mrd::ResidueMode::pair);
  CHECK(io::write_mrd(back) == text);

  std::string marker = io::write_mrd(std::nullopt);
  CHECK_FALSE(io::read_mrd(marker).has_value());
  CHECK(io::write_mrd(io::read_mrd(marker)) == marker);
}

TEST_CASE("witness files round trip") {
  std::string qtext = io::write_qc_witness({Int("98765432109876543210"), {-1, 1, 1}});
  auto qw = io::read_qc_witness(qtext);
  CHECK(qw.z == Int("98765432109876543210"));
  CHECK(qw.alpha_vec == std::vector<int>{-1, 1, 1});

  std::string mtext = io::write_mrd_witness({7, {1, 2}});
  auto mw = io::read_mrd_witness(mtext);
  CHECK(mw.z == 7);
  CHECK(mw.choices == std::vector<Int>{1, 2});

  std::string itext = io::write_ilp_witness({{2, 0, 1}});
  CHECK(io::read_ilp_witness(itext).x == std::vector<Int>{2, 0, 1});

  CHECK_THROWS_AS(io::read_qc_witness(mtext), Error);  // wrong layer tag
}

TEST_CASE("pipeline on the mini formula: every layer check passes") {
  pipeline::Options opts;
  opts.encode = true;
  auto r = pipeline::run_pipeline(kMini, opts);
  REQUIRE(r.sat_answer.has_value());
  REQUIRE(r.mrd_instance.has_value());
  REQUIRE(r.ilp.has_value());
  REQUIRE(r.encoded.has_value());
  CHECK(r.all_checks_passed());
  CHECK(r.layer_checks.size() == 6);
  CHECK(qc::verify_qc(r.qc_instance, r.qc_wit->z));
  CHECK(mrd::verify_mrd(*r.mrd_instance, r.qc_wit->z));
  CHECK(silp::verify_solution(*r.ilp, *r.ilp_solution));
  CHECK(silp::verify_solution(r.encoded->ilp, *r.encoded_solution));
  CHECK_FALSE(pipeline::summary(r).empty());
}

TEST_CASE("pipeline on an unsatisfiable formula still emits instances") {
  sat::Formula unsat{1, {{1}, {-1}}};
  auto r = pipeline::run_pipeline(unsat, {});
  CHECK_FALSE(r.sat_answer.has_value());
  CHECK_FALSE(r.qc_wit.has_value());
  CHECK(r.qc_instance.beta > 0);
  CHECK(r.audit.all_passed());
  auto files = pipeline::render_files(r);
  bool has_qc = false, has_witness = false;
  for (const auto& [name, content] : files) {
    if (name == "qc.json") has_qc = true;
    if (name.rfind("witness", 0) == 0) has_witness = true;
  }
  CHECK(has_qc);
  CHECK_FALSE(has_witness);
}

TEST_CASE("pipeline is deterministic: identical files across runs") {
  pipeline::Options opts;
  opts.encode = true;
  auto a = pipeline::render_files(pipeline::run_pipeline(kMini, opts));
  auto b = pipeline::render_files(pipeline::run_pipeline(kMini, opts));
  CHECK(a == b);
}

TEST_CASE("pipeline in pair mode reports rather than absorbs witness misses") {
  pipeline::Options opts;
  opts.residue_mode = mrd::ResidueMode::pair;
  auto r = pipeline::run_pipeline(kMini, opts);
  bool found = false;
  for (const auto& [name, ok] : r.layer_checks) {
    if (name == "mrd_witness") found = true;
  }
  CHECK(found);  // the check is recorded either way; pass/fail depends on z mod 16
}

TEST_CASE("pipeline file set round trips through the readers") {
  pipeline::Options opts;
  opts.encode = true;
  auto r = pipeline::run_pipeline(kMini, opts);
  for (const auto& [name, content] : pipeline::render_files(r)) {
    if (name == "qc.json") CHECK(io::write_qc(io::read_qc(content)) == content);
    if (name == "mrd.json") CHECK(io::write_mrd(io::read_mrd(content)) == content);
    if (name.rfind(".2ssilp") != std::string::npos)
      CHECK(silp::write_2ssilp(silp::read_2ssilp(content)) == content);
    if (name == "formula.cnf") CHECK(sat::parse_dimacs(content) == r.simplified);
  }
}

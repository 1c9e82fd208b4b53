// Python bindings. Big integers cross the boundary as decimal strings and
// instances as the same JSON / text documents the CLI reads and writes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "redchain/io.hpp"
#include "redchain/pipeline.hpp"

namespace py = pybind11;
using namespace redchain;
using numtheory::Int;

PYBIND11_MODULE(_redchain, m) {
  m.doc() = "3-SAT -> quadratic congruence -> multiple-residue -> 2-stage ILP reduction chain";

  m.def("simplify_dimacs", [](const std::string& text) {
    return sat::to_dimacs(sat::simplify(sat::parse_dimacs(text)).formula);
  });

  m.def("solve_sat", [](const std::string& text) -> std::optional<std::vector<bool>> {
    auto model = sat::solve_brute(sat::parse_dimacs(text));
    if (!model) return std::nullopt;
    return model->values;
  });

  m.def(
      "sat_to_qc",
      [](const std::string& dimacs, const std::string& mode) {
        auto simplified = sat::simplify(sat::parse_dimacs(dimacs));
        auto reduction =
            qc::reduce_sat_to_qc(simplified.formula, qc::coeff_mode_from_string(mode));
        return io::write_qc(reduction.instance);
      },
      py::arg("dimacs"), py::arg("mode") = "derived");

  m.def(
      "qc_to_mrd",
      [](const std::string& qc_json, const std::string& mode) {
        auto inst = io::read_qc(qc_json);
        return io::write_mrd(mrd::reduce_qc_to_mrd(inst, mrd::residue_mode_from_string(mode)));
      },
      py::arg("qc_json"), py::arg("mode") = "full");

  m.def("mrd_to_ilp", [](const std::string& mrd_json) -> std::optional<std::string> {
    auto inst = io::read_mrd(mrd_json);
    if (!inst) return std::nullopt;
    return silp::write_2ssilp(silp::reduce_mrd_to_ilp(*inst));
  });

  m.def("encode_ilp", [](const std::string& text) {
    return silp::write_2ssilp(silp::encode_binary(silp::read_2ssilp(text)).ilp);
  });

  m.def(
      "solve_qc",
      [](const std::string& qc_json, const std::string& cap) -> std::optional<std::string> {
        auto z = qc::solve_qc_brute(io::read_qc(qc_json), Int(cap));
        if (!z) return std::nullopt;
        return z->get_str();
      },
      py::arg("qc_json"), py::arg("cap") = "10000000");

  m.def("solve_mrd", [](const std::string& mrd_json) -> std::optional<std::string> {
    auto inst = io::read_mrd(mrd_json);
    if (!inst) return std::nullopt;
    auto sol = mrd::solve_mrd(*inst);
    if (!sol) return std::nullopt;
    return sol->z.get_str();
  });

  m.def("verify_qc", [](const std::string& qc_json, const std::string& z) {
    return qc::verify_qc(io::read_qc(qc_json), Int(z));
  });

  m.def("verify_mrd", [](const std::string& mrd_json, const std::string& z) {
    auto inst = io::read_mrd(mrd_json);
    return inst && mrd::verify_mrd(*inst, Int(z));
  });

  m.def(
      "run_pipeline",
      [](const std::string& dimacs, const std::string& coeff_mode,
         const std::string& residue_mode, bool encode) {
        pipeline::Options opts;
        opts.coeff_mode = qc::coeff_mode_from_string(coeff_mode);
        opts.residue_mode = mrd::residue_mode_from_string(residue_mode);
        opts.encode = encode;
        auto result = pipeline::run_pipeline(sat::parse_dimacs(dimacs), opts);
        py::dict files;
        for (const auto& [name, content] : pipeline::render_files(result))
          files[py::str(name)] = content;
        py::dict out;
        out["satisfiable"] = result.sat_answer.has_value();
        out["all_checks_passed"] = result.all_checks_passed();
        out["summary"] = pipeline::summary(result);
        out["files"] = files;
        return out;
      },
      py::arg("dimacs"), py::arg("coeff_mode") = "derived", py::arg("residue_mode") = "full",
      py::arg("encode") = false);

  m.def(
      "generate_corpus",
      [](int count, int num_vars, int num_clauses, std::uint64_t seed) {
        std::vector<std::string> out;
        for (const auto& f : sat::generate_corpus(count, num_vars, num_clauses, seed))
          out.push_back(sat::to_dimacs(f));
        return out;
      },
      py::arg("count"), py::arg("num_vars") = 4, py::arg("num_clauses") = 4, py::arg("seed") = 0);

  py::register_exception<Error>(m, "ReductionError");
}

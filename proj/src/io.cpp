#include "redchain/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace redchain::io {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(errc::bad_format, "instance file: not valid JSON");
  return doc;
}

void check_kind(const json& doc, const std::string& kind) {
  if (!doc.is_object() || doc.value("kind", "") != kind || doc.value("version", 0) != 1)
    fail(errc::bad_format, "instance file: expected kind '" + kind + "' version 1");
}

std::string enc(const Int& v) { return v.get_str(); }

Int dec(const json& v) {
  if (!v.is_string()) fail(errc::bad_format, "instance file: integer fields are decimal strings");
  try {
    return Int(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    fail(errc::bad_format, "instance file: bad decimal string");
  }
}

json enc_vec(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& e : v) a.push_back(enc(e));
  return a;
}

std::vector<Int> dec_vec(const json& a) {
  if (!a.is_array()) fail(errc::bad_format, "instance file: expected array");
  std::vector<Int> v;
  for (const auto& e : a) v.push_back(dec(e));
  return v;
}

}  // namespace

std::string write_qc(const qc::QCInstance& inst) {
  json doc;
  doc["kind"] = "qc";
  doc["version"] = 1;
  doc["alpha"] = enc(inst.alpha);
  doc["beta"] = enc(inst.beta);
  doc["gamma"] = enc(inst.gamma);
  json factors = json::array();
  for (const auto& f : inst.beta_factorization.factors)
    factors.push_back({{"prime", enc(f.prime)}, {"exponent", f.exponent}});
  doc["beta_factorization"] = factors;
  return dump(doc);
}

qc::QCInstance read_qc(const std::string& text) {
  json doc = parse(text);
  check_kind(doc, "qc");
  qc::QCInstance inst;
  inst.alpha = dec(doc.at("alpha"));
  inst.beta = dec(doc.at("beta"));
  inst.gamma = dec(doc.at("gamma"));
  for (const auto& f : doc.at("beta_factorization")) {
    numtheory::Factorization::Entry e;
    e.prime = dec(f.at("prime"));
    e.exponent = f.at("exponent").get<unsigned long>();
    inst.beta_factorization.factors.push_back(e);
  }
  inst.beta_factorization.validate();
  if (inst.beta_factorization.value() != inst.beta)
    fail(errc::bad_format, "qc file: factorization does not match beta");
  return inst;
}

std::string write_mrd(const std::optional<mrd::MRDInstance>& inst) {
  json doc;
  doc["kind"] = "mrd";
  doc["version"] = 1;
  if (!inst) {
    doc["no_instance"] = true;
    return dump(doc);
  }
  doc["no_instance"] = false;
  doc["mode"] = mrd::to_string(inst->mode);
  doc["zeta"] = enc(inst->zeta);
  json eqs = json::array();
  for (const auto& e : inst->equations) eqs.push_back({{"q", enc(e.q)}, {"roots", enc_vec(e.roots)}});
  doc["equations"] = eqs;
  return dump(doc);
}

std::optional<mrd::MRDInstance> read_mrd(const std::string& text) {
  json doc = parse(text);
  check_kind(doc, "mrd");
  if (doc.value("no_instance", false)) return std::nullopt;
  mrd::MRDInstance inst;
  inst.mode = mrd::residue_mode_from_string(doc.at("mode").get<std::string>());
  inst.zeta = dec(doc.at("zeta"));
  for (const auto& e : doc.at("equations")) {
    mrd::Equation eq;
    eq.q = dec(e.at("q"));
    eq.roots = dec_vec(e.at("roots"));
    inst.equations.push_back(eq);
  }
  mrd::validate(inst);
  return inst;
}

namespace {

json witness_header(const std::string& layer) {
  json doc;
  doc["kind"] = "witness";
  doc["version"] = 1;
  doc["layer"] = layer;
  return doc;
}

json check_witness(const std::string& text, const std::string& layer) {
  json doc = parse(text);
  check_kind(doc, "witness");
  if (doc.value("layer", "") != layer)
    fail(errc::bad_format, "witness file: expected layer '" + layer + "'");
  return doc;
}

}  // namespace

std::string write_qc_witness(const QcWitnessDoc& w) {
  json doc = witness_header("qc");
  doc["z"] = enc(w.z);
  doc["alpha_vec"] = w.alpha_vec;
  return dump(doc);
}

std::string write_mrd_witness(const MrdWitnessDoc& w) {
  json doc = witness_header("mrd");
  doc["z"] = enc(w.z);
  doc["choices"] = enc_vec(w.choices);
  return dump(doc);
}

std::string write_ilp_witness(const IlpWitnessDoc& w) {
  json doc = witness_header("ilp");
  doc["x"] = enc_vec(w.x);
  return dump(doc);
}

QcWitnessDoc read_qc_witness(const std::string& text) {
  json doc = check_witness(text, "qc");
  QcWitnessDoc w;
  w.z = dec(doc.at("z"));
  if (doc.contains("alpha_vec")) w.alpha_vec = doc.at("alpha_vec").get<std::vector<int>>();
  return w;
}

MrdWitnessDoc read_mrd_witness(const std::string& text) {
  json doc = check_witness(text, "mrd");
  return {dec(doc.at("z")), dec_vec(doc.at("choices"))};
}

IlpWitnessDoc read_ilp_witness(const std::string& text) {
  json doc = check_witness(text, "ilp");
  return {dec_vec(doc.at("x"))};
}

std::string write_audit(const qc::AuditReport& report) {
  json doc;
  doc["kind"] = "audit";
  doc["version"] = 1;
  doc["all_passed"] = report.all_passed();
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  doc["checks"] = checks;
  doc["beta_prime_count"] = report.beta_prime_count;
  doc["alpha_bits"] = report.alpha_bits;
  doc["beta_bits"] = report.beta_bits;
  doc["gamma_bits"] = report.gamma_bits;
  return dump(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_format, "cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::bad_format, "cannot write file: " + path);
  out << content;
}

}  // namespace redchain::io

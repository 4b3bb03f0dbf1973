// dihedral: validate algebra descriptions and compute cyclic, dihedral and
// reflexive homology of their tensor modules.
//
// Exit codes: 0 success, 1 validation failure, 2 input error,
// 3 internal assertion (d^2 != 0, inexact sequence).

#include <omp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "dihedral/homology.hpp"
#include "dihedral/io.hpp"

using namespace dihedral;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, validation = 1, input = 2, internal = 3 };

struct InternalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kTaskOrder{"validate", "cyclic", "dihedral", "reflexive", "quotients", "les"};

struct Job {
  std::string path;
  RingSpec ring;
  int rho = 0;
  int n_max = 6;
  std::set<std::string> tasks;
  bool structured = false;
};

// Collects human text and the structured document side by side.
class Report {
 public:
  explicit Report(const Job& job) {
    doc_["input"] = job.path;
    doc_["ring"] = job.ring.name();
    doc_["n_max"] = job.n_max;
    json t = json::array();
    for (const auto& name : kTaskOrder)
      if (job.tasks.count(name)) t.push_back(name);
    doc_["tasks"] = t;
    doc_["checks"] = json::array();
    doc_["homology"] = json::array();
  }

  std::ostringstream text;
  json& doc() { return doc_; }

  bool add_checks(const std::string& suite, const ValidationReport& r) {
    json relations = json::array();
    for (const auto& [rel, n] : r.counts()) {
      std::size_t bad = 0;
      for (const auto& f : r.failures()) bad += f.relation == rel;
      relations.push_back({{"relation", rel}, {"instances", n}, {"failures", bad}});
    }
    json failures = json::array();
    for (const auto& f : r.failures())
      failures.push_back({{"relation", f.relation}, {"instance", f.instance}, {"detail", f.detail}});
    doc_["checks"].push_back({{"suite", suite},
                              {"passed", r.passed()},
                              {"relations", relations},
                              {"failures", failures},
                              {"notes", r.notes()}});
    text << "[" << (r.passed() ? "pass" : "FAIL") << "] " << suite << ": " << r.checked() << " checks";
    if (!r.passed()) text << ", " << r.failures().size() << " failures";
    text << "\n";
    for (const auto& f : r.failures()) text << "    " << f.relation << " at " << f.instance << " " << f.detail << "\n";
    for (const auto& n : r.notes()) text << "    note: " << n << "\n";
    return r.passed();
  }

  void add_homology(const HomologyResult& h) {
    json degrees = json::array();
    for (const auto& d : h.degrees) {
      json tors = json::array();
      for (const auto& t : d.torsion) tors.push_back(t.get_str());
      degrees.push_back({{"degree", d.degree}, {"betti", d.betti}, {"torsion", tors}, {"chain_rank", d.chain_rank}});
    }
    doc_["homology"].push_back({{"complex", h.complex},
                                {"ring", h.ring.name()},
                                {"window", {h.window_lo, h.window_hi}},
                                {"degrees", degrees},
                                {"notes", h.notes}});
    text << h.to_text();
  }

 private:
  json doc_;
};

void require_square_zero(const ChainComplex& c) {
  auto r = c.check_square_zero();
  if (!r.passed()) throw InternalFailure(c.name() + ": d^2 != 0 (" + r.failures().front().instance + ")");
}

// Returns the exit code; the report is filled as far as the run got.
int run(const Job& job, Report& rep) {
  ParsedAlgebra parsed = parse_algebra_file(job.path);
  const AInfAlgebraDesc& a = parsed.algebra;
  const int rho = job.rho ? job.rho : a.rho;
  rep.doc()["algebra"] = a.name;
  rep.doc()["rho"] = rho;
  rep.text << "algebra " << a.name << " (" << a.dim() << " generators), ring " << job.ring.name() << ", rho "
           << (rho > 0 ? "+1" : "-1") << ", n_max " << job.n_max << "\n";

  auto wants = [&](const char* t) { return job.tasks.count(t) > 0; };
  if (wants("les")) {
    if (!parsed.hu) throw SemanticError("task les needs a tau block (homotopy unit) in the input");
    if (!job.ring.is_field()) throw NotAField("task les needs field coefficients");
  }
  if (wants("quotients") && !job.ring.is_field() && job.ring.kind() != RingSpec::Kind::integers)
    throw SemanticError("unsupported ring for quotients");

  // validate -> build -> complexes -> homology -> les
  if (wants("validate")) {
    bool good = rep.add_checks("A-infinity relations", validate_ainf(a));
    good = rep.add_checks("involution", validate_involution(a)) && good;
    if (parsed.hu) {
      good = rep.add_checks("homotopy unit", validate_hu(a, *parsed.hu)) && good;
      good = rep.add_checks("involutive homotopy unit", validate_involutive_hu(a, *parsed.hu)) && good;
    }
    if (!good) return validation;
    auto B = build_tensor_module(a, job.n_max, rho);
    good = rep.add_checks("dihedral structure", B.structure->check(&B.d));
    good = rep.add_checks("F-module", validate_f_module(*B.faces)) && good;
    good = rep.add_checks("face-rotation and face-reflection", validate_df_relations(*B.faces, *B.structure)) && good;
    auto d0 = dq_differentials(*B.faces, 0), d1 = dq_differentials(*B.faces, 1);
    good = rep.add_checks("D-infinity d_0", d0.check_relations(job.n_max + 1)) && good;
    good = rep.add_checks("D-infinity d_1", d1.check_relations(job.n_max + 1)) && good;
    auto ops = build_operators(*B.structure);
    good = rep.add_checks("interchange", validate_interchange(ops, d0, d1)) && good;
    good = rep.add_checks("barred operators", validate_barred(build_barred(ops, d0, d1))) && good;
    if (parsed.hu) good = rep.add_checks("contracting homotopy", validate_contracting(B, build_s_maps(B, *parsed.hu))) && good;
    if (!good) return validation;
  }

  const bool any_homology = wants("cyclic") || wants("dihedral") || wants("reflexive") || wants("quotients");
  if (any_homology) {
    DihedralData d = prepare(a, rho, job.n_max, job.ring);
    if (wants("cyclic")) {
      ChainComplex c = build_cyclic_bicomplex(d).total();
      require_square_zero(c);
      HomologyResult h = homology(c);
      h.complex = "HC(" + a.name + ")";
      rep.add_homology(h);
    }
    if (wants("dihedral")) {
      ChainComplex c = build_dihedral_triple(d).total();
      require_square_zero(c);
      HomologyResult h = homology(c);
      h.complex = (rho > 0 ? "+HD(" : "-HD(") + a.name + ")";
      rep.add_homology(h);
    }
    if (wants("reflexive")) {
      ChainComplex c = build_reflexive_bicomplex(d).total();
      require_square_zero(c);
      HomologyResult h = homology(c);
      h.complex = (rho > 0 ? "+HR(" : "-HR(") + a.name + ")";
      if (job.ring.kind() == RingSpec::Kind::prime_field && job.ring.modulus() == 2)
        h.notes.push_back("characteristic 2: no comparison with the N-quotient");
      rep.add_homology(h);
    }
    if (wants("quotients")) {
      if (job.ring.is_field()) {
        Quotients q = build_quotient_complexes(d);
        if (!rep.add_checks("quotients descend", q.descends)) return validation;
        for (const ChainComplex* c : {&q.L, &q.M, &q.N}) {
          require_square_zero(*c);
          rep.add_homology(homology(*c));
        }
      } else if (!rep.add_checks("integral quotients", validate_integral_quotients(d))) {
        return validation;
      }
    }
  }

  if (wants("les")) {
    LESReport les = verify_les(a, *parsed.hu, rho, job.n_max, job.ring);
    bool good = rep.add_checks("P structure", les.chain_level);
    json nodes = json::array();
    for (const auto& n : les.nodes)
      nodes.push_back({{"node", n.name}, {"dim", n.dim}, {"rank_in", n.rank_in}, {"rank_out", n.rank_out},
                       {"exact", n.exact}});
    rep.doc()["les"] = {{"degrees", {0, les.degree_hi}},
                        {"exact", les.exact()},
                        {"alpha_isomorphism", les.alpha_isomorphism()},
                        {"q_acyclic", les.q_acyclic()},
                        {"nodes", nodes}};
    rep.text << les.to_text();
    if (!good) return validation;
    if (!les.exact() || !les.alpha_isomorphism() || !les.q_acyclic())
      throw InternalFailure("long exact sequence check failed");
  }
  return ok;
}

template <class... E>
bool is_any(const std::exception& e) {
  return (... || (dynamic_cast<const E*>(&e) != nullptr));
}

int classify(const std::exception& e) {
  if (is_any<ParseError, SemanticError, NotAField, MissingReflection, MissingTau, MissingHuStructure,
             WindowExceeded>(e))
    return input;
  if (is_any<StructureInvalid>(e)) return validation;
  return internal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic, dihedral and reflexive homology of involutive A-infinity algebras"};
  std::vector<std::string> inputs;
  std::string ring = "Q", rho = "", tasks = "validate", out, format = "human";
  int n_max = 6, workers = 0;
  app.add_option("inputs", inputs, "algebra description files")->required()->check(CLI::ExistingFile);
  app.add_option("--ring", ring, "Q, Z or Fp:<p>")->capture_default_str();
  app.add_option("--rho", rho, "+1 or -1 (default: from the input)")->check(CLI::IsMember({"+1", "-1", "1"}));
  app.add_option("--nmax", n_max, "truncation of the tensor module")->capture_default_str()->check(CLI::Range(1, 40));
  app.add_option("--tasks", tasks, "comma list of validate,cyclic,dihedral,reflexive,quotients,les")
      ->capture_default_str();
  app.add_option("--out", out, "directory for reports (default: stdout)");
  app.add_option("--workers", workers, "OpenMP threads (default: runtime choice)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "human or structured")->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  if (workers > 0) omp_set_num_threads(workers);

  Job base;
  base.n_max = n_max;
  base.rho = rho.empty() ? 0 : (rho == "-1" ? -1 : 1);
  base.structured = format == "structured";
  try {
    base.ring = RingSpec::parse(ring);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  }
  std::stringstream ts(tasks);
  for (std::string t; std::getline(ts, t, ',');) {
    if (std::find(kTaskOrder.begin(), kTaskOrder.end(), t) == kTaskOrder.end()) {
      std::cerr << "error: unknown task '" << t << "'\n";
      return input;
    }
    base.tasks.insert(t);
  }
  if (!out.empty()) std::filesystem::create_directories(out);

  int worst = ok;
  for (const auto& path : inputs) {
    Job job = base;
    job.path = path;
    Report rep(job);
    int code = ok;
    try {
      code = run(job, rep);
    } catch (const std::exception& e) {
      code = classify(e);
      const char* kind = code == input ? "input error: " : code == validation ? "validation failure: " : "internal assertion: ";
      rep.text << kind << e.what() << "\n";
      if (code == input) std::cerr << path << ": " << e.what() << "\n";
    }
    rep.doc()["exit_code"] = code;
    std::string body = base.structured ? rep.doc().dump(2) + "\n" : rep.text.str();
    if (out.empty()) {
      std::cout << body;
    } else {
      auto stem = std::filesystem::path(path).stem().string();
      auto file = std::filesystem::path(out) / (stem + (base.structured ? ".json" : ".txt"));
      std::ofstream(file) << body;
      std::cout << path << ": exit " << code << ", report " << file.string() << "\n";
    }
    worst = std::max(worst, code);
  }
  return worst;
}

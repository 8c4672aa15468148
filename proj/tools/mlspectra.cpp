#include "mlspectra/badness.hpp"
#include "mlspectra/builtins.hpp"
#include "mlspectra/eps_adjugate.hpp"
#include "mlspectra/errors.hpp"
#include "mlspectra/json_io.hpp"
#include "mlspectra/mlgeometry.hpp"
#include "mlspectra/repro.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace mlspectra;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitInput = 64;

struct RunConfig {
  std::string input;
  std::string builtin;
  std::string field;
  std::uint64_t seed = kDefaultSeed;
  double tol_rank = 1e-8;
  double tol_residual = 1e-9;
  double tol_dedup = 1e-6;
  std::string paths_debug;
  std::string output;
  // sample
  int n = 3;
  int k = 2;
  // blowup
  std::vector<std::string> params;
  std::vector<std::string> perturbation;
  std::string eps_name = "e";
  // repro
  std::vector<std::string> only;
};

LinearSubspace load(const RunConfig& cfg) {
  if (cfg.input.empty() == cfg.builtin.empty()) throw LoadError("give exactly one of --input and --builtin");
  if (!cfg.builtin.empty()) return builtin_subspace(cfg.builtin);
  if (cfg.field.empty()) return load_subspace(cfg.input);
  std::ifstream in(cfg.input);
  if (!in) throw LoadError("cannot open " + cfg.input);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(cfg.input + ": " + e.what());
  }
  j["field"] = cfg.field;
  return subspace_from_json(j);
}

GeometryOptions geometry(const RunConfig& cfg, std::ostream* trace) {
  GeometryOptions g;
  g.rank_tol = cfg.tol_rank;
  g.residual_tol = cfg.tol_residual;
  g.dedup_tol = cfg.tol_dedup;
  g.paths_debug = trace;
  return g;
}

void emit(const RunConfig& cfg, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::runtime_error("cannot write " + cfg.output);
  out << text;
}

int run(const std::string& command, const RunConfig& cfg) {
  std::unique_ptr<std::ofstream> trace;
  if (!cfg.paths_debug.empty()) {
    trace = std::make_unique<std::ofstream>(cfg.paths_debug);
    if (!*trace) throw std::runtime_error("cannot write " + cfg.paths_debug);
  }
  const GeometryOptions g = geometry(cfg, trace.get());

  if (command == "report") {
    const MLReport r = ml_report(load(cfg), cfg.seed, g);
    emit(cfg, to_json(r, g));
    return r.violations.empty() ? kExitOk : kExitInconsistent;
  }
  if (command == "mldeg") {
    emit(cfg, to_json(ml_degree(load(cfg), cfg.seed, g)));
    return kExitOk;
  }
  if (command == "recdeg") {
    emit(cfg, to_json(reciprocal_degree(load(cfg), cfg.seed, g)));
    return kExitOk;
  }
  if (command == "tangency") {
    emit(cfg, to_json(tangency_witnesses(load(cfg), cfg.seed, g)));
    return kExitOk;
  }
  if (command == "ckn") {
    emit(cfg, to_json(ckn_witness(load(cfg), cfg.seed, g)));
    return kExitOk;
  }
  if (command == "bad") {
    BadnessOptions opts;
    const BadCertificate c = pataki_certificate(load(cfg), cfg.seed, opts);
    emit(cfg, to_json(c, opts));
    return c.verdict == Verdict::undetermined ? kExitSolver : kExitOk;
  }
  if (command == "sample") {
    emit(cfg, to_json(sample_generic_subspace(cfg.n, cfg.k, cfg.seed)));
    return kExitOk;
  }
  if (command == "blowup") {
    const LinearSubspace L = load(cfg);
    if (!L.is_exact()) throw LoadError("blowup needs a rational subspace");
    const auto& basis = L.exact_basis();
    const std::vector<SymMatQ> dirs(basis.begin() + 1, basis.end());
    std::vector<std::string> params = cfg.params;
    if (params.empty())
      for (std::size_t i = 1; i <= dirs.size(); ++i) params.push_back("t" + std::to_string(i));
    std::vector<std::string> names{cfg.eps_name};
    names.insert(names.end(), params.begin(), params.end());
    std::vector<std::string> pert = cfg.perturbation.empty() ? params : cfg.perturbation;
    if (pert.size() != dirs.size())
      throw LoadError("--perturbation needs " + std::to_string(dirs.size()) + " entries, one per direction");
    std::vector<QPoly> b;
    for (const auto& p : pert) {
      try {
        b.push_back(parse_polynomial(p, names));
      } catch (const std::invalid_argument& e) {
        throw LoadError("--perturbation \"" + p + "\": " + e.what());
      }
    }
    emit(cfg, to_json(eps_adjugate_leading_term(basis[0], dirs, b), names));
    return kExitOk;
  }
  if (command == "repro") {
    ReproOptions opts;
    opts.seed = cfg.seed;
    opts.only = cfg.only;
    opts.progress = &std::cout;
    const auto results = run_repro(opts);
    bool all = true;
    Json failures = Json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      if (!r.passed) failures.push_back(to_json(r));
    }
    std::cout << (all ? "all criteria passed" : "FAILED: " + std::to_string(failures.size()) + " criteria") << "\n";
    if (!cfg.output.empty()) {
      Json j;
      j["passed"] = all;
      j["criteria"] = Json::array();
      for (const auto& r : results) j["criteria"].push_back(to_json(r));
      j["failures"] = failures;
      emit(cfg, j);
    } else if (!all) {
      std::cerr << failures.dump(2) << "\n";
    }
    return all ? kExitOk : kExitSolver;
  }
  throw std::logic_error("unhandled command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum likelihood degrees and spectrahedral geometry of linear concentration models"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_subspace) {
    if (needs_subspace) {
      auto* in = sub->add_option("--input,-i", cfg.input, "subspace JSON file");
      auto* bi = sub->add_option("--builtin,-b", cfg.builtin, "builtin example name");
      in->excludes(bi);
      sub->add_option("--field", cfg.field, "override the field tag of the input")
          ->check(CLI::IsMember({"rational", "real"}));
    }
    sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--tol-rank", cfg.tol_rank, "relative rank tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol-residual", cfg.tol_residual, "relative residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol-dedup", cfg.tol_dedup, "angular deduplication tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--paths-debug", cfg.paths_debug, "write per-path JSON lines to this file");
    sub->add_option("--output,-o", cfg.output, "write JSON here instead of stdout");
  };

  std::string builtin_help = "builtins:";
  for (const auto& b : builtin_catalog()) builtin_help += "\n  " + b.name + "  " + b.description;
  app.footer(builtin_help);

  add_common(app.add_subcommand("report", "ML degree, reciprocal degree, tangency and witnesses"), true);
  add_common(app.add_subcommand("mldeg", "ML degree"), true);
  add_common(app.add_subcommand("recdeg", "degree of the reciprocal variety"), true);
  add_common(app.add_subcommand("tangency", "tangency points with the determinant hypersurface"), true);
  add_common(app.add_subcommand("ckn", "witness pair X in L, Y in the annihilator, XY = 0"), true);
  add_common(app.add_subcommand("bad", "badness certificate of the PSD cone intersection"), true);

  auto* sample = app.add_subcommand("sample", "random generic subspace as JSON");
  add_common(sample, false);
  sample->add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1, 8))->capture_default_str();
  sample->add_option("--k", cfg.k, "dimension")->check(CLI::PositiveNumber)->capture_default_str();

  auto* blowup = app.add_subcommand("blowup", "leading eps term of the adjugate of X + eps * sum b_i B_i");
  add_common(blowup, true);
  blowup->add_option("--params", cfg.params, "parameter names (default t1, t2, ...)")->delimiter(',');
  blowup->add_option("--perturbation", cfg.perturbation, "polynomials b_i, one per direction")->delimiter(',');
  blowup->add_option("--eps-name", cfg.eps_name, "name of the eps variable")->capture_default_str();
  blowup->footer("The first basis element is X, the remaining ones are the directions B_i.");

  auto* repro = app.add_subcommand("repro", "run the acceptance criteria");
  add_common(repro, false);
  std::string ids;
  for (const auto& c : criteria()) ids += (ids.empty() ? "" : ", ") + c.id;
  repro->add_option("--only", cfg.only, "criterion ids: " + ids)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, cfg);
  } catch (const LoadError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NotRegular& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

// Command-line front end: compute coherence measures, run the property
// verification suites, construct channels and check pure-state conversions.
//
// Exit codes: 0 success, 2 input error, 3 unsupported combination,
// 4 suite failure, 5 construction error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "coherence/errors.hpp"
#include "coherence/io.hpp"
#include "coherence/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitSuiteFailure = 4;
constexpr int kExitConstruction = 5;

struct Tolerances {
  double state = coherence::kTolState;
  double chan = coherence::kTolChan;
};

// COHERENCE_TOL overrides both validation tolerances. Documented and
// discouraged; it exists so slightly out-of-spec inputs can still be loaded.
Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("COHERENCE_TOL")) {
    try {
      const double value = std::stod(env);
      if (value > 0.0) {
        tol.state = value;
        tol.chan = value;
      }
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable COHERENCE_TOL\n";
    }
  }
  return tol;
}

std::string classes_json(const coherence::QuantumChannel& ch) {
  std::vector<std::string> names;
  for (const auto c : ch.classes()) names.push_back(coherence::to_string(c));
  std::sort(names.begin(), names.end());
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += '"' + names[i] + '"';
  }
  out += ']';
  return out;
}

int run_compute(const std::string& state_path, const std::string& measure,
                const std::string& method, const coherence::SolveOptions& opts, bool human,
                const Tolerances& tol) {
  const coherence::DensityMatrix rho = coherence::read_density_file(state_path, tol.state);
  const coherence::PureCoherenceFunctional f = coherence::functional_by_name(measure);

  coherence::SolveReport report = [&] {
    if (method == "analytic") {
      if (rho.dim() == 2 || measure == "geometric") {
        if (measure == "geometric") return coherence::cm_geometric(rho, opts);
        const double value = coherence::qubit_cm(rho, f);
        const auto decomposition = coherence::qubit_optimal_decomposition(rho);
        std::vector<coherence::EnsembleEntry> entries;
        if (decomposition.lambda > 1e-14) {
          entries.push_back({decomposition.lambda, decomposition.plus});
        }
        if (1.0 - decomposition.lambda > 1e-14) {
          entries.push_back({1.0 - decomposition.lambda, decomposition.minus});
        }
        auto ensemble = coherence::Ensemble::from_entries(std::move(entries));
        auto mu = coherence::aggregate_vector(ensemble);
        return coherence::SolveReport{value, std::move(ensemble), std::move(mu), 0, true,
                                      "analytic"};
      }
      throw coherence::UnsupportedCombination(
          "--method analytic needs a qubit state or --measure geometric");
    }
    if (method == "optimize") return coherence::cm_estimate(rho, f, opts);
    if (method == "roof") return coherence::cf_estimate(rho, f, opts);
    throw coherence::ParseError("unknown method '" + method + "'");
  }();

  if (human) {
    std::cout << "measure   " << measure << "\n"
              << "method    " << report.method << "\n"
              << "value     " << coherence::format_double(report.value) << "\n"
              << "converged " << (report.converged ? "yes" : "no") << "\n"
              << "ensemble  " << report.best_ensemble.size() << " members\n";
  } else {
    std::cout << coherence::to_json(report) << "\n";
  }
  return kExitOk;
}

int run_verify(const std::string& suite, int dim, int trials, std::uint64_t seed, bool human) {
  const coherence::SuiteResult result = coherence::run_suite(suite, dim, trials, seed);
  std::cerr << "suite " << result.suite << " finished in "
            << coherence::format_double(result.wall_seconds) << " s\n";
  if (human) {
    std::cout << "suite     " << result.suite << "\n"
              << "dim       " << dim << "\n"
              << "trials    " << result.trials << "\n"
              << "failures  " << result.failures << "\n"
              << "worst     " << coherence::format_double(result.worst_violation) << "\n"
              << "seed      " << result.seed << "\n";
  } else {
    std::cout << "{\"suite\":\"" << result.suite << "\",\"dim\":" << dim
              << ",\"trials\":" << result.trials << ",\"failures\":" << result.failures
              << ",\"worst_violation\":" << coherence::format_double(result.worst_violation)
              << ",\"seed\":" << result.seed << "}\n";
  }
  return result.failures == 0 ? kExitOk : kExitSuiteFailure;
}

int run_channel(const std::string& make, const std::string& state_path,
                const std::string& out_path, const Tolerances& tol) {
  const coherence::QuantumChannel channel = [&] {
    if (make == "prep") {
      // Only the diagonal matters; read it without full density validation
      // so the builder can report a bad probability vector itself.
      const coherence::Matrix raw = coherence::read_density_raw(state_path);
      return coherence::build_preparation_channel(raw.diagonal().real());
    }
    if (make == "dephase") {
      return coherence::build_dephasing_channel(
          coherence::read_density_file(state_path, tol.state), tol.chan);
    }
    throw coherence::ParseError("unknown builder '" + make + "'");
  }();
  coherence::write_channel_file(out_path, channel);
  std::cout << "{\"written\":\"" << out_path << "\",\"dim_in\":" << channel.dim_in()
            << ",\"dim_out\":" << channel.dim_out() << ",\"kraus\":" << channel.size()
            << ",\"classes\":" << classes_json(channel) << "}\n";
  return kExitOk;
}

int run_convert_check(const std::string& pure_path, const std::string& ensemble_path,
                      const Tolerances& tol) {
  const coherence::PureState psi = coherence::read_pure_file(pure_path, tol.state);
  const coherence::Ensemble ensemble = coherence::read_ensemble_file(ensemble_path);
  const bool ok = coherence::convertible_pure_to_ensemble(psi, ensemble);
  std::cout << "{\"convertible\":" << (ok ? "true" : "false") << "}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence measures, incoherent channels and verification suites"};
  app.require_subcommand(1);

  const Tolerances tol = tolerances_from_env();

  std::string state_path;
  std::string measure = "geometric";
  std::string method = "optimize";
  coherence::SolveOptions opts;
  bool human = false;

  auto* compute = app.add_subcommand("compute", "compute a coherence measure of a state");
  compute->add_option("state", state_path, "density matrix JSON file")->required();
  compute->add_option("--measure", measure, "geometric|relent|l1");
  compute->add_option("--method", method, "analytic|optimize|roof");
  compute->add_option("--restarts", opts.restarts, "optimizer restarts");
  compute->add_option("--max-iters", opts.max_iters, "iterations per restart");
  compute->add_option("--seed", opts.seed, "optimizer seed");
  compute->add_flag("--human", human, "table output instead of JSON");

  std::string suite;
  int dim = 2;
  int trials = 200;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "run a property verification suite");
  verify->add_option("--suite", suite, "mono|strong|convex|max|lemma3|prep|dephase|probe")
      ->required();
  verify->add_option("--dim", dim, "state dimension");
  verify->add_option("--trials", trials, "number of seeded trials");
  verify->add_option("--seed", seed, "base seed");
  verify->add_flag("--human", human, "table output instead of JSON");

  std::string make;
  std::string out_path;

  auto* channel = app.add_subcommand("channel", "construct a channel and write it to a file");
  channel->add_option("--make", make, "prep|dephase")->required();
  channel->add_option("--state", state_path, "input state JSON file")->required();
  channel->add_option("--out", out_path, "output channel JSON file")->required();

  std::string pure_path;
  std::string ensemble_path;

  auto* convert = app.add_subcommand("convert-check",
                                     "majorization test: can the pure state reach the ensemble");
  convert->add_option("--pure", pure_path, "pure state JSON file")->required();
  convert->add_option("--ensemble", ensemble_path, "ensemble JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (compute->parsed()) return run_compute(state_path, measure, method, opts, human, tol);
    if (verify->parsed()) return run_verify(suite, dim, trials, seed, human);
    if (channel->parsed()) return run_channel(make, state_path, out_path, tol);
    if (convert->parsed()) return run_convert_check(pure_path, ensemble_path, tol);
  } catch (const coherence::UnsupportedCombination& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const coherence::DimensionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const coherence::NotProbabilityVector& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const coherence::SingularDiagonal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const coherence::FactorizationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const coherence::NotCPTP& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const coherence::CoherenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

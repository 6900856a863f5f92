#include "coherence/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "coherence/errors.hpp"
#include "coherence/random.hpp"
#include "coherence/solver.hpp"

namespace coherence {

namespace {

constexpr double kIneqSlack = 1e-9;
constexpr double kPrepThreshold = 1e-12;
constexpr int kLemmaInnerStates = 100;

std::vector<PureCoherenceFunctional> builtins() {
  return {geometric_functional(), relative_entropy_functional(), l1_functional()};
}

void require_qubit(const std::string& name, int dim) {
  if (dim != 2) {
    throw UnsupportedCombination("suite '" + name + "' uses the qubit closed form; --dim 2");
  }
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SuiteResult run_prep(int dim, int trials, std::uint64_t seed) {
  SuiteResult result{"prep", trials, 0, 0.0, seed, 0.0};
  Vector basis0 = Vector::Zero(dim);
  basis0(0) = 1.0;
  const Matrix input = basis0 * basis0.adjoint();
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const RealVector target = random_prob_vector(dim, rng);
    const QuantumChannel ch = build_preparation_channel(target);
    const Matrix out = apply_matrix(ch, input);
    const double err = max_abs(out - Matrix(target.cast<Complex>().asDiagonal()));
    result.worst_violation = std::max(result.worst_violation, err);
    if (err > kPrepThreshold) ++result.failures;
  }
  return result;
}

SuiteResult run_dephase(int dim, int trials, std::uint64_t seed) {
  SuiteResult result{"dephase", trials, 0, 0.0, seed, 0.0};
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const DensityMatrix rho = random_density(dim, dim, rng);
    const QuantumChannel ch = build_dephasing_channel(rho);
    const PureState psi = canonical_pure_state(rho);
    const double err = max_abs(apply_matrix(ch, psi.projector()) - rho.matrix());
    result.worst_violation = std::max(result.worst_violation, err);
    if (err > kIneqSlack) ++result.failures;
  }
  return result;
}

SuiteResult run_lemma3(int dim, int trials, std::uint64_t seed) {
  SuiteResult result{"lemma3", trials, 0, 0.0, seed, 0.0};
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const int n_m = 2 + static_cast<int>(rng() % 3);
    const int n_k = 2 + static_cast<int>(rng() % 3);
    const QuantumChannel m_channel = random_sio(dim, n_m, rng());
    const QuantumChannel k_channel = random_sio(dim, n_k, rng());
    const QuantumChannel t_channel = build_t_channel(m_channel, k_channel);
    std::vector<QuantumChannel> n_channels;
    for (int i = 0; i < k_channel.size(); ++i) {
      n_channels.push_back(build_n_channel(m_channel, k_channel, t_channel, i));
    }
    double worst = 0.0;
    for (int s = 0; s < kLemmaInnerStates; ++s) {
      const PureState psi = random_pure(dim, rng);
      const Matrix projector = psi.projector();
      const Matrix rho = apply_matrix(m_channel, projector);
      for (int i = 0; i < k_channel.size(); ++i) {
        const Matrix t_branch =
            t_channel.kraus()[i] * projector * t_channel.kraus()[i].adjoint();
        const Matrix k_branch = k_channel.kraus()[i] * rho * k_channel.kraus()[i].adjoint();
        const double trace_dev =
            std::abs(t_branch.trace().real() - k_branch.trace().real());
        const double conv_dev = max_abs(apply_matrix(n_channels[i], t_branch) - k_branch);
        worst = std::max({worst, trace_dev, conv_dev});
      }
    }
    result.worst_violation = std::max(result.worst_violation, worst);
    if (worst > kIneqSlack) ++result.failures;
  }
  return result;
}

SuiteResult run_mono(int dim, int trials, std::uint64_t seed) {
  require_qubit("mono", dim);
  SuiteResult result{"mono", trials, 0, 0.0, seed, 0.0};
  const auto fs = builtins();
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const int rank = 1 + static_cast<int>(rng() % 2);
    const DensityMatrix sigma = random_density(2, rank, rng);
    const QuantumChannel ch = random_io(2, 2 + static_cast<int>(rng() % 3), rng());
    const DensityMatrix out = apply(ch, sigma);
    bool failed = false;
    for (const auto& f : fs) {
      const double excess = qubit_cm(out, f) - qubit_cm(sigma, f);
      result.worst_violation = std::max(result.worst_violation, excess);
      failed = failed || excess > kIneqSlack;
    }
    if (failed) ++result.failures;
  }
  return result;
}

SuiteResult run_strong(int dim, int trials, std::uint64_t seed) {
  require_qubit("strong", dim);
  SuiteResult result{"strong", trials, 0, 0.0, seed, 0.0};
  const auto fs = builtins();
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const int rank = 1 + static_cast<int>(rng() % 2);
    const DensityMatrix sigma = random_density(2, rank, rng);
    const QuantumChannel ch = random_sio(2, 2 + static_cast<int>(rng() % 3), rng());
    const auto outcomes = instrument(ch, sigma);
    bool failed = false;
    for (const auto& f : fs) {
      double average = 0.0;
      for (const auto& outcome : outcomes) {
        average += outcome.probability * qubit_cm(outcome.state, f);
      }
      const double excess = average - qubit_cm(sigma, f);
      result.worst_violation = std::max(result.worst_violation, excess);
      failed = failed || excess > kIneqSlack;
    }
    if (failed) ++result.failures;
  }
  return result;
}

SuiteResult run_convex(int dim, int trials, std::uint64_t seed) {
  require_qubit("convex", dim);
  SuiteResult result{"convex", trials, 0, 0.0, seed, 0.0};
  const auto fs = builtins();
  for (const auto& f : fs) {
    double worst = 0.0;
    if (!qubit_convexity_probe(f, 501, kIneqSlack, &worst)) ++result.failures;
    result.worst_violation = std::max(result.worst_violation, worst);
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const int parts = 2 + static_cast<int>(rng() % 2);
    const RealVector weights = random_prob_vector(parts, rng);
    std::vector<DensityMatrix> sigmas;
    Matrix mix = Matrix::Zero(2, 2);
    for (int j = 0; j < parts; ++j) {
      sigmas.push_back(random_density(2, 2, rng));
      mix += weights(j) * sigmas.back().matrix();
    }
    const DensityMatrix mixed = validate_density(mix);
    bool failed = false;
    for (const auto& f : fs) {
      double average = 0.0;
      for (int j = 0; j < parts; ++j) average += weights(j) * qubit_cm(sigmas[j], f);
      const double excess = qubit_cm(mixed, f) - average;
      result.worst_violation = std::max(result.worst_violation, excess);
      failed = failed || excess > kIneqSlack;
    }
    if (failed) ++result.failures;
  }
  return result;
}

SuiteResult run_max(int dim, int trials, std::uint64_t seed) {
  require_qubit("max", dim);
  SuiteResult result{"max", trials, 0, 0.0, seed, 0.0};
  const auto fs = builtins();
  const DensityMatrix mcs = validate_density(mcs_state(2).projector());
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    const DensityMatrix sigma = random_density(2, 2, rng);
    const double b_abs = std::abs(sigma(0, 1));
    if (b_abs >= 0.5 - kIneqSlack) continue;  // within MCS tolerance band
    bool failed = false;
    for (const auto& f : fs) {
      const double gap = qubit_cm(sigma, f) - qubit_cm(mcs, f);
      result.worst_violation = std::max(result.worst_violation, gap);
      failed = failed || gap >= 0.0;
    }
    if (failed) ++result.failures;
  }
  return result;
}

SuiteResult run_probe(int dim, int trials, std::uint64_t seed) {
  SuiteResult result{"probe", trials, 0, 0.0, seed, 0.0};
  const auto fs = builtins();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const ProbeReport report = probe_functional(fs[i], dim, trials, derive_seed(seed, i));
    result.failures += report.total();
    result.worst_violation = std::max(result.worst_violation, report.worst_violation);
  }
  return result;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"mono",  "strong",  "convex", "max",
                                                 "lemma3", "prep",   "dephase", "probe"};
  return names;
}

SuiteResult run_suite(const std::string& name, int dim, int trials, std::uint64_t seed) {
  if (dim < 2) throw UnsupportedCombination("suites need --dim >= 2");
  if (trials < 1) throw UnsupportedCombination("suites need --trials >= 1");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  if (name == "prep") {
    result = run_prep(dim, trials, seed);
  } else if (name == "dephase") {
    result = run_dephase(dim, trials, seed);
  } else if (name == "lemma3") {
    result = run_lemma3(dim, trials, seed);
  } else if (name == "mono") {
    result = run_mono(dim, trials, seed);
  } else if (name == "strong") {
    result = run_strong(dim, trials, seed);
  } else if (name == "convex") {
    result = run_convex(dim, trials, seed);
  } else if (name == "max") {
    result = run_max(dim, trials, seed);
  } else if (name == "probe") {
    result = run_probe(dim, trials, seed);
  } else {
    throw ParseError("unknown suite '" + name + "'");
  }
  const auto stop = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

}  // namespace coherence

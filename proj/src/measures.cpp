#include "coherence/measures.hpp"

#include <algorithm>
#include <cmath>

#include "coherence/errors.hpp"
#include "coherence/random.hpp"

namespace coherence {

namespace {
constexpr double kProbeSlack = 1e-9;
}

double eval_geometric(const CoherenceVector& mu) { return 1.0 - mu.probs().maxCoeff(); }

double eval_relative_entropy(const CoherenceVector& mu) {
  double h = 0.0;
  for (int i = 0; i < mu.dim(); ++i) {
    const double p = mu[i];
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double eval_l1(const CoherenceVector& mu) {
  double s = 0.0;
  for (int i = 0; i < mu.dim(); ++i) s += std::sqrt(std::max(mu[i], 0.0));
  return s * s - 1.0;
}

PureCoherenceFunctional geometric_functional() {
  return {PureCoherenceFunctional::Kind::Geometric, "geometric", eval_geometric};
}

PureCoherenceFunctional relative_entropy_functional() {
  return {PureCoherenceFunctional::Kind::RelativeEntropy, "relent", eval_relative_entropy};
}

PureCoherenceFunctional l1_functional() {
  return {PureCoherenceFunctional::Kind::L1, "l1", eval_l1};
}

PureCoherenceFunctional functional_by_name(const std::string& name) {
  if (name == "geometric") return geometric_functional();
  if (name == "relent") return relative_entropy_functional();
  if (name == "l1") return l1_functional();
  throw ParseError("unknown measure '" + name + "' (expected geometric|relent|l1)");
}

PureCoherenceFunctional custom_functional(std::string name,
                                          std::function<double(const CoherenceVector&)> eval) {
  return {PureCoherenceFunctional::Kind::Custom, std::move(name), std::move(eval)};
}

ProbeReport probe_functional(const PureCoherenceFunctional& f, int dim, int trials,
                             std::uint64_t seed) {
  ProbeReport report;
  report.trials = trials;
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto as_vector = [](RealVector p) {
    return detail::make_coherence_vector_unchecked(std::move(p), false);
  };

  RealVector uniform = RealVector::Constant(dim, 1.0 / dim);
  const double f_uniform = f.eval(as_vector(uniform));

  std::vector<int> order(dim);
  for (int t = 0; t < trials; ++t) {
    const RealVector mu = random_prob_vector(dim, rng);
    const double f_mu = f.eval(as_vector(mu));

    // Symmetry under a random permutation.
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    RealVector permuted(dim);
    for (int i = 0; i < dim; ++i) permuted(i) = mu(order[i]);
    const double sym_dev = std::abs(f.eval(as_vector(permuted)) - f_mu);
    if (sym_dev > kProbeSlack) ++report.symmetry_violations;
    report.worst_violation = std::max(report.worst_violation, sym_dev);

    // Concavity along a random chord.
    const RealVector nu = random_prob_vector(dim, rng);
    const double lam = unit(rng);
    const RealVector mid = lam * mu + (1.0 - lam) * nu;
    const double chord = lam * f_mu + (1.0 - lam) * f.eval(as_vector(nu));
    const double conc_dev = chord - f.eval(as_vector(mid));
    if (conc_dev > kProbeSlack) ++report.concavity_violations;
    report.worst_violation = std::max(report.worst_violation, conc_dev);

    // Endpoints: zero on (permuted) basis vectors, maximal at uniform.
    RealVector basis = RealVector::Zero(dim);
    basis(order[0]) = 1.0;
    const double zero_dev = std::abs(f.eval(as_vector(basis)));
    const double max_dev = f_mu - f_uniform;
    if (zero_dev > kProbeSlack || max_dev > kProbeSlack) ++report.endpoint_violations;
    report.worst_violation = std::max({report.worst_violation, zero_dev, max_dev});
  }
  return report;
}

}  // namespace coherence

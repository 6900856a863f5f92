#include "coherence/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

#include "coherence/errors.hpp"
#include "coherence/random.hpp"

namespace coherence {

namespace {

constexpr double kRankEps = 1e-10;    // eigenvalue truncation for rank
constexpr double kWeightEps = 1e-14;  // ensemble members below this are dropped

struct EigenBasis {
  int dim = 0;
  int rank = 0;
  Matrix scaled_vectors;  // dim x rank, columns sqrt(lambda_a) |e_a>
};

EigenBasis eigen_basis(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()));
  const RealVector eigs = solver.eigenvalues();
  EigenBasis basis;
  basis.dim = static_cast<int>(rho.rows());
  for (int a = 0; a < basis.dim; ++a) {
    if (eigs(a) > kRankEps) ++basis.rank;
  }
  basis.scaled_vectors.resize(basis.dim, basis.rank);
  int col = 0;
  for (int a = 0; a < basis.dim; ++a) {
    if (eigs(a) > kRankEps) {
      basis.scaled_vectors.col(col++) = std::sqrt(eigs(a)) * solver.eigenvectors().col(a);
    }
  }
  return basis;
}

// f on a plain probability array, bypassing CoherenceVector for the
// built-ins; the custom path pays for the wrapper.
double eval_probs(const PureCoherenceFunctional& f, const double* p, int n) {
  switch (f.kind) {
    case PureCoherenceFunctional::Kind::Geometric: {
      double max = 0.0;
      for (int i = 0; i < n; ++i) max = std::max(max, p[i]);
      return 1.0 - max;
    }
    case PureCoherenceFunctional::Kind::RelativeEntropy: {
      double h = 0.0;
      for (int i = 0; i < n; ++i) {
        if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
      }
      return h;
    }
    case PureCoherenceFunctional::Kind::L1: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::sqrt(std::max(p[i], 0.0));
      return s * s - 1.0;
    }
    case PureCoherenceFunctional::Kind::Custom: {
      RealVector v(n);
      for (int i = 0; i < n; ++i) v(i) = p[i];
      return f.eval(detail::make_coherence_vector_unchecked(std::move(v), false));
    }
  }
  return 0.0;
}

struct ObjectiveValues {
  double cm;
  double cf;
};

// Scores one decomposition V (size x rank): cm = f(sum of sorted member
// vectors), cf = sum of weights times f of each normalized member.
class DecompositionObjective {
 public:
  DecompositionObjective(const EigenBasis& basis, const PureCoherenceFunctional& f, int size)
      : basis_(basis), f_(f), states_(basis.dim, size), member_(basis.dim),
        normalized_(basis.dim), aggregate_(basis.dim) {}

  ObjectiveValues eval(const Matrix& isometry) {
    const int dim = basis_.dim;
    const int size = static_cast<int>(isometry.rows());
    states_.noalias() = basis_.scaled_vectors * isometry.transpose();
    aggregate_.setZero();
    double cf = 0.0;
    for (int i = 0; i < size; ++i) {
      double weight = 0.0;
      for (int m = 0; m < dim; ++m) {
        member_(m) = std::norm(states_(m, i));
        weight += member_(m);
      }
      if (weight <= kWeightEps) continue;
      std::sort(member_.data(), member_.data() + dim, std::greater<double>());
      aggregate_ += member_;
      normalized_ = member_ / weight;
      cf += weight * eval_probs(f_, normalized_.data(), dim);
    }
    return {eval_probs(f_, aggregate_.data(), dim), cf};
  }

 private:
  const EigenBasis& basis_;
  const PureCoherenceFunctional& f_;
  Matrix states_;
  RealVector member_;
  RealVector normalized_;
  RealVector aggregate_;
};

// Isometry parametrization: a chain of complex Givens rotations over all row
// pairs applied to [I_r; 0], followed by per-column phases. Covers every
// size x rank isometry up to member-global phases.
struct GivensChain {
  int size;
  int rank;

  int pair_count() const { return size * (size - 1) / 2; }
  int param_count() const { return 2 * pair_count() + rank; }

  void isometry(const std::vector<double>& x, Matrix& v) const {
    v.setZero();
    v.topLeftCorner(rank, rank).setIdentity();
    int t = 0;
    for (int q = 1; q < size; ++q) {
      for (int p = 0; p < q; ++p, ++t) {
        const double c = std::cos(x[2 * t]);
        const double s = std::sin(x[2 * t]);
        const Complex e = std::polar(1.0, x[2 * t + 1]);
        for (int col = 0; col < rank; ++col) {
          const Complex vp = v(p, col);
          const Complex vq = v(q, col);
          v(p, col) = c * vp - s * e * vq;
          v(q, col) = s * std::conj(e) * vp + c * vq;
        }
      }
    }
    const int phase_base = 2 * pair_count();
    for (int col = 0; col < rank; ++col) {
      v.col(col) *= std::polar(1.0, x[phase_base + col]);
    }
  }
};

enum class Objective { Cm, Cf };

struct Tracker {
  double value = std::numeric_limits<double>::infinity();
  Matrix isometry;
  int size = 0;
  int owner_restart = -1;
  bool converged = false;
};

// Randomized single-coordinate descent with a shrinking step. A restart is
// converged once the best value has not improved by improve_tol for
// stall_iters consecutive proposals.
bool descend(const GivensChain& chain, DecompositionObjective& objective, Objective mode,
             std::vector<double>& x, Matrix& v, Rng& rng, const SolveOptions& opts,
             int restart_id, Tracker& cm, Tracker& cf) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coord(0, chain.param_count() - 1);

  const auto score = [&](const ObjectiveValues& values) {
    if (values.cm < cm.value) {
      cm.value = values.cm;
      cm.isometry = v;
      cm.size = chain.size;
      cm.owner_restart = restart_id;
    }
    if (values.cf < cf.value) {
      cf.value = values.cf;
      cf.isometry = v;
      cf.size = chain.size;
      cf.owner_restart = restart_id;
    }
    return mode == Objective::Cm ? values.cm : values.cf;
  };

  chain.isometry(x, v);
  double best = score(objective.eval(v));
  double step = 0.5;
  int stall = 0;
  int rejects = 0;
  for (int iter = 0; iter < opts.max_iters && stall < opts.stall_iters; ++iter) {
    const int j = coord(rng);
    const double old = x[j];
    x[j] = old + step * gauss(rng);
    chain.isometry(x, v);
    const double value = score(objective.eval(v));
    if (value < best - opts.improve_tol) {
      best = value;
      stall = 0;
      rejects = 0;
    } else {
      if (value < best) {
        best = value;
      } else {
        x[j] = old;
      }
      ++stall;
      if (++rejects >= 25) {
        step = std::max(0.5 * step, 1e-7);
        rejects = 0;
      }
    }
  }
  return stall >= opts.stall_iters;
}

SolveReport report_from_tracker(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                                const EigenBasis& basis, const Tracker& tracker,
                                Objective mode, int restarts_used, std::string method) {
  DecompositionParam param{basis.rank, tracker.size, tracker.isometry};
  Ensemble ensemble = decomposition_from_isometry(rho, param);
  CoherenceVector mu = aggregate_vector(ensemble);
  double value = 0.0;
  if (mode == Objective::Cm) {
    value = f.eval(mu);
  } else {
    for (const auto& entry : ensemble.entries()) {
      value += entry.weight * f.eval(sort_desc(coherence_vector(entry.state)));
    }
  }
  return SolveReport{value,         std::move(ensemble),  std::move(mu),
                     restarts_used, tracker.converged,    std::move(method)};
}

SolvePair incoherent_pair(const DensityMatrix& rho, const PureCoherenceFunctional& f) {
  std::vector<EnsembleEntry> entries;
  double total = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    const double w = rho(i, i).real();
    if (w > kWeightEps) total += w;
  }
  for (int i = 0; i < rho.dim(); ++i) {
    const double w = rho(i, i).real();
    if (w <= kWeightEps) continue;
    Vector basis = Vector::Zero(rho.dim());
    basis(i) = 1.0;
    entries.push_back({w / total, validate_pure(basis)});
  }
  Ensemble ensemble = Ensemble::from_entries(std::move(entries));
  CoherenceVector mu = aggregate_vector(ensemble);
  const double cm_value = f.eval(mu);
  double cf_value = 0.0;
  for (const auto& entry : ensemble.entries()) {
    cf_value += entry.weight * f.eval(sort_desc(coherence_vector(entry.state)));
  }
  SolveReport cm{cm_value, ensemble, mu, 0, true, "optimize"};
  SolveReport cf{cf_value, ensemble, mu, 0, true, "roof"};
  return {std::move(cm), std::move(cf)};
}

}  // namespace

Ensemble decomposition_from_isometry(const DensityMatrix& rho, const DecompositionParam& param) {
  const EigenBasis basis = eigen_basis(rho.matrix());
  if (param.rank != basis.rank) throw RankMismatch(basis.rank, param.rank);
  if (param.isometry.rows() != param.size || param.isometry.cols() != param.rank ||
      param.size < param.rank) {
    throw DimensionMismatch("isometry must be size x rank with size >= rank");
  }
  if (param.size > rho.dim() * rho.dim()) {
    throw DimensionMismatch("ensemble size exceeds dim^2 cap");
  }
  const double iso_dev = (param.isometry.adjoint() * param.isometry -
                          Matrix::Identity(param.rank, param.rank))
                             .cwiseAbs()
                             .maxCoeff();
  if (iso_dev > kTolState) throw InvalidIsometry(iso_dev);

  const Matrix states = basis.scaled_vectors * param.isometry.transpose();
  std::vector<EnsembleEntry> entries;
  double total = 0.0;
  for (int i = 0; i < param.size; ++i) {
    const double weight = states.col(i).squaredNorm();
    if (weight > kWeightEps) total += weight;
  }
  for (int i = 0; i < param.size; ++i) {
    const double weight = states.col(i).squaredNorm();
    if (weight <= kWeightEps) continue;
    entries.push_back({weight / total, validate_pure(states.col(i) / std::sqrt(weight))});
  }
  return Ensemble::from_entries(std::move(entries));
}

SolvePair estimate_pair(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts) {
  const int dim = rho.dim();
  if (dim > kDimMax) throw DimensionTooLarge(dim, kDimMax);

  if (f.kind == PureCoherenceFunctional::Kind::Custom) {
    const ProbeReport probe = probe_functional(f, dim, 200, derive_seed(opts.seed, 0xC0FFEE));
    if (probe.total() > 0) {
      std::cerr << "warning: functional '" << f.name << "' violated "
                << probe.total() << " sampled symmetry/concavity/endpoint checks\n";
    }
  }

  if (is_incoherent_state(rho)) return incoherent_pair(rho, f);

  const EigenBasis basis = eigen_basis(rho.matrix());
  const int k_min = std::max(basis.rank, opts.k_min > 0 ? opts.k_min : basis.rank);
  const int k_max = std::clamp(opts.k_max > 0 ? opts.k_max : dim * dim, k_min, dim * dim);
  const int total_restarts = std::max(1, opts.restarts);
  const int k_count = k_max - k_min + 1;

  Tracker cm;
  Tracker cf;
  std::vector<char> restart_converged(total_restarts, 0);

  int restart_id = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const int local = total_restarts / k_count + (k - k_min < total_restarts % k_count ? 1 : 0);
    if (local == 0) continue;
    GivensChain chain{k, basis.rank};
    DecompositionObjective objective(basis, f, k);
    Matrix v(k, basis.rank);
    std::vector<double> x(chain.param_count());
    for (int j = 0; j < local; ++j, ++restart_id) {
      Rng rng = make_rng(derive_seed(opts.seed, (static_cast<std::uint64_t>(k) << 20) | j));
      if (j == 0) {
        std::fill(x.begin(), x.end(), 0.0);  // eigendecomposition start
      } else {
        std::uniform_real_distribution<double> angle(-M_PI, M_PI);
        for (auto& xi : x) xi = angle(rng);
      }
      const Objective mode = (restart_id % 2 == 0) ? Objective::Cm : Objective::Cf;
      const bool converged = descend(chain, objective, mode, x, v, rng, opts, restart_id, cm, cf);
      restart_converged[restart_id] = converged ? 1 : 0;
    }
  }
  cm.converged = cm.owner_restart >= 0 && restart_converged[cm.owner_restart] != 0;
  cf.converged = cf.owner_restart >= 0 && restart_converged[cf.owner_restart] != 0;

  SolveReport cm_report =
      report_from_tracker(rho, f, basis, cm, Objective::Cm, restart_id, "optimize");
  SolveReport cf_report =
      report_from_tracker(rho, f, basis, cf, Objective::Cf, restart_id, "roof");
  return {std::move(cm_report), std::move(cf_report)};
}

SolveReport cm_estimate(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts) {
  return estimate_pair(rho, f, opts).cm;
}

SolveReport cf_estimate(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts) {
  return estimate_pair(rho, f, opts).cf;
}

QubitDecomposition qubit_optimal_decomposition(const DensityMatrix& sigma) {
  if (sigma.dim() != 2) throw DimensionMismatch("qubit decomposition needs dim 2");
  const Complex b = sigma(0, 1);
  const double b_abs = std::abs(b);
  const double z = std::sqrt(std::max(0.0, 1.0 - 4.0 * b_abs * b_abs));

  const auto member = [&](double top) {
    Vector v(2);
    const double a0 = std::sqrt(std::max(top, 0.0));
    if (a0 > 1e-12) {
      v << Complex(a0, 0.0), std::conj(b) / a0;
    } else {
      v << Complex(0.0, 0.0), Complex(1.0, 0.0);
    }
    v /= v.norm();
    return validate_pure(v);
  };

  double lambda = 0.5;
  if (z > 1e-12) lambda = (2.0 * sigma(0, 0).real() - 1.0 + z) / (2.0 * z);
  // PSD of sigma puts lambda in [0, 1]; anything else means validation broke.
  if (lambda < -kTolState || lambda > 1.0 + kTolState) {
    throw CoherenceError("qubit decomposition weight " + std::to_string(lambda) +
                         " outside [0, 1]");
  }
  lambda = std::clamp(lambda, 0.0, 1.0);
  return {lambda, member(0.5 * (1.0 + z)), member(0.5 * (1.0 - z))};
}

double qubit_cm(const DensityMatrix& sigma, const PureCoherenceFunctional& f) {
  if (sigma.dim() != 2) throw DimensionMismatch("qubit closed form needs dim 2");
  const double b_abs = std::abs(sigma(0, 1));
  return qubit_b_profile(f, b_abs);
}

double qubit_b_profile(const PureCoherenceFunctional& f, double b_abs) {
  const double z = std::sqrt(std::max(0.0, 1.0 - 4.0 * b_abs * b_abs));
  RealVector mu(2);
  mu << 0.5 * (1.0 + z), 0.5 * (1.0 - z);
  return f.eval(detail::make_coherence_vector_unchecked(std::move(mu), true));
}

bool qubit_convexity_probe(const PureCoherenceFunctional& f, int grid_points, double slack,
                           double* worst) {
  const int n = std::max(grid_points, 3);
  const double h = 0.5 / (n - 1);
  double worst_deficit = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double second = qubit_b_profile(f, (i - 1) * h) + qubit_b_profile(f, (i + 1) * h) -
                          2.0 * qubit_b_profile(f, i * h);
    worst_deficit = std::max(worst_deficit, -second);
  }
  if (worst != nullptr) *worst = worst_deficit;
  return worst_deficit <= slack;
}

SolveReport cm_geometric(const DensityMatrix& rho, const SolveOptions& opts) {
  if (rho.dim() != 2) return cf_estimate(rho, geometric_functional(), opts);

  const QubitDecomposition decomposition = qubit_optimal_decomposition(rho);
  std::vector<EnsembleEntry> entries;
  if (decomposition.lambda > kWeightEps) {
    entries.push_back({decomposition.lambda, decomposition.plus});
  }
  if (1.0 - decomposition.lambda > kWeightEps) {
    entries.push_back({1.0 - decomposition.lambda, decomposition.minus});
  }
  Ensemble ensemble = Ensemble::from_entries(std::move(entries));
  CoherenceVector mu = aggregate_vector(ensemble);
  return SolveReport{eval_geometric(mu), std::move(ensemble), std::move(mu), 0, true,
                     "analytic"};
}

double brute_force_cm(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                      const GridSpec& grid) {
  const int dim = rho.dim();
  if (dim > 3) throw DimensionTooLarge(dim, 3);

  Matrix working = rho.matrix();
  if (dim == 2) {
    // Diagonal-unitary equivalence: replace the off-diagonal by its modulus.
    // Decompositions map one to one and coherence vectors are unchanged.
    working(0, 1) = std::abs(working(0, 1));
    working(1, 0) = working(0, 1);
  }
  const EigenBasis basis = eigen_basis(working);
  double best = std::numeric_limits<double>::infinity();

  const auto consider = [&](DecompositionObjective& objective, const Matrix& v) {
    best = std::min(best, objective.eval(v).cm);
  };

  {
    // Eigendecomposition candidate.
    DecompositionObjective objective(basis, f, basis.rank);
    consider(objective, Matrix::Identity(basis.rank, basis.rank));
  }

  if (dim == 2 && basis.rank == 2) {
    // Exhaustive rotation sweep: for a real symmetric qubit every size-2
    // decomposition is a row rotation of the eigendecomposition.
    DecompositionObjective objective(basis, f, 2);
    Matrix v(2, 2);
    for (int t = 0; t < grid.angles; ++t) {
      const double theta = M_PI * t / grid.angles;
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      v << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
      consider(objective, v);
    }
  }

  // Dense random isometry sampling over the remaining ensemble sizes.
  Rng rng = make_rng(derive_seed(grid.seed, 0x9A95));
  const int k_top = dim * dim > 9 ? 9 : dim * dim;
  for (int k = basis.rank; k <= k_top; ++k) {
    if (dim == 2 && k <= 2) continue;  // covered by the sweep above
    DecompositionObjective objective(basis, f, k);
    for (int s = 0; s < grid.samples; ++s) {
      consider(objective, random_isometry(k, basis.rank, rng));
    }
  }
  return best;
}

}  // namespace coherence

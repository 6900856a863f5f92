#include "coherence/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coherence/errors.hpp"
#include "coherence/random.hpp"

namespace coherence {

namespace {

constexpr double kAmplitudeEps = 1e-12;

void check_consistent(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw DimensionMismatch("channel needs at least one Kraus operator");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows < 1 || cols < 1) throw DimensionMismatch("Kraus operators must be nonempty");
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionMismatch("Kraus operators differ in shape");
    }
  }
}

double cptp_deficit(const std::vector<Matrix>& kraus) {
  const auto cols = kraus.front().cols();
  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
}

bool at_most_one_per_column(const Matrix& k, double tol) {
  for (int c = 0; c < k.cols(); ++c) {
    int nonzero = 0;
    for (int r = 0; r < k.rows(); ++r) {
      if (std::abs(k(r, c)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

bool at_most_one_per_row(const Matrix& k, double tol) {
  for (int r = 0; r < k.rows(); ++r) {
    int nonzero = 0;
    for (int c = 0; c < k.cols(); ++c) {
      if (std::abs(k(r, c)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& m) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * m * k.adjoint();
  return out;
}

bool is_mio(const std::vector<Matrix>& kraus, double tol) {
  const int din = static_cast<int>(kraus.front().cols());
  const int dout = static_cast<int>(kraus.front().rows());
  for (int i = 0; i < din; ++i) {
    Matrix unit = Matrix::Zero(din, din);
    unit(i, i) = 1.0;
    const Matrix out = apply_kraus(kraus, unit);
    for (int r = 0; r < dout; ++r) {
      for (int c = 0; c < dout; ++c) {
        if (r != c && std::abs(out(r, c)) > tol) return false;
      }
    }
  }
  return true;
}

// Dephasing covariance checked on the matrix units, which span all inputs.
bool is_dio(const std::vector<Matrix>& kraus, double tol) {
  const int din = static_cast<int>(kraus.front().cols());
  for (int m = 0; m < din; ++m) {
    for (int n = 0; n < din; ++n) {
      Matrix unit = Matrix::Zero(din, din);
      unit(m, n) = 1.0;
      const Matrix lhs = dephase_matrix(apply_kraus(kraus, unit));
      const Matrix rhs = apply_kraus(kraus, dephase_matrix(unit));
      if ((lhs - rhs).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

ClassSet structural_and_numeric_tags(const std::vector<Matrix>& kraus, double tol,
                                     bool cptp_ok) {
  ClassSet classes;
  if (cptp_ok) classes.insert(ChannelClass::CPTP);
  bool io = true;
  bool sio = true;
  for (const auto& k : kraus) {
    const bool col_ok = at_most_one_per_column(k, tol);
    io = io && col_ok;
    sio = sio && col_ok && at_most_one_per_row(k, tol);
  }
  if (io) classes.insert(ChannelClass::IO);
  if (sio) classes.insert(ChannelClass::SIO);
  if (is_mio(kraus, tol)) classes.insert(ChannelClass::MIO);
  if (is_dio(kraus, tol)) classes.insert(ChannelClass::DIO);
  return classes;
}

}  // namespace

std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::CPTP: return "CPTP";
    case ChannelClass::IO: return "IO";
    case ChannelClass::SIO: return "SIO";
    case ChannelClass::MIO: return "MIO";
    case ChannelClass::DIO: return "DIO";
  }
  return "?";
}

QuantumChannel classify(const std::vector<Matrix>& kraus, double tol) {
  check_consistent(kraus);
  const double deficit = cptp_deficit(kraus);
  if (deficit > tol) throw NotCPTP(deficit);
  return QuantumChannel(kraus, structural_and_numeric_tags(kraus, tol, true));
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (ch.dim_in() != rho.dim()) {
    throw DimensionMismatch("channel dim_in " + std::to_string(ch.dim_in()) + " vs state dim " +
                            std::to_string(rho.dim()));
  }
  return validate_density(apply_kraus(ch.kraus(), rho.matrix()));
}

Matrix apply_matrix(const QuantumChannel& ch, const Matrix& m) {
  if (ch.dim_in() != m.rows() || ch.dim_in() != m.cols()) {
    throw DimensionMismatch("channel dim_in " + std::to_string(ch.dim_in()) +
                            " vs matrix shape");
  }
  return apply_kraus(ch.kraus(), m);
}

std::vector<InstrumentOutcome> instrument(const QuantumChannel& ch, const DensityMatrix& rho,
                                          double tol) {
  if (ch.dim_in() != rho.dim()) {
    throw DimensionMismatch("channel dim_in " + std::to_string(ch.dim_in()) + " vs state dim " +
                            std::to_string(rho.dim()));
  }
  std::vector<InstrumentOutcome> outcomes;
  for (int n = 0; n < ch.size(); ++n) {
    const Matrix branch = ch.kraus()[n] * rho.matrix() * ch.kraus()[n].adjoint();
    const double p = branch.trace().real();
    if (p > tol) outcomes.push_back({p, validate_density(branch / p), n});
  }
  return outcomes;
}

QuantumChannel build_preparation_channel(const RealVector& sigma_diag) {
  const int dim = static_cast<int>(sigma_diag.size());
  if (dim < 1) throw DimensionMismatch("target diagonal must be nonempty");
  double sum = 0.0;
  for (int j = 0; j < dim; ++j) {
    if (sigma_diag(j) < -kTolState) {
      throw NotProbabilityVector("entry " + std::to_string(j) + " is negative");
    }
    sum += sigma_diag(j);
  }
  if (std::abs(sum - 1.0) > kTolState) {
    throw NotProbabilityVector("entries sum to " + std::to_string(sum));
  }
  std::vector<Matrix> kraus;
  kraus.reserve(dim);
  for (int j = 0; j < dim; ++j) {
    const double amp = std::sqrt(std::max(sigma_diag(j), 0.0));
    Matrix w = Matrix::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) w((g + j) % dim, g) = amp;
    kraus.push_back(std::move(w));
  }
  return classify(kraus);
}

PureState canonical_pure_state(const DensityMatrix& rho) {
  Vector amps(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    amps(i) = Complex(std::sqrt(std::max(rho(i, i).real(), 0.0)), 0.0);
  }
  return validate_pure(amps);
}

QuantumChannel build_dephasing_channel(const DensityMatrix& rho, double tol) {
  const int dim = rho.dim();
  for (int i = 0; i < dim; ++i) {
    if (rho(i, i).real() <= kAmplitudeEps) throw SingularDiagonal(i, rho(i, i).real());
  }
  Matrix gamma(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      gamma(m, n) = rho(m, n) / std::sqrt(rho(m, m).real() * rho(n, n).real());
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (gamma + gamma.adjoint()));
  const RealVector eigs = solver.eigenvalues();
  if (eigs.minCoeff() < -tol) throw FactorizationFailure(eigs.minCoeff());

  // Gamma = sum_j lambda_j u_j u_j^dag, so the diagonal Kraus operators
  // D_j = sqrt(lambda_j) diag(u_j) recombine to Gamma entrywise.
  std::vector<Matrix> kraus;
  for (int j = 0; j < dim; ++j) {
    if (eigs(j) <= kAmplitudeEps) continue;
    const double scale = std::sqrt(eigs(j));
    Matrix d = Matrix::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) d(m, m) = scale * solver.eigenvectors()(m, j);
    kraus.push_back(std::move(d));
  }
  return classify(kraus, tol);
}

std::vector<SioKrausForm> sio_normal_form(const QuantumChannel& ch, double tol) {
  if (ch.dim_in() != ch.dim_out()) throw NotNormalForm("channel must be square");
  const int dim = ch.dim_in();
  std::vector<SioKrausForm> forms;
  forms.reserve(ch.size());
  for (int n = 0; n < ch.size(); ++n) {
    const Matrix& k = ch.kraus()[n];
    SioKrausForm form;
    form.perm.assign(dim, -1);
    form.amps = Vector::Zero(dim);
    std::vector<bool> row_used(dim, false);
    for (int c = 0; c < dim; ++c) {
      int row = -1;
      for (int r = 0; r < dim; ++r) {
        if (std::abs(k(r, c)) > tol) {
          if (row >= 0) {
            throw NotNormalForm("Kraus " + std::to_string(n) + " column " + std::to_string(c) +
                                " has several nonzeros");
          }
          row = r;
        }
      }
      if (row >= 0) {
        if (row_used[row]) {
          throw NotNormalForm("Kraus " + std::to_string(n) + " row " + std::to_string(row) +
                              " has several nonzeros");
        }
        row_used[row] = true;
        form.perm[c] = row;
        form.amps(c) = k(row, c);
      }
    }
    // Complete the partial injection: zero-amplitude columns get the unused
    // rows in ascending order.
    int next_free = 0;
    for (int c = 0; c < dim; ++c) {
      if (form.perm[c] >= 0) continue;
      while (row_used[next_free]) ++next_free;
      row_used[next_free] = true;
      form.perm[c] = next_free;
    }
    forms.push_back(std::move(form));
  }
  return forms;
}

QuantumChannel build_t_channel(const QuantumChannel& m_channel, const QuantumChannel& k_channel,
                               double tol) {
  if (m_channel.dim_in() != k_channel.dim_in()) {
    throw DimensionMismatch("channels act on different spaces");
  }
  const auto m_forms = sio_normal_form(m_channel, tol);
  const auto k_forms = sio_normal_form(k_channel, tol);
  const int dim = m_channel.dim_in();

  std::vector<Matrix> kraus;
  kraus.reserve(k_forms.size());
  for (const auto& kf : k_forms) {
    Matrix t = Matrix::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) {
      double d2 = 0.0;
      for (const auto& mf : m_forms) {
        d2 += std::norm(mf.amps(g)) * std::norm(kf.amps(mf.perm[g]));
      }
      t(g, g) = std::sqrt(d2);
    }
    kraus.push_back(std::move(t));
  }
  return classify(kraus, tol);
}

QuantumChannel build_n_channel(const QuantumChannel& m_channel, const QuantumChannel& k_channel,
                               const QuantumChannel& t_channel, int outcome, double tol) {
  if (m_channel.dim_in() != k_channel.dim_in() || m_channel.dim_in() != t_channel.dim_in()) {
    throw DimensionMismatch("channels act on different spaces");
  }
  if (outcome < 0 || outcome >= t_channel.size() || outcome >= k_channel.size()) {
    throw DimensionMismatch("outcome index " + std::to_string(outcome) + " out of range");
  }
  const auto m_forms = sio_normal_form(m_channel, tol);
  const auto k_forms = sio_normal_form(k_channel, tol);
  const int dim = m_channel.dim_in();
  const SioKrausForm& kf = k_forms[outcome];
  const Matrix& t_i = t_channel.kraus()[outcome];

  std::vector<bool> retained(dim, true);
  for (int g = 0; g < dim; ++g) {
    if (std::abs(t_i(g, g)) > kAmplitudeEps) continue;
    retained[g] = false;
    for (const auto& mf : m_forms) {
      if (std::abs(mf.amps(g)) * std::abs(kf.amps(mf.perm[g])) > kAmplitudeEps) {
        throw DivisionByZeroAmplitude(g);
      }
    }
  }

  std::vector<Matrix> kraus;
  kraus.reserve(m_forms.size());
  for (const auto& mf : m_forms) {
    Matrix n = Matrix::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) {
      if (!retained[g]) continue;
      const Complex numer = mf.amps(g) * kf.amps(mf.perm[g]);
      n(kf.perm[mf.perm[g]], g) = numer / t_i(g, g);
    }
    kraus.push_back(std::move(n));
  }
  const bool full_support =
      std::all_of(retained.begin(), retained.end(), [](bool b) { return b; }) &&
      cptp_deficit(kraus) <= tol;
  return QuantumChannel(kraus, structural_and_numeric_tags(kraus, tol, full_support));
}

QuantumChannel random_sio(int dim, int n_kraus, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Per-column unit amplitude vectors across the Kraus index.
  Matrix amps(dim, n_kraus);
  for (int g = 0; g < dim; ++g) {
    double norm2 = 0.0;
    for (int j = 0; j < n_kraus; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      amps(g, j) = Complex(re, im);
      norm2 += std::norm(amps(g, j));
    }
    amps.row(g) /= std::sqrt(norm2);
  }
  std::vector<Matrix> kraus;
  std::vector<int> perm(dim);
  for (int j = 0; j < n_kraus; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix k = Matrix::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) k(perm[g], g) = amps(g, j);
    kraus.push_back(std::move(k));
  }
  return classify(kraus);
}

QuantumChannel random_io(int dim, int n_kraus, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick_row(0, dim - 1);

  Matrix amps(dim, n_kraus);
  for (int g = 0; g < dim; ++g) {
    double norm2 = 0.0;
    for (int j = 0; j < n_kraus; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      amps(g, j) = Complex(re, im);
      norm2 += std::norm(amps(g, j));
    }
    amps.row(g) /= std::sqrt(norm2);
  }
  std::vector<Matrix> kraus;
  for (int j = 0; j < n_kraus; ++j) {
    Matrix k = Matrix::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) k(pick_row(rng), g) = amps(g, j);
    kraus.push_back(std::move(k));
  }
  return classify(kraus);
}

}  // namespace coherence

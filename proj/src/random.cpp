#include "coherence/random.hpp"

#include <cmath>

namespace coherence {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * (index + 1));
  return splitmix64(state);
}

Rng make_rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  return Rng(splitmix64(state));
}

PureState random_pure(int dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return validate_pure(v);
}

RealVector random_prob_vector(int dim, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector p(dim);
  for (int i = 0; i < dim; ++i) p(i) = -std::log1p(-unit(rng));
  p /= p.sum();
  return p;
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, rank);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < rank; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m);
}

Ensemble random_ensemble(int dim, int size, Rng& rng) {
  const RealVector weights = random_prob_vector(size, rng);
  std::vector<EnsembleEntry> entries;
  entries.reserve(size);
  for (int i = 0; i < size; ++i) entries.push_back({weights(i), random_pure(dim, rng)});
  return Ensemble::from_entries(std::move(entries));
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int c = 0; c < cols; ++c) {
    const Complex diag = r(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace coherence

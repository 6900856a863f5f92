#include <cmath>

#include "doctest.h"

#include "coherence/errors.hpp"
#include "coherence/random.hpp"
#include "helpers.hpp"

using namespace coherence;
using namespace coherence::testing;

TEST_CASE("coherence_vector squares moduli and drops phases") {
  const CoherenceVector mu = coherence_vector(mcs_state(2));
  CHECK(mu[0] == doctest::Approx(0.5));
  CHECK_FALSE(mu.sorted());

  Vector v(2);
  v << std::sqrt(0.9), std::sqrt(0.1);
  const CoherenceVector skew = coherence_vector(validate_pure(v));
  CHECK(skew[0] == doctest::Approx(0.9));
  CHECK(skew[1] == doctest::Approx(0.1));

  v << std::polar(std::sqrt(0.75), 1.3), std::sqrt(0.25);
  const CoherenceVector phased = coherence_vector(validate_pure(v));
  CHECK(phased[0] == doctest::Approx(0.75));
  CHECK(phased[1] == doctest::Approx(0.25));
}

TEST_CASE("sort_desc orders and flags") {
  const CoherenceVector sorted = sort_desc(probs2(0.1, 0.9));
  CHECK(sorted.sorted());
  CHECK(sorted[0] == doctest::Approx(0.9));

  const CoherenceVector mid = sort_desc(probs3(0.2, 0.3, 0.5));
  CHECK(mid[0] == doctest::Approx(0.5));
  CHECK(mid[2] == doctest::Approx(0.2));

  const CoherenceVector ties = sort_desc(probs2(0.5, 0.5));
  CHECK(ties[0] == doctest::Approx(0.5));
}

TEST_CASE("majorizes prefix-sum dominance") {
  CHECK(majorizes(probs2(0.9, 0.1), probs2(0.5, 0.5)));
  CHECK(majorizes(probs3(0.6, 0.3, 0.1), probs3(0.5, 0.3, 0.2)));
  CHECK_FALSE(majorizes(probs2(0.5, 0.5), probs2(0.9, 0.1)));
}

TEST_CASE("majorizes zero-pads the shorter vector") {
  CHECK(majorizes(probs2(0.9, 0.1), probs3(0.9, 0.1, 0.0)));
  CHECK(majorizes(probs3(0.9, 0.1, 0.0), probs2(0.9, 0.1)));
}

TEST_CASE("majorizes is reflexive and transitive, with extremal vectors") {
  Rng rng = make_rng(5);
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    const auto a = CoherenceVector::from_probs(random_prob_vector(dim, rng));
    const auto b = CoherenceVector::from_probs(random_prob_vector(dim, rng));
    const auto c = CoherenceVector::from_probs(random_prob_vector(dim, rng));
    CHECK(majorizes(a, a));
    if (majorizes(a, b) && majorizes(b, c)) CHECK(majorizes(a, c));

    const auto uniform =
        CoherenceVector::from_probs(RealVector::Constant(dim, 1.0 / dim), true);
    RealVector top = RealVector::Zero(dim);
    top(0) = 1.0;
    const auto peak = CoherenceVector::from_probs(top, true);
    CHECK(majorizes(a, uniform));
    CHECK(majorizes(peak, a));
  }
}

TEST_CASE("aggregate_vector of mixed ensembles") {
  const Ensemble mix = Ensemble::from_entries({{0.5, mcs_state(2)}, {0.5, basis_state(2, 0)}});
  const CoherenceVector agg = aggregate_vector(mix);
  CHECK(agg[0] == doctest::Approx(0.75));
  CHECK(agg[1] == doctest::Approx(0.25));
  CHECK(agg.sorted());

  Vector v(2);
  v << std::sqrt(0.3), std::sqrt(0.7);
  const PureState psi = validate_pure(v);
  const Ensemble single = Ensemble::from_entries({{1.0, psi}});
  const CoherenceVector lone = aggregate_vector(single);
  CHECK(lone[0] == doctest::Approx(0.7));

  const Ensemble basis_pair =
      Ensemble::from_entries({{0.5, basis_state(2, 0)}, {0.5, basis_state(2, 1)}});
  const CoherenceVector flat = aggregate_vector(basis_pair);
  CHECK(flat[0] == doctest::Approx(1.0));
  CHECK(flat[1] == doctest::Approx(0.0));
}

TEST_CASE("pure_from_vector takes square roots in sorted order") {
  const PureState phi = pure_from_vector(probs2(0.75, 0.25));
  CHECK(phi[0].real() == doctest::Approx(std::sqrt(0.75)));
  CHECK(phi[1].real() == doctest::Approx(0.5));

  const PureState top = pure_from_vector(probs2(1.0, 0.0));
  CHECK(top[0] == Complex(1.0, 0.0));

  const PureState flat = pure_from_vector(probs2(0.5, 0.5));
  CHECK(flat[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  // Round trip: the coherence vector of the output is the sorted input.
  Rng rng = make_rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto mu = CoherenceVector::from_probs(random_prob_vector(4, rng));
    const auto back = coherence_vector(pure_from_vector(mu));
    CHECK((sort_desc(mu).probs() - sort_desc(back).probs()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("convertible_pure_to_ensemble matches the majorization criterion") {
  const Ensemble to_basis = Ensemble::from_entries({{1.0, basis_state(2, 0)}});
  CHECK(convertible_pure_to_ensemble(mcs_state(2), to_basis));

  Vector v(2);
  v << std::sqrt(0.9), std::sqrt(0.1);
  const Ensemble to_mcs = Ensemble::from_entries({{1.0, mcs_state(2)}});
  CHECK_FALSE(convertible_pure_to_ensemble(validate_pure(v), to_mcs));

  const Ensemble half = Ensemble::from_entries({{0.5, mcs_state(2)}, {0.5, basis_state(2, 0)}});
  CHECK(convertible_pure_to_ensemble(pure_from_vector(probs2(0.75, 0.25)), half));

  CHECK_THROWS_AS(convertible_pure_to_ensemble(mcs_state(3), half), DimensionMismatch);
}

TEST_CASE("aggregate majorizes mu exactly when the realizing state converts") {
  // dim-2 grid sweep of candidate targets against random ensembles
  Rng rng = make_rng(31);
  for (int t = 0; t < 20; ++t) {
    const Ensemble ensemble = random_ensemble(2, 1 + static_cast<int>(rng() % 3), rng);
    const CoherenceVector agg = aggregate_vector(ensemble);
    CHECK(majorizes(agg, agg));
    CHECK(convertible_pure_to_ensemble(pure_from_vector(agg), ensemble));
    for (int g = 0; g <= 50; ++g) {
      const double top = 0.5 + 0.5 * g / 50.0;
      const CoherenceVector mu = probs2(top, 1.0 - top);
      CHECK(convertible_pure_to_ensemble(pure_from_vector(mu), ensemble) ==
            majorizes(agg, mu));
    }
  }
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(Ensemble::from_entries({{0.5, mcs_state(2)}, {0.2, basis_state(2, 0)}}),
                  NotProbabilityVector);
  CHECK_THROWS_AS(Ensemble::from_entries({{0.5, mcs_state(2)}, {0.5, basis_state(3, 0)}}),
                  DimensionMismatch);

  const Ensemble ok = Ensemble::from_entries({{0.5, mcs_state(2)}, {0.5, basis_state(2, 0)}});
  Matrix expected(2, 2);
  expected << 0.75, 0.25, 0.25, 0.25;
  CHECK(ok.mixes_to(validate_density(expected), 1e-12));
  CHECK_FALSE(ok.mixes_to(validate_density(0.5 * Matrix::Identity(2, 2)), 1e-8));
}

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "coherence/errors.hpp"
#include "coherence/io.hpp"
#include "coherence/random.hpp"
#include "helpers.hpp"

using namespace coherence;
using namespace coherence::testing;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }

  void write(const std::string& contents) const {
    std::ofstream out(path);
    out << contents;
  }
};

}  // namespace

TEST_CASE("density file round trip") {
  TempFile file("coherence_test_density.json");
  const DensityMatrix rho = qubit_density(0.75, Complex(0.2, -0.1));
  write_density_file(file.path.string(), rho);
  const DensityMatrix back = read_density_file(file.path.string());
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("pure and ensemble file round trips") {
  TempFile pure_file("coherence_test_pure.json");
  Rng rng = make_rng(101);
  const PureState psi = random_pure(3, rng);
  write_pure_file(pure_file.path.string(), psi);
  const PureState psi_back = read_pure_file(pure_file.path.string());
  CHECK((psi_back.amplitudes() - psi.amplitudes()).norm() == 0.0);

  TempFile ensemble_file("coherence_test_ensemble.json");
  const Ensemble ensemble = random_ensemble(3, 3, rng);
  write_ensemble_file(ensemble_file.path.string(), ensemble);
  const Ensemble back = read_ensemble_file(ensemble_file.path.string());
  REQUIRE(back.size() == ensemble.size());
  CHECK(max_abs_diff(back.mixture(), ensemble.mixture()) == 0.0);
}

TEST_CASE("channel file round trip preserves Kraus operators and tags") {
  TempFile file("coherence_test_channel.json");
  const QuantumChannel ch = random_sio(3, 3, 77);
  write_channel_file(file.path.string(), ch);
  const QuantumChannel back = read_channel_file(file.path.string());
  REQUIRE(back.size() == ch.size());
  for (int n = 0; n < ch.size(); ++n) {
    CHECK(max_abs_diff(back.kraus()[n], ch.kraus()[n]) == 0.0);
  }
  CHECK(back.classes() == ch.classes());
}

TEST_CASE("readers reject malformed input") {
  TempFile file("coherence_test_bad.json");

  file.write("{\"dim\": 2}");
  CHECK_THROWS_AS(read_density_file(file.path.string()), ParseError);

  file.write("{\"dim\": 2, \"matrix\": [[[1,0],[0,0]],[[0,0]]]}");
  CHECK_THROWS_AS(read_density_file(file.path.string()), ParseError);

  file.write("not json at all");
  CHECK_THROWS_AS(read_density_file(file.path.string()), ParseError);

  CHECK_THROWS_AS(read_density_file("/nonexistent/coherence.json"), ParseError);
}

TEST_CASE("readers reject NaN and infinity") {
  TempFile file("coherence_test_nan.json");
  file.write("{\"dim\": 2, \"vector\": [[NaN,0],[0,0]]}");
  CHECK_THROWS_AS(read_pure_file(file.path.string()), ParseError);

  file.write("{\"dim\": 2, \"vector\": [[1e999,0],[0,0]]}");
  CHECK_THROWS_AS(read_pure_file(file.path.string()), ParseError);
}

TEST_CASE("invalid states fail validation on read") {
  TempFile file("coherence_test_invalid.json");
  file.write("{\"dim\": 2, \"matrix\": [[[1.1,0],[0,0]],[[0,0],[-0.1,0]]]}");
  CHECK_THROWS_AS(read_density_file(file.path.string()), NotPSD);
}

TEST_CASE("serialization is deterministic with 17 significant digits") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");

  const DensityMatrix rho = qubit_density(0.75, Complex(1.0 / 3.0, 0.0));
  const std::string a = to_json(rho);
  const std::string b = to_json(rho);
  CHECK(a == b);
  CHECK(a.find("0.33333333333333331") != std::string::npos);

  // Round trip through text is exact.
  TempFile file("coherence_test_exact.json");
  write_density_file(file.path.string(), rho);
  const DensityMatrix back = read_density_file(file.path.string());
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
}

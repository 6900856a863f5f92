#pragma once

#include <string>

#include "coherence/channels.hpp"
#include "coherence/solver.hpp"

namespace coherence {

// JSON file formats. Complex numbers are [re, im] pairs of doubles; readers
// reject NaN and infinities.
//   density:  {"dim": d, "matrix": [[[re,im],...],...]}
//   pure:     {"dim": d, "vector": [[re,im],...]}
//   ensemble: {"dim": d, "entries": [{"weight": w, "vector": [[re,im],...]},...]}
//   channel:  {"dim_in": d, "dim_out": d, "kraus": [[[[re,im],...],...],...]}

DensityMatrix read_density_file(const std::string& path, double tol = kTolState);
PureState read_pure_file(const std::string& path, double tol = kTolState);

/// Parses the density file format without physical validation; callers that
/// only need part of the matrix (e.g. the diagonal) validate downstream.
Matrix read_density_raw(const std::string& path);
Ensemble read_ensemble_file(const std::string& path, double tol = kTolMajor);
QuantumChannel read_channel_file(const std::string& path, double tol = kTolChan);

void write_density_file(const std::string& path, const DensityMatrix& rho);
void write_pure_file(const std::string& path, const PureState& psi);
void write_ensemble_file(const std::string& path, const Ensemble& ensemble);
void write_channel_file(const std::string& path, const QuantumChannel& ch);

/// Doubles rendered with 17 significant digits so identical inputs always
/// serialize to identical bytes.
std::string format_double(double x);

std::string to_json(const DensityMatrix& rho);
std::string to_json(const PureState& psi);
std::string to_json(const Ensemble& ensemble);
std::string to_json(const QuantumChannel& ch);
std::string to_json(const SolveReport& report);

}  // namespace coherence

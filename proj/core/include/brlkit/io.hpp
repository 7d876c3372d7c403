#pragma once

#include <string>
#include <vector>

#include "brlkit/hinf.hpp"
#include "brlkit/kyp.hpp"
#include "brlkit/operators.hpp"
#include "brlkit/similarity.hpp"
#include "brlkit/system.hpp"

namespace brlkit {

/**
 * Shared JSON system format: an object with integer fields n_state, n_in,
 * n_out and matrix fields A, B, C, D. A matrix is an array of rows stored
 * row-major; an entry is either a real number or a two-element array
 * [re, im]. Serialization always writes [re, im] pairs so round trips are
 * bit-for-bit.
 */
SystemRealization parse_system_string(const std::string& text);
SystemRealization parse_system_file(const std::string& path);

std::string to_json_string(const SystemRealization& sys, int indent = -1);
std::string to_json_string(const Matrix& matrix, int indent = -1);
std::string to_json_string(const TransferSample& sample, int indent = -1);
std::string to_json_string(const Trajectory& traj, int indent = -1);
std::string to_json_string(const OperatorTruncation& trunc, int indent = -1);
std::string to_json_string(const MinimalityReport& report, int indent = -1);
std::string to_json_string(const SimilarityMap& map, int indent = -1);
std::string to_json_string(const KypCertificate& cert, int indent = -1);
std::string to_json_string(const NormBound& bound, int indent = -1);

/// Accepts a bare matrix, {"H": matrix}, or a serialized certificate.
Matrix parse_hermitian_file(const std::string& path);

struct SimulationInput {
  bool has_x0 = false;
  Vector x0;
  std::vector<Vector> inputs;
};

/// {"inputs": [vector, ...]} with an optional "x0" vector.
SimulationInput parse_simulation_input_file(const std::string& path);

}  // namespace brlkit

#pragma once

#include <string>

#include "thermowit/state.hpp"

namespace thermowit {

// State/Hamiltonian JSON format:
//   { "dims": [d1, d2, ...], "re": [...], "im": [...] }
// row-major with the leftmost subsystem varying slowest; "re"/"im" have
// length (d1*d2*...)^2. Type invariants are applied on load.

struct MatrixRecord {
    Matrix matrix;
    Dims dims;
};

MatrixRecord parse_matrix_json(const std::string& text);
MatrixRecord load_matrix_json(const std::string& path);

DensityMatrix load_density_matrix(const std::string& path);
Hamiltonian load_hamiltonian(const std::string& path);

std::string matrix_to_json(const Matrix& m, const Dims& dims);

/// %.15g formatting; used for every numeric field in CSV/JSON output.
std::string fmt_g15(double v);

/// Write via a temp file in the same directory plus an atomic rename, so a
/// failed run leaves no partial output behind.
void atomic_write_file(const std::string& path, const std::string& content);

/// Provenance comment line carried by every CSV output.
std::string csv_provenance(const std::string& cmd, const std::string& canonical_params);

/// Accepts plain reals plus the literals "pi", "a*pi", "pi/b", "a*pi/b".
double parse_time_expr(const std::string& text);

}  // namespace thermowit

#pragma once

// Matrix serialization.
//
// Binary: two little-endian uint64 (rows, cols), then rows*cols pairs of
// little-endian doubles (re, im) in column-major order.
// Text: JSON array of rows, each entry a two-element array [re, im].

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "oplab/common.hpp"

namespace oplab {

void write_matrix_binary(std::ostream& out, const Matrix& m);
Matrix read_matrix_binary(std::istream& in);

void save_matrix_binary(const std::string& path, const Matrix& m);
Matrix load_matrix_binary(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);
/// Accepts [re, im] pairs or plain real numbers as entries.
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace oplab

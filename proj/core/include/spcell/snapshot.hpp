#pragma once

#include <filesystem>

#include "spcell/field.hpp"

namespace spcell {

/**
 * Field snapshot file, format "SPFLD1":
 *   bytes 0..5   magic "SPFLD1"
 *   int64        d
 *   int64 x 3    grid counts n1, n2, n3
 *   double x 9   period vectors, rows a_1, a_2, a_3 (unused rows zero)
 *   double x 3   truncation half-lengths (unused entries zero)
 *   complex128   n1*n2*n3 row-major samples (re, im doubles)
 * All integers and floats little-endian 64-bit.  Files are written to a
 * temporary name and renamed into place.
 */
void write_snapshot(const std::filesystem::path& path, const ScalarField& f);

ScalarField read_snapshot(const std::filesystem::path& path);

} // namespace spcell

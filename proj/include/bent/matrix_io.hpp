#ifndef BENT_MATRIX_IO_HPP
#define BENT_MATRIX_IO_HPP

// Binary matrix dumps. Layout, byte-exact and platform independent:
//   bytes 0..3   magic "BENT"
//   u32 LE       format version (1)
//   u32 LE       rows
//   u32 LE       cols
//   then rows*cols complex entries in row-major order, each as two IEEE-754
//   doubles (real part, imaginary part), little endian.

#include <filesystem>

#include "bent/fock.hpp"

namespace bent {

inline constexpr std::uint32_t kMatrixFormatVersion = 1;

void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(const std::filesystem::path& path);

} // namespace bent

#endif

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "photocorr/contours.hpp"
#include "photocorr/dynamics.hpp"
#include "photocorr/scanner.hpp"

namespace photocorr::io {

// Angle-pair table, one row per grid cell in row-major order (alpha1 outer).
// Header "alpha1,alpha2,value,masked"; 17 significant digits throughout, so
// reading the numbers back reproduces the doubles bit for bit.
std::string format_field_csv(const ScalarField& field);

// One "alpha1,alpha2" line per vertex; polylines separated by blank lines.
// Closed loops repeat their first vertex at the end.
std::string format_contours(const ContourSet& set);

// Density matrix as complex CSV rows: re,im pairs, row-major.
std::string format_density_matrix(const Matrix& rho);

// Superoperator as "row,col,re,im" triplet lines. Sparse storage is walked
// directly; a sparse operator is never densified to print it.
std::string format_superoperator(const Superoperator& op);

// 8-bit RGB heatmap of the field, one pixel per grid point, alpha1 along x
// and alpha2 upward along y. Values above the display cap share one shade,
// masked cells are white. Returns the bytes of a complete PNG stream.
std::vector<std::uint8_t> encode_heatmap_png(const ScalarField& field);

void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_binary_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace photocorr::io

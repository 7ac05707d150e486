#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "jhol/almost_complex.hpp"

namespace jhol {

inline constexpr int kMaxFileDimension = 8;

/// Parses the textual structure format:
///
///   acs v1 n=<n> radius=<r>
///   family standard
///   family constant_q <(2n)^2 entries, row-major>
///   family radial_lambda <l0> <l1>
///   grid <m>            followed by m records  x_1 .. x_2n  J_11 .. J_2n2n
///
/// Blank lines and lines starting with '#' are ignored. Errors are
/// InputError with a "<source>:<line>:" prefix.
Structure read_structure(std::istream& in, const std::string& source = "<input>");
Structure load_structure(const std::filesystem::path& path);

/// Writes a family-backed structure file; `family` is the text after "family ".
void write_structure_family(std::ostream& out, int n, double radius, const std::string& family);
void save_structure_family(const std::filesystem::path& path, int n, double radius,
                           const std::string& family);

}  // namespace jhol

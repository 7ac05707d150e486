#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "jhol/disc_grid.hpp"

namespace jhol {

/// Text grid format: header `discgrid v1 n=<n> n_r=<n_r> n_theta=<n_theta>`
/// followed by one row per node `j,k,re(u1),im(u1),...`. Fields may be
/// separated by commas or whitespace. Values are written with 17 significant
/// digits so a write/read cycle is lossless.
void write_grid(std::ostream& out, const DiscGrid& u);
DiscGrid read_grid(std::istream& in, const std::string& source = "<input>");

void save_grid(const std::filesystem::path& path, const DiscGrid& u);
DiscGrid load_grid(const std::filesystem::path& path);

}  // namespace jhol

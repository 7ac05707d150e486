#pragma once

#include "jhol/kernels.hpp"

/// Straightforward single-threaded implementations used to cross-check the
/// production kernels: naive O(N^2) DFTs instead of FFTW, and radial
/// integrals summed piece by piece for every target ring instead of by
/// recursion.
namespace jhol::reference {

Wirtinger wirtinger(const DiscGrid& u);
DiscGrid cauchy_green(const DiscGrid& f);

}  // namespace jhol::reference

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cftherm/grid_function.hpp"

namespace cftherm {

// Standard smooth test functions.  Gaussians are Schwartz fixtures whose
// effective support is cut at the 1e-12 amplitude threshold; bumps
// exp(-1/(1-t^2)) are exactly compactly supported.
GridFunction gaussian_fixture(double center, double width, std::size_t n = 0,
                              double pad = kWindowPad, double min_window = 0.0);
GridFunction bump_fixture(double center, double halfwidth, std::size_t n = 0,
                          double pad = kWindowPad, double min_window = 0.0);
GridFunction zero_fixture(std::size_t n = 0);

// Unit-integral bump of half-width eps, for point-splitting.
GridFunction delta_bump(double eps, std::size_t n, double min_window);

// k random Gaussian mixtures on one shared lattice (algebra-ready).
std::vector<GridFunction> random_smooth_family(std::size_t k, std::uint64_t seed,
                                               std::size_t n = 0);

// Plain-text two-column (x, value) fixture files.  Validates uniform spacing
// to 1e-12 relative; sample counts are zero-padded up to a power of two.
GridFunction load_fixture(const std::string& path);
void write_fixture(const std::string& path, const GridFunction& f);

}  // namespace cftherm

#pragma once

#include <span>

#include "unselfie/raster.hpp"

namespace unselfie {

struct DiffusionOptions {
    /// Stop once no filled value moves by more than this between sweeps.
    double tolerance = 1e-3;
    int max_iterations = 500;
};

struct DiffusionReport {
    int iterations = 0;
    double last_change = 0.0;
    bool converged = true;
};

/// Fills the cells of `region` that are not `known` from their known
/// surroundings.
///
/// `values` holds `channels` interleaved doubles per cell of a
/// known.width() x known.height() grid. Unknown cells reachable from a known
/// cell through 4-connected region cells are first seeded layer by layer with
/// the mean of their already-seeded neighbours, then relaxed by Jacobi sweeps
/// of 4-neighbour averaging. Unreachable cells are left untouched and not
/// reported in `filled`. Every filled value is a convex combination of known
/// values.
DiffusionReport diffuse_fill(std::span<double> values, int channels, const BitMask& known,
                             const BitMask& region, const DiffusionOptions& options,
                             BitMask& filled);

}  // namespace unselfie

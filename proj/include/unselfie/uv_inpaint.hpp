#pragma once

#include <array>
#include <utility>
#include <vector>

#include "unselfie/atlas.hpp"
#include "unselfie/iuv.hpp"

namespace unselfie {

/// Left/right pairing of body parts. Parts paired with themselves (torso,
/// head) mirror within their own tile. Reflection is always u -> 1 - u.
class SymmetryTable {
public:
    /// Dense pose convention: hands 3/4, feet 5/6, upper legs 7/8 and 9/10,
    /// lower legs 11/12 and 13/14, upper arms 15/16 and 17/18, lower arms
    /// 19/20 and 21/22; torso 1, 2 and head 23, 24 self-mirrored.
    SymmetryTable();

    /// Builds a table from explicit pairs; unlisted parts mirror onto themselves.
    /// Throws ConfigError unless the result is an involution.
    static SymmetryTable from_pairs(const std::vector<std::pair<int, int>>& pairs);

    int mirror(int part) const { return mirror_.at(static_cast<std::size_t>(part)); }

private:
    explicit SymmetryTable(const std::array<int, kMaxPart + 1>& mirror) : mirror_(mirror) {}

    std::array<int, kMaxPart + 1> mirror_{};
};

/// Weights of the computable loss terms.
struct LossConfig {
    double lambda1 = 2.0;   // G1 perceptual (not computed here)
    double lambda2 = 10.0;  // G1 identity
    double lambda3 = 10.0;  // G2 reconstruction
    double lambda4 = 10.0;  // G2 perceptual (not computed here)
    double lambda5 = 10.0;  // G2 adversarial (not computed here)

    void validate() const;

    friend bool operator==(const LossConfig&, const LossConfig&) = default;
};

struct InpaintOptions {
    double tolerance = 1e-3;
    /// Jacobi sweeps are capped at this factor times the tile size.
    int iteration_factor = 10;
    unsigned threads = 1;
};

/// Completes a coordinate map over the body atlas.
///
/// Invalid cells whose mirrored cell was valid in the input take its
/// coordinate. What is still missing is diffused from the valid cells of the
/// same tile. Originally valid cells are never modified; tiles left without
/// any valid cell after the mirror copy stay invalid.
CoordinateMap inpaint_coords(const CoordinateMap& coords, const AtlasLayout& layout,
                             const SymmetryTable& table = {}, const InpaintOptions& options = {});

struct RenderResult {
    TextureMap texture;          // T_G1 = I_src(C_G1)
    MaskedGrid<Coord> warp;      // E = C_G1(P_tgt)
    RgbImage image;              // I_G1 = T_G1(P_tgt), zero off fg_mask
    BitMask fg_mask;
};

RenderResult render(const CoordinateMap& completed, const RgbImage& source, const IuvMap& target,
                    const AtlasLayout& layout);

struct G1Losses {
    double identity = 0.0;        // mean over V_src of squared normalised coordinate error
    double reconstruction = 0.0;  // mean over V_tgt of the per-cell RGB L1 error
    double combined = 0.0;        // reconstruction + lambda2 * identity
    bool perceptual_included = false;
    bool identity_mask_empty = false;
    bool reconstruction_mask_empty = false;
};

/// Identity and reconstruction terms of the coordinate-inpainting objective.
/// Coordinates are divided by `canvas_size` before differencing. Cells that
/// are invalid in either operand of a term are excluded from its mean.
G1Losses g1_losses(const CoordinateMap& completed, const CoordinateMap& source,
                   const TextureMap& rendered, const TextureMap& target, const BitMask& v_src,
                   const BitMask& v_tgt, const LossConfig& cfg = {}, int canvas_size = 256);

}  // namespace unselfie

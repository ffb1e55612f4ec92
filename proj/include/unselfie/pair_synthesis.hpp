#pragma once

#include "unselfie/atlas.hpp"
#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"
#include "unselfie/uv_inpaint.hpp"

namespace unselfie {

struct SyntheticSelfie {
    /// Portrait pixels carried through the atlas onto the selfie pose; zero
    /// on background and holes.
    RgbImage image;
    /// Selfie-pose foreground pixels whose atlas cell had no portrait colour.
    BitMask holes;
};

/// T_tgt = i2uv(I_tgt, P_tgt); I_src = uv2i(T_tgt, P_src).
SyntheticSelfie synth_selfie_image(const RgbImage& target_image, const IuvMap& target_pose,
                                   const IuvMap& source_pose, const AtlasLayout& layout);

struct UvTrainingPair {
    CoordinateMap source_coords;  // C_src; its mask is V_src
    TextureMap source_texture;    // T_src
    TextureMap target_texture;    // T_tgt; its mask is V_tgt
};

/// The selfie pose's coordinate map restricted to cells the portrait texture
/// covers, with colours copied from that texture. V_src is a subset of V_tgt.
UvTrainingPair synth_uv_pair(const RgbImage& target_image, const IuvMap& target_pose,
                             const IuvMap& source_pose, const AtlasLayout& layout);

/// Left-right flip of an image.
RgbImage flip_horizontal(const RgbImage& img);

/// Left-right flip of a pose: pixels move, left/right parts swap and u -> 1 - u.
IuvMap flip_horizontal(const IuvMap& pose, const SymmetryTable& table);

/// Replaces pixels outside `foreground` with `background` (resized to fit).
RgbImage replace_background(const RgbImage& img, const BitMask& foreground,
                            const RgbImage& background);

}  // namespace unselfie

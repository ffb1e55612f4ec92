#include "unselfie/pair_synthesis.hpp"

namespace unselfie {

SyntheticSelfie synth_selfie_image(const RgbImage& target_image, const IuvMap& target_pose,
                                   const IuvMap& source_pose, const AtlasLayout& layout) {
    require_same_shape(target_image, target_pose.parts(), "synth_selfie_image");
    require_same_shape(target_pose.parts(), source_pose.parts(), "synth_selfie_image");
    const TextureMap texture = i2uv(target_image, target_pose, layout).texture;
    MaskedGrid<Rgb> warped = uv2i(texture, source_pose, layout);
    return {std::move(warped.values),
            mask_difference(source_pose.foreground(), warped.valid)};
}

UvTrainingPair synth_uv_pair(const RgbImage& target_image, const IuvMap& target_pose,
                             const IuvMap& source_pose, const AtlasLayout& layout) {
    require_same_shape(target_image, target_pose.parts(), "synth_uv_pair");
    require_same_shape(target_pose.parts(), source_pose.parts(), "synth_uv_pair");
    UvTrainingPair out;
    out.target_texture = i2uv(target_image, target_pose, layout).texture;
    out.source_coords = pose_coordinates(source_pose, layout);
    out.source_texture = TextureMap(layout.atlas_size(), layout.atlas_size());
    for (std::size_t i = 0; i < out.source_coords.valid.size(); ++i) {
        if (!out.source_coords.valid[i]) continue;
        if (!out.target_texture.valid[i]) {
            out.source_coords.valid[i] = 0;
            out.source_coords.values[i] = kInvalidCoord;
            continue;
        }
        out.source_texture.values[i] = out.target_texture.values[i];
        out.source_texture.valid[i] = 1;
    }
    return out;
}

RgbImage flip_horizontal(const RgbImage& img) {
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out(img.width() - 1 - x, y) = img(x, y);
    }
    return out;
}

IuvMap flip_horizontal(const IuvMap& pose, const SymmetryTable& table) {
    IuvMap out(pose.width(), pose.height());
    for (int y = 0; y < pose.height(); ++y) {
        for (int x = 0; x < pose.width(); ++x) {
            const int part = pose.part(x, y);
            if (part == 0) continue;
            out.set(pose.width() - 1 - x, y, table.mirror(part), 1.0f - pose.u(x, y),
                    pose.v(x, y));
        }
    }
    return out;
}

RgbImage replace_background(const RgbImage& img, const BitMask& foreground,
                            const RgbImage& background) {
    require_same_shape(img, foreground, "replace_background");
    const RgbImage bg = background.same_shape(img)
                            ? background
                            : resize_bilinear(background, img.width(), img.height());
    RgbImage out = img;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!foreground[i]) out[i] = bg[i];
    }
    return out;
}

}  // namespace unselfie

#include "unselfie/uv_inpaint.hpp"

#include <cmath>
#include <string>

#include "unselfie/diffusion.hpp"
#include "unselfie/parallel.hpp"

namespace unselfie {

SymmetryTable::SymmetryTable()
    : SymmetryTable(from_pairs({{3, 4},   {5, 6},   {7, 8},   {9, 10},  {11, 12}, {13, 14},
                                {15, 16}, {17, 18}, {19, 20}, {21, 22}})) {}

SymmetryTable SymmetryTable::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::array<int, kMaxPart + 1> mirror{};
    for (int p = 0; p <= kMaxPart; ++p) mirror[p] = p;
    for (auto [a, b] : pairs) {
        if (a < 1 || b < 1 || a > kMaxPart || b > kMaxPart) {
            throw ConfigError("symmetry pair references part outside 1..24");
        }
        mirror[a] = b;
        mirror[b] = a;
    }
    for (int p = 0; p <= kMaxPart; ++p) {
        if (mirror[mirror[p]] != p) {
            throw ConfigError("symmetry table is not an involution at part " + std::to_string(p));
        }
    }
    return SymmetryTable(mirror);
}

void LossConfig::validate() const {
    for (double w : {lambda1, lambda2, lambda3, lambda4, lambda5}) {
        if (!(w >= 0.0)) throw ConfigError("loss weights must be nonnegative");
    }
}

CoordinateMap inpaint_coords(const CoordinateMap& coords, const AtlasLayout& layout,
                             const SymmetryTable& table, const InpaintOptions& options) {
    const int size = layout.atlas_size();
    if (coords.width() != size || coords.height() != size) {
        throw DimensionError("inpaint_coords: coordinate map does not match the atlas layout");
    }
    require_same_shape(coords.values, coords.valid, "inpaint_coords");

    CoordinateMap out = coords;
    const int tile = layout.tile_size();

    // Mirror copy reads the input only, so no copy chains through another copy.
    for (int part = 1; part <= kMaxPart; ++part) {
        const AtlasCell o = layout.tile_origin(part);
        const int twin = table.mirror(part);
        for (int ly = 0; ly < tile; ++ly) {
            for (int lx = 0; lx < tile; ++lx) {
                const AtlasCell c{o.x + lx, o.y + ly};
                if (coords.valid(c.x, c.y)) continue;
                const AtlasCell m = layout.mirror_cell(c, twin);
                if (!coords.valid(m.x, m.y)) continue;
                out.values(c.x, c.y) = coords.values(m.x, m.y);
                out.valid(c.x, c.y) = 1;
            }
        }
    }

    const DiffusionOptions diffusion{options.tolerance, options.iteration_factor * tile};
    const BitMask whole_tile(tile, tile, 1);
    parallel_for(kMaxPart, options.threads, [&](std::size_t idx) {
        const int part = static_cast<int>(idx) + 1;
        const AtlasCell o = layout.tile_origin(part);
        BitMask known(tile, tile);
        std::vector<double> values(static_cast<std::size_t>(tile) * tile * 2, 0.0);
        bool any = false;
        bool all = true;
        for (int ly = 0; ly < tile; ++ly) {
            for (int lx = 0; lx < tile; ++lx) {
                const std::size_t i = known.index(lx, ly);
                if (out.valid(o.x + lx, o.y + ly)) {
                    known[i] = 1;
                    values[2 * i] = out.values(o.x + lx, o.y + ly).x;
                    values[2 * i + 1] = out.values(o.x + lx, o.y + ly).y;
                    any = true;
                } else {
                    all = false;
                }
            }
        }
        if (!any || all) return;
        BitMask filled;
        diffuse_fill(values, 2, known, whole_tile, diffusion, filled);
        for (int ly = 0; ly < tile; ++ly) {
            for (int lx = 0; lx < tile; ++lx) {
                const std::size_t i = filled.index(lx, ly);
                if (!filled[i]) continue;
                out.values(o.x + lx, o.y + ly) = {static_cast<float>(values[2 * i]),
                                                  static_cast<float>(values[2 * i + 1])};
                out.valid(o.x + lx, o.y + ly) = 1;
            }
        }
    });
    return out;
}

RenderResult render(const CoordinateMap& completed, const RgbImage& source, const IuvMap& target,
                    const AtlasLayout& layout) {
    RenderResult r;
    r.texture = bilinear_sample(source, completed);
    r.warp = uv2i(completed, target, layout, kInvalidCoord);
    MaskedGrid<Rgb> gathered = uv2i(r.texture, target, layout);
    r.image = std::move(gathered.values);
    r.fg_mask = std::move(gathered.valid);
    return r;
}

G1Losses g1_losses(const CoordinateMap& completed, const CoordinateMap& source,
                   const TextureMap& rendered, const TextureMap& target, const BitMask& v_src,
                   const BitMask& v_tgt, const LossConfig& cfg, int canvas_size) {
    require_same_shape(completed.values, source.values, "g1_losses");
    require_same_shape(completed.values, v_src, "g1_losses");
    require_same_shape(rendered.values, target.values, "g1_losses");
    require_same_shape(rendered.values, v_tgt, "g1_losses");

    G1Losses out;
    const double norm = 1.0 / canvas_size;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < v_src.size(); ++i) {
        if (!v_src[i] || !completed.valid[i] || !source.valid[i]) continue;
        const double dx = (static_cast<double>(completed.values[i].x) - source.values[i].x) * norm;
        const double dy = (static_cast<double>(completed.values[i].y) - source.values[i].y) * norm;
        sum += dx * dx + dy * dy;
        ++n;
    }
    out.identity_mask_empty = n == 0;
    out.identity = n ? sum / static_cast<double>(n) : 0.0;

    sum = 0.0;
    n = 0;
    for (std::size_t i = 0; i < v_tgt.size(); ++i) {
        if (!v_tgt[i] || !rendered.valid[i] || !target.valid[i]) continue;
        const Rgb a = rendered.values[i];
        const Rgb b = target.values[i];
        sum += std::abs(static_cast<double>(a.r) - b.r) + std::abs(static_cast<double>(a.g) - b.g) +
               std::abs(static_cast<double>(a.b) - b.b);
        ++n;
    }
    out.reconstruction_mask_empty = n == 0;
    out.reconstruction = n ? sum / static_cast<double>(n) : 0.0;
    out.combined = out.reconstruction + cfg.lambda2 * out.identity;
    return out;
}

}  // namespace unselfie

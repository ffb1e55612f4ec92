#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "unselfie/alignment.hpp"
#include "unselfie/atlas.hpp"
#include "unselfie/pose_search.hpp"
#include "unselfie/uv_inpaint.hpp"

namespace unselfie {

/// Every tunable of the pipeline. Defaults are the values each stage uses
/// when constructed on its own.
struct PipelineConfig {
    int atlas_size = 256;
    int atlas_rows = 5;
    int atlas_cols = 5;
    int canvas_size = 256;
    AtlasCell shoulder_left{63, 133};
    AtlasCell shoulder_right{92, 133};

    int torso_part = 2;
    std::vector<int> head_parts{23, 24};

    std::size_t k = 5;
    std::size_t k1 = 40;

    LossConfig loss;

    int body_dilation = 3;
    int head_dilation = 5;
    int feather = 2;
    double matte_threshold = 0.1;

    double coord_tolerance = 1e-3;
    int inpaint_iteration_factor = 10;
    double color_tolerance = 1e-4;

    /// Fraction of ingested pairs assigned to the training split.
    double split_ratio = 4114.0 / 4614.0;
    std::uint64_t seed = 0;

    AtlasLayout layout() const { return {atlas_size, atlas_rows, atlas_cols}; }
    AlignmentSpec alignment() const;
    PartConvention parts() const { return {torso_part, head_parts}; }

    /// Throws ConfigError on the first violated constraint.
    void validate() const;

    /// Canonical key=value text, one line per key in a fixed order.
    std::string serialize() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parses key=value lines. Blank lines and lines starting with '#' are
/// ignored; unknown keys, malformed values and failed validation throw
/// ConfigError. Keys not present keep their defaults.
PipelineConfig parse_config(const std::string& text);
PipelineConfig config_load(const std::filesystem::path& path);

}  // namespace unselfie

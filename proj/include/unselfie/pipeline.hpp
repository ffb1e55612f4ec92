#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unselfie/alignment.hpp"
#include "unselfie/compose.hpp"
#include "unselfie/config.hpp"
#include "unselfie/pair_synthesis.hpp"
#include "unselfie/pose_search.hpp"
#include "unselfie/uv_inpaint.hpp"

namespace unselfie {

struct CompositeInputs {
    RgbImage selfie;           // aligned input I_in
    IuvMap selfie_pose;        // aligned selfie pose
    RgbImage foreground;       // I_G1
    BitMask foreground_mask;   // where I_G1 is defined
    IuvMap target_pose;        // neutral pose P_tgt
    BitMask invalid;           // alignment mask M (may be empty-sized for none)
    std::optional<GrayImage> matte;
};

/// Everything the compositing stage produced for one candidate.
struct CompositeSet {
    HoleSpec holes;
    BitMask head;
    BackgroundPlate background;
    RgbImage background_filled;
    GrayImage alpha;
    RgbImage output;
    bool alpha_clamped = false;
};

/// Background plate with head and neck kept, diffusion fill, feathered alpha,
/// then the masked blend.
CompositeSet compose(const CompositeInputs& in, const PipelineConfig& cfg);

struct Candidate {
    SearchHit hit;
    RenderResult render;
    CompositeSet composite;
};

struct UnselfieResult {
    AlignedSample aligned;
    CoordinateMap source_coords;
    CoordinateMap completed_coords;
    SearchResult ranking;
    std::vector<Candidate> candidates;
};

/// align -> search -> coordinate inpainting -> render -> compose, one
/// candidate per retrieved neutral pose, in rank order.
UnselfieResult run_unselfie(const RgbImage& selfie, const IuvMap& selfie_pose,
                            const PoseDatabase& neutral_db, const PipelineConfig& cfg,
                            unsigned threads = 1);

/// Writes rank_<r>.png, rank_<r>_alpha.png, ranks.txt and aligned inputs under `dir`.
void write_unselfie(const std::filesystem::path& dir, const UnselfieResult& result);

struct PairSynthesisOptions {
    bool flip = false;
    /// Background images for replacement; empty disables it.
    std::vector<std::filesystem::path> backgrounds;
};

struct SynthesizedPair {
    std::string portrait_id;
    std::string selfie_id;
    std::size_t rank = 0;  // 1-based rank of the selfie among the search results
    bool flipped = false;
    std::string background;
    SyntheticSelfie selfie;
    UvTrainingPair uv;
};

/// For each portrait (and its mirror image when flipping) searches the selfie
/// database and draws one of the top k1 results uniformly. Each item has its
/// own generator derived from (seed, item), so output does not depend on the
/// thread count.
std::vector<SynthesizedPair> synthesize_pairs(const PoseDatabase& portraits,
                                              const PoseDatabase& selfies,
                                              const PipelineConfig& cfg,
                                              const PairSynthesisOptions& options,
                                              unsigned threads = 1);

/// One directory per pair: I_src.png, hole.png, C_src.bin (+ C_src_valid.png),
/// T_src.png, T_tgt.png (+ _valid masks) and pair.txt.
void write_pairs(const std::filesystem::path& dir, const std::vector<SynthesizedPair>& pairs);

}  // namespace unselfie

#include "unselfie/pipeline.hpp"

#include <fstream>
#include <random>

#include "unselfie/io.hpp"
#include "unselfie/parallel.hpp"

namespace unselfie {

namespace fs = std::filesystem;

CompositeSet compose(const CompositeInputs& in, const PipelineConfig& cfg) {
    require_same_shape(in.selfie, in.selfie_pose.parts(), "compose");
    require_same_shape(in.selfie, in.foreground, "compose");
    require_same_shape(in.selfie, in.foreground_mask, "compose");
    require_same_shape(in.selfie, in.target_pose.parts(), "compose");

    CompositeSet out;
    const BitMask selfie_body =
        in.matte ? body_mask({.matte = &*in.matte}, cfg.matte_threshold, cfg.body_dilation)
                 : body_mask({.pose = &in.selfie_pose}, cfg.matte_threshold, cfg.body_dilation);
    const BitMask neutral_body =
        body_mask({.pose = &in.target_pose}, cfg.matte_threshold, cfg.body_dilation);
    out.holes = HoleSpec::make(selfie_body, neutral_body, cfg.matte_threshold);
    out.head = head_neck_mask(in.selfie_pose, cfg.head_parts, cfg.head_dilation);
    out.background = make_background(in.selfie, out.holes.selfie, out.head);
    out.background_filled = count(out.background.holes) == out.background.holes.size()
                                ? out.background.image
                                : fill_background(out.background, cfg.color_tolerance);
    out.alpha = baseline_alpha(in.foreground_mask, out.head, cfg.feather);
    const BitMask invalid =
        in.invalid.empty() ? BitMask(in.selfie.width(), in.selfie.height()) : in.invalid;
    BlendResult b = blend(in.foreground, out.alpha, out.background_filled, invalid);
    out.output = std::move(b.image);
    out.alpha_clamped = b.alpha_clamped;
    return out;
}

UnselfieResult run_unselfie(const RgbImage& selfie, const IuvMap& selfie_pose,
                            const PoseDatabase& neutral_db, const PipelineConfig& cfg,
                            unsigned threads) {
    cfg.validate();
    const AtlasLayout layout = cfg.layout();
    UnselfieResult r;
    r.aligned = align(selfie, selfie_pose, layout, cfg.alignment());
    const IndexedPose query = IndexedPose::from(r.aligned.pose, cfg.torso_part);
    r.ranking = search(query, neutral_db, {cfg.k, cfg.k1, threads});

    r.source_coords = pose_coordinates(r.aligned.pose, layout);
    r.completed_coords = inpaint_coords(
        r.source_coords, layout, SymmetryTable{},
        {cfg.coord_tolerance, cfg.inpaint_iteration_factor, threads});

    r.candidates.resize(r.ranking.hits.size());
    parallel_for(r.candidates.size(), threads, [&](std::size_t i) {
        const SearchHit& hit = r.ranking.hits[i];
        const IuvMap& target = neutral_db[hit.entry].indexed.pose;
        Candidate& c = r.candidates[i];
        c.hit = hit;
        c.render = render(r.completed_coords, r.aligned.image, target, layout);
        c.composite = compose({r.aligned.image, r.aligned.pose, c.render.image, c.render.fg_mask,
                               target, r.aligned.invalid, std::nullopt},
                              cfg);
    });
    return r;
}

void write_unselfie(const fs::path& dir, const UnselfieResult& result) {
    fs::create_directories(dir);
    io::save_rgb(dir / "aligned.png", result.aligned.image);
    io::save_iuv(dir / "aligned_iuv.png", result.aligned.pose);
    io::save_mask(dir / "invalid.png", result.aligned.invalid);
    std::ofstream ranks(dir / "ranks.txt");
    ranks.precision(17);
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
        const Candidate& c = result.candidates[i];
        const std::string stem = "rank_" + std::to_string(i + 1);
        io::save_rgb(dir / (stem + ".png"), c.composite.output);
        io::save_gray(dir / (stem + "_alpha.png"), c.composite.alpha);
        ranks << c.hit.id << '\t' << c.hit.d_index << '\t' << c.hit.d_uv << '\n';
    }
    if (!ranks) throw FormatError((dir / "ranks.txt").string() + ": write failed");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct WorkItem {
    std::size_t portrait;
    bool flipped;
};

}  // namespace

std::vector<SynthesizedPair> synthesize_pairs(const PoseDatabase& portraits,
                                              const PoseDatabase& selfies,
                                              const PipelineConfig& cfg,
                                              const PairSynthesisOptions& options,
                                              unsigned threads) {
    cfg.validate();
    if (selfies.empty()) throw EmptyDatabaseError("synthesize_pairs: selfie database is empty");
    const AtlasLayout layout = cfg.layout();
    const SymmetryTable symmetry;

    std::vector<WorkItem> items;
    for (std::size_t i = 0; i < portraits.size(); ++i) {
        items.push_back({i, false});
        if (options.flip) items.push_back({i, true});
    }

    std::vector<SynthesizedPair> out(items.size());
    parallel_for(items.size(), threads, [&](std::size_t n) {
        const PoseEntry& entry = portraits[items[n].portrait];
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(n)));

        RgbImage image = io::load_rgb(entry.image_path);
        IuvMap pose = entry.indexed.pose;
        require_same_shape(image, pose.parts(), "synthesize_pairs");
        if (items[n].flipped) {
            image = flip_horizontal(image);
            pose = flip_horizontal(pose, symmetry);
        }
        SynthesizedPair& p = out[n];
        if (!options.backgrounds.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, options.backgrounds.size() - 1);
            const fs::path& bg = options.backgrounds[pick(rng)];
            image = replace_background(image, dilate_disk(pose.foreground(), cfg.body_dilation),
                                       io::load_rgb(bg));
            p.background = bg.filename().string();
        }

        const IndexedPose query = IndexedPose::from(pose, cfg.torso_part);
        const std::size_t pool = std::min(cfg.k1, selfies.size());
        const SearchResult found = search(query, selfies, {pool, pool, 1});
        std::uniform_int_distribution<std::size_t> choose(0, found.hits.size() - 1);
        const std::size_t rank = choose(rng);
        const IuvMap& source_pose = selfies[found.hits[rank].entry].indexed.pose;

        p.portrait_id = entry.id;
        p.selfie_id = found.hits[rank].id;
        p.rank = rank + 1;
        p.flipped = items[n].flipped;
        p.selfie = synth_selfie_image(image, pose, source_pose, layout);
        p.uv = synth_uv_pair(image, pose, source_pose, layout);
    });
    return out;
}

void write_pairs(const fs::path& dir, const std::vector<SynthesizedPair>& pairs) {
    for (const auto& p : pairs) {
        const fs::path d = dir / (p.portrait_id + (p.flipped ? "_flip" : ""));
        fs::create_directories(d);
        io::save_rgb(d / "I_src.png", p.selfie.image);
        io::save_mask(d / "hole.png", p.selfie.holes);
        io::save_coords(d / "C_src.bin", p.uv.source_coords);
        io::save_texture(d / "T_src.png", p.uv.source_texture);
        io::save_texture(d / "T_tgt.png", p.uv.target_texture);
        std::ofstream rec(d / "pair.txt");
        rec << "portrait\t" << p.portrait_id << '\n'
            << "selfie\t" << p.selfie_id << '\n'
            << "rank\t" << p.rank << '\n'
            << "flipped\t" << (p.flipped ? 1 : 0) << '\n';
        if (!p.background.empty()) rec << "background\t" << p.background << '\n';
        if (!rec) throw FormatError((d / "pair.txt").string() + ": write failed");
    }
}

}  // namespace unselfie

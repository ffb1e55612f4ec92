// unselfie command-line front end. Every subcommand that writes files also
// writes provenance.txt into its output directory.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "unselfie/alignment.hpp"
#include "unselfie/compose.hpp"
#include "unselfie/config.hpp"
#include "unselfie/dataset.hpp"
#include "unselfie/error.hpp"
#include "unselfie/io.hpp"
#include "unselfie/pipeline.hpp"
#include "unselfie/pose_search.hpp"
#include "unselfie/provenance.hpp"
#include "unselfie/simd/kernels.hpp"
#include "unselfie/uv_inpaint.hpp"

namespace fs = std::filesystem;
using namespace unselfie;

namespace {

struct Globals {
    std::string config;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    std::string isa = "auto";
};

PipelineConfig load_config(const Globals& g) {
    PipelineConfig cfg = g.config.empty() ? PipelineConfig{} : config_load(g.config);
    if (g.seed) cfg.seed = *g.seed;
    cfg.validate();
    return cfg;
}

void apply_isa(const std::string& name) {
    if (name == "scalar") {
        simd::set_active_isa(simd::Isa::Scalar);
    } else if (name == "avx2") {
        if (simd::set_active_isa(simd::Isa::Avx2) != simd::Isa::Avx2) {
            std::cerr << "warning: avx2 unavailable, using scalar kernels\n";
        }
    } else {
        simd::set_active_isa(simd::detect_isa());
    }
}

void stamp(const fs::path& dir, const PipelineConfig& cfg, const std::vector<fs::path>& inputs) {
    fs::create_directories(dir);
    write_provenance(dir, version_stamp(cfg, inputs));
}

fs::path parent_or_dot(const fs::path& p) {
    return p.has_parent_path() ? p.parent_path() : fs::path(".");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) throw FormatError(path.string() + ": write failed");
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selfie to neutral-pose portrait pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_option("--seed", g.seed, "overrides the configured seed");
    app.add_option("--isa", g.isa, "kernel set")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    // align
    struct {
        std::string iuv, img, out_dir;
    } align_args;
    auto* align_cmd = app.add_subcommand("align", "align an image and its IUV map onto the canvas");
    align_cmd->add_option("--iuv", align_args.iuv)->required()->check(CLI::ExistingFile);
    align_cmd->add_option("--img", align_args.img)->required()->check(CLI::ExistingFile);
    align_cmd->add_option("--out-dir", align_args.out_dir)->required();

    // ingest
    struct {
        std::string dir, out_dir;
        std::optional<double> ratio;
    } ingest_args;
    auto* ingest_cmd = app.add_subcommand("ingest", "validate (image, IUV) pairs and write an index and split");
    ingest_cmd->add_option("--dir", ingest_args.dir)->required()->check(CLI::ExistingDirectory);
    ingest_cmd->add_option("--out-dir", ingest_args.out_dir)->required();
    ingest_cmd->add_option("--ratio", ingest_args.ratio, "training fraction");

    // build-db
    struct {
        std::string dir, out, direction = "neutral";
    } build_args;
    auto* build_cmd = app.add_subcommand("build-db", "align every pair of a directory into a pose database");
    build_cmd->add_option("--dir", build_args.dir)->required()->check(CLI::ExistingDirectory);
    build_cmd->add_option("--out", build_args.out, "index file")->required();
    build_cmd->add_option("--direction", build_args.direction)
        ->check(CLI::IsMember({"neutral", "selfie"}));

    // search
    struct {
        std::string db, query, out;
        std::optional<std::size_t> k, k1;
    } search_args;
    auto* search_cmd = app.add_subcommand("search", "rank database poses against an aligned query pose");
    search_cmd->add_option("--db", search_args.db)->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--query", search_args.query, "aligned IUV png")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--k", search_args.k);
    search_cmd->add_option("--k1", search_args.k1);
    search_cmd->add_option("--out", search_args.out)->required();

    // synthesize-pairs
    struct {
        std::string portrait_db, selfie_db, out_dir, bg_dir;
        bool flip = false;
    } synth_args;
    auto* synth_cmd = app.add_subcommand("synthesize-pairs", "build training pairs from portrait and selfie databases");
    synth_cmd->add_option("--portrait-db", synth_args.portrait_db)->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--selfie-db", synth_args.selfie_db)->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--out-dir", synth_args.out_dir)->required();
    synth_cmd->add_flag("--flip", synth_args.flip, "also synthesize from mirrored portraits");
    synth_cmd->add_option("--bg-dir", synth_args.bg_dir, "replacement backgrounds")->check(CLI::ExistingDirectory);

    // inpaint-uv
    struct {
        std::string coords, src, pose, out_dir;
    } inpaint_args;
    auto* inpaint_cmd = app.add_subcommand("inpaint-uv", "complete a coordinate map and render it through a pose");
    inpaint_cmd->add_option("--coords", inpaint_args.coords, "C_src.bin")->required()->check(CLI::ExistingFile);
    inpaint_cmd->add_option("--src", inpaint_args.src, "source image")->required()->check(CLI::ExistingFile);
    inpaint_cmd->add_option("--pose", inpaint_args.pose, "target IUV png")->required()->check(CLI::ExistingFile);
    inpaint_cmd->add_option("--out-dir", inpaint_args.out_dir)->required();

    // eval-g1
    struct {
        std::string coords, completed, src, target;
    } g1_args;
    auto* g1_cmd = app.add_subcommand("eval-g1", "identity, reconstruction and combined coordinate losses");
    g1_cmd->add_option("--coords", g1_args.coords, "C_src.bin")->required()->check(CLI::ExistingFile);
    g1_cmd->add_option("--completed", g1_args.completed, "C_G1.bin")->required()->check(CLI::ExistingFile);
    g1_cmd->add_option("--src", g1_args.src, "source image")->required()->check(CLI::ExistingFile);
    g1_cmd->add_option("--target", g1_args.target, "T_tgt.png")->required()->check(CLI::ExistingFile);

    // eval-g2
    struct {
        std::string output, target, alpha, holes;
    } g2_args;
    auto* g2_cmd = app.add_subcommand("eval-g2", "reconstruction, alpha and combined compositing losses");
    g2_cmd->add_option("--output", g2_args.output)->required()->check(CLI::ExistingFile);
    g2_cmd->add_option("--target", g2_args.target)->required()->check(CLI::ExistingFile);
    g2_cmd->add_option("--alpha", g2_args.alpha)->required()->check(CLI::ExistingFile);
    g2_cmd->add_option("--holes", g2_args.holes)->required()->check(CLI::ExistingFile);

    // compose
    struct {
        std::string selfie, iuv_in, fg, fg_mask, target_iuv, matte, invalid, out;
    } compose_args;
    auto* compose_cmd = app.add_subcommand("compose", "blend a rendered foreground over the selfie background");
    compose_cmd->add_option("--selfie", compose_args.selfie)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("--iuv-in", compose_args.iuv_in)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("--fg", compose_args.fg)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("--fg-mask", compose_args.fg_mask)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("--target-iuv", compose_args.target_iuv)->required()->check(CLI::ExistingFile);
    compose_cmd->add_option("--matte", compose_args.matte)->check(CLI::ExistingFile);
    compose_cmd->add_option("--invalid", compose_args.invalid, "alignment mask M")->check(CLI::ExistingFile);
    compose_cmd->add_option("--out", compose_args.out)->required();

    // unselfie
    struct {
        std::string selfie, iuv, db, out_dir;
        std::optional<std::size_t> k;
    } run_args;
    auto* run_cmd = app.add_subcommand("unselfie", "full pipeline: k neutral-pose candidates for one selfie");
    run_cmd->add_option("--selfie", run_args.selfie)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--iuv", run_args.iuv)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--db", run_args.db)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--k", run_args.k);
    run_cmd->add_option("--out-dir", run_args.out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_isa(g.isa);
        PipelineConfig cfg = load_config(g);
        const unsigned threads = g.threads;

        if (*align_cmd) {
            const RgbImage img = io::load_rgb(align_args.img);
            const IuvMap pose = io::load_iuv(align_args.iuv);
            const AlignedSample a = align(img, pose, cfg.layout(), cfg.alignment());
            const fs::path out = align_args.out_dir;
            fs::create_directories(out);
            io::save_rgb(out / "aligned.png", a.image);
            io::save_iuv(out / "aligned_iuv.png", a.pose);
            io::save_mask(out / "invalid.png", a.invalid);
            write_text(out / "transform.txt", format_real(a.transform.scale) + " " +
                                                  format_real(a.transform.tx) + " " +
                                                  format_real(a.transform.ty) + "\n");
            stamp(out, cfg, {align_args.iuv, align_args.img});
        } else if (*ingest_cmd) {
            const double ratio = ingest_args.ratio.value_or(cfg.split_ratio);
            const IngestResult r = ingest(ingest_args.dir, ratio, threads);
            write_ingest(ingest_args.out_dir, r);
            stamp(ingest_args.out_dir, cfg, {});
            std::cout << r.index.records.size() << " pairs, " << r.train.size() << " train, "
                      << r.test.size() << " test\n";
        } else if (*build_cmd) {
            const BuildReport rep = build_database(build_args.dir, build_args.out, cfg,
                                                   parse_direction(build_args.direction), threads);
            stamp(parent_or_dot(build_args.out), cfg, {});
            for (const auto& [id, why] : rep.skipped) std::cerr << "skipped " << id << ": " << why << '\n';
            std::cout << rep.index.records.size() << " poses indexed\n";
        } else if (*search_cmd) {
            if (search_args.k) cfg.k = *search_args.k;
            if (search_args.k1) cfg.k1 = *search_args.k1;
            cfg.validate();
            const PoseDatabase db = load_database(search_args.db, cfg, threads);
            const IndexedPose q = IndexedPose::from(io::load_iuv(search_args.query), cfg.torso_part);
            const SearchResult r = search(q, db, {cfg.k, cfg.k1, threads});
            std::string text;
            for (const auto& h : r.hits) {
                text += h.id + "\t" + std::to_string(h.d_index) + "\t" + format_real(h.d_uv) + "\n";
            }
            write_text(search_args.out, text);
            stamp(parent_or_dot(search_args.out), cfg, {search_args.db, search_args.query});
        } else if (*synth_cmd) {
            const PoseDatabase portraits = load_database(synth_args.portrait_db, cfg, threads);
            const PoseDatabase selfies = load_database(synth_args.selfie_db, cfg, threads);
            PairSynthesisOptions opt;
            opt.flip = synth_args.flip;
            if (!synth_args.bg_dir.empty()) {
                for (const auto& e : fs::directory_iterator(synth_args.bg_dir)) {
                    if (e.path().extension() == ".png") opt.backgrounds.push_back(e.path());
                }
                std::sort(opt.backgrounds.begin(), opt.backgrounds.end());
                if (opt.backgrounds.empty()) throw InvalidArgument("--bg-dir holds no .png files");
            }
            const auto pairs = synthesize_pairs(portraits, selfies, cfg, opt, threads);
            write_pairs(synth_args.out_dir, pairs);
            stamp(synth_args.out_dir, cfg, {synth_args.portrait_db, synth_args.selfie_db});
            std::cout << pairs.size() << " pairs written\n";
        } else if (*inpaint_cmd) {
            const AtlasLayout layout = cfg.layout();
            const CoordinateMap c = io::load_coords(inpaint_args.coords);
            const CoordinateMap done = inpaint_coords(
                c, layout, SymmetryTable{},
                {cfg.coord_tolerance, cfg.inpaint_iteration_factor, threads});
            const RgbImage src = io::load_rgb(inpaint_args.src);
            const IuvMap pose = io::load_iuv(inpaint_args.pose);
            const RenderResult r = render(done, src, pose, layout);
            const fs::path out = inpaint_args.out_dir;
            fs::create_directories(out);
            io::save_coords(out / "C_G1", done);
            io::save_texture(out / "T_G1", r.texture);
            io::save_rgb(out / "I_G1.png", r.image);
            io::save_mask(out / "I_G1_mask.png", r.fg_mask);
            stamp(out, cfg, {inpaint_args.coords, inpaint_args.src, inpaint_args.pose});
        } else if (*g1_cmd) {
            const CoordinateMap source = io::load_coords(g1_args.coords);
            const CoordinateMap completed = io::load_coords(g1_args.completed);
            const TextureMap target = io::load_texture(g1_args.target);
            const TextureMap rendered = bilinear_sample(io::load_rgb(g1_args.src), completed);
            const G1Losses l = g1_losses(completed, source, rendered, target, source.valid,
                                         target.valid, cfg.loss, cfg.canvas_size);
            if (l.identity_mask_empty) std::cerr << "warning: V_src is empty\n";
            if (l.reconstruction_mask_empty) std::cerr << "warning: V_tgt is empty\n";
            std::cout << format_real(l.identity) << '\t' << format_real(l.reconstruction) << '\t'
                      << format_real(l.combined) << '\n';
        } else if (*g2_cmd) {
            const G2Losses l = g2_losses(io::load_rgb(g2_args.output), io::load_rgb(g2_args.target),
                                         io::load_gray(g2_args.alpha), io::load_mask(g2_args.holes),
                                         cfg.loss);
            std::cout << format_real(l.reconstruction) << '\t' << format_real(l.alpha) << '\t'
                      << format_real(l.combined) << '\n';
        } else if (*compose_cmd) {
            CompositeInputs in;
            in.selfie = io::load_rgb(compose_args.selfie);
            in.selfie_pose = io::load_iuv(compose_args.iuv_in);
            in.foreground = io::load_rgb(compose_args.fg);
            in.foreground_mask = io::load_mask(compose_args.fg_mask);
            in.target_pose = io::load_iuv(compose_args.target_iuv);
            if (!compose_args.invalid.empty()) in.invalid = io::load_mask(compose_args.invalid);
            if (!compose_args.matte.empty()) in.matte = io::load_gray(compose_args.matte);
            const CompositeSet c = compose(in, cfg);
            if (c.alpha_clamped) std::cerr << "warning: alpha outside [0,1] was clamped\n";
            const fs::path out = compose_args.out;
            fs::create_directories(parent_or_dot(out));
            io::save_rgb(out, c.output);
            io::save_gray(io::with_suffix(out, "_alpha.png"), c.alpha);
            io::save_mask(io::with_suffix(out, "_holes.png"), c.holes.combined);
            std::vector<fs::path> inputs{compose_args.selfie, compose_args.iuv_in, compose_args.fg,
                                         compose_args.fg_mask, compose_args.target_iuv};
            if (!compose_args.matte.empty()) inputs.emplace_back(compose_args.matte);
            if (!compose_args.invalid.empty()) inputs.emplace_back(compose_args.invalid);
            stamp(parent_or_dot(out), cfg, inputs);
        } else if (*run_cmd) {
            if (run_args.k) {
                cfg.k = *run_args.k;
                cfg.validate();
            }
            const PoseDatabase db = load_database(run_args.db, cfg, threads);
            const UnselfieResult r = run_unselfie(io::load_rgb(run_args.selfie),
                                                  io::load_iuv(run_args.iuv), db, cfg, threads);
            write_unselfie(run_args.out_dir, r);
            stamp(run_args.out_dir, cfg, {run_args.selfie, run_args.iuv, run_args.db});
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

#include "unselfie/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "unselfie/alignment.hpp"
#include "unselfie/io.hpp"
#include "unselfie/parallel.hpp"

namespace unselfie {

namespace {

constexpr const char* kIuvSuffix = "_iuv";

fs::path resolve(const fs::path& base, const fs::path& p) {
    return p.is_absolute() ? p : base / p;
}

fs::path relative_to(const fs::path& base, const fs::path& p) {
    std::error_code ec;
    const fs::path rel = fs::relative(fs::absolute(p), fs::absolute(base), ec);
    return ec || rel.empty() ? fs::absolute(p) : rel;
}

}  // namespace

void write_index(const fs::path& path, const DbIndex& index) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << "# direction\t" << direction_name(index.direction) << '\n';
    for (const auto& r : index.records) {
        out << r.id << '\t' << r.iuv_path.generic_string() << '\t' << r.image_path.generic_string()
            << '\t' << r.torso_pixels << '\n';
    }
    if (!out) throw FormatError(path.string() + ": write failed");
}

DbIndex read_index(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path.string() + ": cannot open index");
    const fs::path base = path.parent_path();
    DbIndex index;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) f.push_back(field);
        if (line[0] == '#') {
            if (f.size() == 2 && f[0] == "# direction") index.direction = parse_direction(f[1]);
            continue;
        }
        if (f.size() != 4) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 4 tab-separated fields");
        }
        DbRecord r{f[0], resolve(base, f[1]), resolve(base, f[2]), 0};
        try {
            r.torso_pixels = std::stoull(f[3]);
        } catch (const std::exception&) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad torso count");
        }
        index.records.push_back(std::move(r));
    }
    return index;
}

std::vector<PairFiles> scan_pairs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw FormatError(dir.string() + ": not a directory");
    std::vector<PairFiles> pairs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
        const std::string stem = entry.path().stem().string();
        if (stem.size() <= 4 || stem.substr(stem.size() - 4) != kIuvSuffix) continue;
        const std::string id = stem.substr(0, stem.size() - 4);
        const fs::path image = dir / (id + ".png");
        if (!fs::exists(image)) {
            throw FormatError(entry.path().string() + ": no matching image " + image.string());
        }
        pairs.push_back({id, image, entry.path()});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const PairFiles& a, const PairFiles& b) { return a.id < b.id; });
    return pairs;
}

IngestResult ingest(const fs::path& dir, double split_ratio, unsigned threads) {
    if (!(split_ratio >= 0.0 && split_ratio <= 1.0)) {
        throw InvalidArgument("ingest: split ratio outside [0,1]");
    }
    const auto pairs = scan_pairs(dir);
    IngestResult result;
    result.index.records.resize(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const IuvMap pose = io::load_iuv(pairs[i].iuv);
        const io::Pixels8 img = io::read_png(pairs[i].image, 3);
        if (img.width != pose.width() || img.height != pose.height()) {
            throw DimensionError(pairs[i].image.string() + ": size differs from " +
                                 pairs[i].iuv.string());
        }
        result.index.records[i] = {pairs[i].id, pairs[i].iuv, pairs[i].image,
                                   torso_mask(pose).pixel_count()};
    });
    const auto n_train =
        static_cast<std::size_t>(std::llround(split_ratio * static_cast<double>(pairs.size())));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        (i < n_train ? result.train : result.test).push_back(pairs[i].id);
    }
    return result;
}

void write_ingest(const fs::path& out_dir, const IngestResult& result) {
    fs::create_directories(out_dir);
    DbIndex index = result.index;
    for (auto& r : index.records) {
        r.iuv_path = relative_to(out_dir, r.iuv_path);
        r.image_path = relative_to(out_dir, r.image_path);
    }
    write_index(out_dir / "db.idx", index);
    std::ofstream split(out_dir / "split.txt");
    for (const auto& id : result.train) split << "train\t" << id << '\n';
    for (const auto& id : result.test) split << "test\t" << id << '\n';
    if (!split) throw FormatError((out_dir / "split.txt").string() + ": write failed");
}

BuildReport build_database(const fs::path& dir, const fs::path& index_path,
                           const PipelineConfig& cfg, PoseDirection direction, unsigned threads) {
    const auto pairs = scan_pairs(dir);
    const fs::path base = index_path.has_parent_path() ? index_path.parent_path() : fs::path(".");
    const fs::path aligned_dir = base / "aligned";
    fs::create_directories(aligned_dir);
    const AtlasLayout layout = cfg.layout();
    const AlignmentSpec spec = cfg.alignment();

    std::vector<std::optional<DbRecord>> records(pairs.size());
    std::vector<std::string> failures(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const RgbImage img = io::load_rgb(pairs[i].image);
        const IuvMap pose = io::load_iuv(pairs[i].iuv);
        try {
            const AlignedSample s = align(img, pose, layout, spec);
            const fs::path img_out = aligned_dir / (pairs[i].id + ".png");
            const fs::path iuv_out = aligned_dir / (pairs[i].id + "_iuv.png");
            io::save_rgb(img_out, s.image);
            io::save_iuv(iuv_out, s.pose);
            records[i] = DbRecord{pairs[i].id, relative_to(base, iuv_out),
                                  relative_to(base, img_out),
                                  torso_mask(s.pose, cfg.torso_part).pixel_count()};
        } catch (const ShoulderNotFoundError& e) {
            failures[i] = e.what();
        } catch (const DegenerateTransformError& e) {
            failures[i] = e.what();
        }
    });

    BuildReport report;
    report.index.direction = direction;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (records[i]) {
            report.index.records.push_back(*records[i]);
        } else {
            report.skipped.emplace_back(pairs[i].id, failures[i]);
        }
    }
    write_index(index_path, report.index);
    return report;
}

PoseDatabase load_database(const fs::path& index_path, const PipelineConfig& cfg,
                           unsigned threads) {
    const DbIndex index = read_index(index_path);
    std::vector<IndexedPose> poses(index.records.size());
    parallel_for(index.records.size(), threads, [&](std::size_t i) {
        poses[i] = IndexedPose::from(io::load_iuv(index.records[i].iuv_path), cfg.torso_part);
    });
    PoseDatabase db(cfg.canvas_size, index.direction);
    for (std::size_t i = 0; i < index.records.size(); ++i) {
        const auto& r = index.records[i];
        db.add({r.id, std::move(poses[i]), r.iuv_path.string(), r.image_path.string()});
    }
    return db;
}

}  // namespace unselfie

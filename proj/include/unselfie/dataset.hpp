#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "unselfie/config.hpp"
#include "unselfie/pose_search.hpp"

namespace unselfie {

namespace fs = std::filesystem;

/// One line of a database index.
struct DbRecord {
    std::string id;
    fs::path iuv_path;
    fs::path image_path;
    std::size_t torso_pixels = 0;

    friend bool operator==(const DbRecord&, const DbRecord&) = default;
};

struct DbIndex {
    PoseDirection direction = PoseDirection::Neutral;
    std::vector<DbRecord> records;
};

/// Index file: an optional "# direction\t<neutral|selfie>" header followed by
/// one tab-separated record per line: id, iuv path, image path, torso pixel
/// count. Relative paths are relative to the index file's directory.
void write_index(const fs::path& path, const DbIndex& index);
DbIndex read_index(const fs::path& path);

/// An (image, IUV) pair found on disk: `<id>_iuv.png` next to `<id>.png`.
struct PairFiles {
    std::string id;
    fs::path image;
    fs::path iuv;
};

/// Pairs in `dir` sorted by id. IUV files without an image are an error.
std::vector<PairFiles> scan_pairs(const fs::path& dir);

struct IngestResult {
    DbIndex index;
    std::vector<std::string> train;
    std::vector<std::string> test;
};

/// Validates every pair (PNG decodes, part labels <= 24, image and IUV sizes
/// agree) and splits ids in sorted order: the first round(ratio * n) go to
/// training, the rest to test. Errors name the offending file.
IngestResult ingest(const fs::path& dir, double split_ratio, unsigned threads = 1);

/// Writes `<out_dir>/db.idx` and `<out_dir>/split.txt` ("train|test\t<id>" lines).
void write_ingest(const fs::path& out_dir, const IngestResult& result);

struct BuildReport {
    DbIndex index;
    /// (id, reason) for pairs that could not be aligned.
    std::vector<std::pair<std::string, std::string>> skipped;
};

/// Aligns every pair of `dir` onto the canvas, writes the aligned image and
/// pose under `<index dir>/aligned/`, and writes the index at `index_path`.
BuildReport build_database(const fs::path& dir, const fs::path& index_path,
                           const PipelineConfig& cfg, PoseDirection direction,
                           unsigned threads = 1);

/// Loads an index and all its poses; every pose must already be canvas-sized.
PoseDatabase load_database(const fs::path& index_path, const PipelineConfig& cfg,
                           unsigned threads = 1);

}  // namespace unselfie

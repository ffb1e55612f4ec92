#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "unselfie/dataset.hpp"
#include "unselfie/error.hpp"
#include "unselfie/io.hpp"

using namespace unselfie;
using namespace unselfie::testing;

namespace {

void write_pair(const fs::path& dir, const std::string& id, std::uint64_t seed, int w = 96,
                int h = 120) {
    const AtlasLayout layout;
    Rng rng(seed);
    const BodySpec s = random_body(rng, w, h, false);
    io::save_iuv(dir / (id + "_iuv.png"), synthetic_body(s, layout));
    io::save_rgb(dir / (id + ".png"), synthetic_photo(w, h, seed));
}

}  // namespace

TEST_CASE("scan finds pairs sorted by id") {
    const auto dir = temp_dir("ds_scan");
    write_pair(dir, "b", 1);
    write_pair(dir, "a", 2);
    const auto pairs = scan_pairs(dir);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].id == "a");
    CHECK(pairs[1].image.filename() == "b.png");

    io::save_iuv(dir / "c_iuv.png", IuvMap(4, 4));
    CHECK_THROWS_AS(scan_pairs(dir), FormatError);
}

TEST_CASE("ingest splits in sorted order") {
    const auto dir = temp_dir("ds_ingest");
    for (int i = 0; i < 5; ++i) write_pair(dir, "p" + std::to_string(i), i);
    const IngestResult r = ingest(dir, 0.6);
    CHECK(r.index.records.size() == 5);
    CHECK(r.train == std::vector<std::string>{"p0", "p1", "p2"});
    CHECK(r.test == std::vector<std::string>{"p3", "p4"});
    for (const auto& rec : r.index.records) CHECK(rec.torso_pixels > 0);

    write_ingest(dir, r);
    const DbIndex back = read_index(dir / "db.idx");
    CHECK(back.records == r.index.records);
    std::ifstream split(dir / "split.txt");
    std::string line;
    std::getline(split, line);
    CHECK(line == "train\tp0");
}

TEST_CASE("ingest names a pair whose sizes disagree") {
    const auto dir = temp_dir("ds_mismatch");
    write_pair(dir, "ok", 1);
    io::save_iuv(dir / "bad_iuv.png", IuvMap(10, 10));
    io::save_rgb(dir / "bad.png", RgbImage(11, 10));
    try {
        ingest(dir, 0.5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("index files resolve relative paths and keep direction") {
    const auto dir = temp_dir("ds_index");
    DbIndex idx;
    idx.direction = PoseDirection::Selfie;
    idx.records.push_back({"x", "aligned/x_iuv.png", "aligned/x.png", 12});
    write_index(dir / "db.idx", idx);
    const DbIndex back = read_index(dir / "db.idx");
    CHECK(back.direction == PoseDirection::Selfie);
    REQUIRE(back.records.size() == 1);
    CHECK(back.records[0].iuv_path == dir / "aligned/x_iuv.png");
    CHECK(back.records[0].torso_pixels == 12);

    std::ofstream(dir / "broken.idx") << "only\ttwo\n";
    CHECK_THROWS_AS(read_index(dir / "broken.idx"), FormatError);
}

TEST_CASE("built databases load as aligned poses") {
    const auto dir = temp_dir("ds_build");
    const auto src = dir / "src";
    fs::create_directories(src);
    for (int i = 0; i < 4; ++i) write_pair(src, "n" + std::to_string(i), 10 + i);
    io::save_iuv(src / "empty_iuv.png", IuvMap(40, 40));
    io::save_rgb(src / "empty.png", RgbImage(40, 40));

    const PipelineConfig cfg;
    const BuildReport rep = build_database(src, dir / "db" / "db.idx", cfg, PoseDirection::Neutral);
    CHECK(rep.index.records.size() == 4);
    REQUIRE(rep.skipped.size() == 1);
    CHECK(rep.skipped[0].first == "empty");
    CHECK(fs::exists(dir / "db" / "aligned" / "n0_iuv.png"));

    const PoseDatabase db = load_database(dir / "db" / "db.idx", cfg);
    CHECK(db.size() == 4);
    CHECK(db[0].indexed.pose.width() == 256);
    CHECK(db[0].id == "n0");

    const PoseDatabase again = load_database(dir / "db" / "db.idx", cfg, 3);
    CHECK(again[2].indexed.pose.parts() == db[2].indexed.pose.parts());
}

TEST_CASE("loading an unaligned index fails") {
    const auto dir = temp_dir("ds_unaligned");
    write_pair(dir, "raw", 3);
    const IngestResult r = ingest(dir, 1.0);
    write_ingest(dir, r);
    CHECK_THROWS_AS(load_database(dir / "db.idx", PipelineConfig{}), DimensionError);
}

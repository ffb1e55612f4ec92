#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"

namespace unselfie {

/// Label conventions of the 24-part dense pose model used by search and compositing.
struct PartConvention {
    int front_torso = 2;
    std::vector<int> head = {23, 24};
};

/// Front-torso pixels R of an aligned pose (head excluded by construction).
struct TorsoMask {
    BitMask mask;

    std::size_t pixel_count() const { return count(mask); }
};

TorsoMask torso_mask(const IuvMap& pose, int front_torso_part = 2);

/// A pose together with its precomputed torso mask.
struct IndexedPose {
    IuvMap pose;
    TorsoMask torso;

    static IndexedPose from(IuvMap pose, int front_torso_part = 2);
};

/// Pixels of R1 ∪ R2 whose part labels differ.
std::size_t d_index(const IndexedPose& a, const IndexedPose& b);

/// Sum of surface-coordinate distances over R1 ∩ R2, plus |R1 ∩ R2|.
struct UvDistance {
    double value = 0.0;
    std::size_t overlap = 0;
};
UvDistance d_uv_detail(const IndexedPose& a, const IndexedPose& b);

inline double d_uv(const IndexedPose& a, const IndexedPose& b) { return d_uv_detail(a, b).value; }

enum class PoseDirection { Neutral, Selfie };

const char* direction_name(PoseDirection d) noexcept;
PoseDirection parse_direction(const std::string& s);

struct PoseEntry {
    std::string id;
    IndexedPose indexed;
    std::string iuv_path;
    std::string image_path;
};

/// Read-only collection of aligned poses searched by d_index then d_uv.
class PoseDatabase {
public:
    explicit PoseDatabase(int canvas_size = 256, PoseDirection direction = PoseDirection::Neutral)
        : canvas_size_(canvas_size), direction_(direction) {}

    /// Rejects duplicate ids and poses that are not canvas-sized.
    void add(PoseEntry entry);

    int canvas_size() const noexcept { return canvas_size_; }
    PoseDirection direction() const noexcept { return direction_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const PoseEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<PoseEntry>& entries() const noexcept { return entries_; }

private:
    int canvas_size_;
    PoseDirection direction_;
    std::vector<PoseEntry> entries_;
};

struct SearchOptions {
    std::size_t k = 5;
    std::size_t k1 = 40;
    unsigned threads = 1;
};

struct SearchHit {
    std::size_t entry = 0;
    std::string id;
    std::size_t d_index = 0;
    double d_uv = 0.0;
    /// |R_query ∩ R_entry|; hits with no overlap rank after all others.
    std::size_t overlap = 0;
};

struct SearchResult {
    std::vector<SearchHit> hits;
    std::size_t k = 0;
};

/// Two-step retrieval: keep the k1 entries with the smallest d_index (ties by
/// id), then order those by d_uv and return the first k. Candidates whose
/// torso does not overlap the query's rank last; remaining ties go to
/// d_index, then id.
SearchResult search(const IndexedPose& query, const PoseDatabase& db, const SearchOptions& opt);

/// Ordering used by the rerank step, exposed for tests and tooling.
bool rerank_less(const SearchHit& a, const SearchHit& b);

}  // namespace unselfie

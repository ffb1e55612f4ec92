#include "unselfie/pose_search.hpp"

#include <algorithm>
#include <string>

#include "unselfie/parallel.hpp"
#include "unselfie/simd/kernels.hpp"

namespace unselfie {

TorsoMask torso_mask(const IuvMap& pose, int front_torso_part) {
    const int labels[] = {front_torso_part};
    return {pose.part_mask(labels)};
}

IndexedPose IndexedPose::from(IuvMap pose, int front_torso_part) {
    TorsoMask torso = torso_mask(pose, front_torso_part);
    return {std::move(pose), std::move(torso)};
}

std::size_t d_index(const IndexedPose& a, const IndexedPose& b) {
    require_same_shape(a.pose.parts(), b.pose.parts(), "d_index");
    require_same_shape(a.pose.parts(), a.torso.mask, "d_index");
    require_same_shape(b.pose.parts(), b.torso.mask, "d_index");
    return simd::count_label_mismatch(a.pose.parts().pixels(), b.pose.parts().pixels(),
                                      a.torso.mask.pixels(), b.torso.mask.pixels());
}

UvDistance d_uv_detail(const IndexedPose& a, const IndexedPose& b) {
    require_same_shape(a.pose.parts(), b.pose.parts(), "d_uv");
    require_same_shape(a.pose.parts(), a.torso.mask, "d_uv");
    require_same_shape(b.pose.parts(), b.torso.mask, "d_uv");
    const auto s = simd::uv_distance_sum(a.pose.us().pixels(), a.pose.vs().pixels(),
                                         b.pose.us().pixels(), b.pose.vs().pixels(),
                                         a.torso.mask.pixels(), b.torso.mask.pixels());
    return {s.sum, s.overlap};
}

const char* direction_name(PoseDirection d) noexcept {
    return d == PoseDirection::Selfie ? "selfie" : "neutral";
}

PoseDirection parse_direction(const std::string& s) {
    if (s == "neutral") return PoseDirection::Neutral;
    if (s == "selfie") return PoseDirection::Selfie;
    throw FormatError("unknown pose direction '" + s + "'");
}

void PoseDatabase::add(PoseEntry entry) {
    const IuvMap& p = entry.indexed.pose;
    if (p.width() != canvas_size_ || p.height() != canvas_size_) {
        throw DimensionError("pose '" + entry.id + "' is " + std::to_string(p.width()) + "x" +
                             std::to_string(p.height()) + ", database canvas is " +
                             std::to_string(canvas_size_) + "; align it first");
    }
    require_same_shape(p.parts(), entry.indexed.torso.mask, "PoseDatabase::add");
    for (const auto& e : entries_) {
        if (e.id == entry.id) throw InvalidArgument("duplicate pose id '" + entry.id + "'");
    }
    entries_.push_back(std::move(entry));
}

bool rerank_less(const SearchHit& a, const SearchHit& b) {
    const bool a_empty = a.overlap == 0;
    const bool b_empty = b.overlap == 0;
    if (a_empty != b_empty) return b_empty;
    if (a.d_uv != b.d_uv) return a.d_uv < b.d_uv;
    if (a.d_index != b.d_index) return a.d_index < b.d_index;
    return a.id < b.id;
}

SearchResult search(const IndexedPose& query, const PoseDatabase& db, const SearchOptions& opt) {
    if (db.empty()) throw EmptyDatabaseError("search: pose database is empty");
    if (opt.k == 0 || opt.k > opt.k1) {
        throw InvalidArgument("search: need 0 < k <= k1 (k=" + std::to_string(opt.k) +
                              ", k1=" + std::to_string(opt.k1) + ")");
    }
    const IuvMap& q = query.pose;
    if (q.width() != db.canvas_size() || q.height() != db.canvas_size()) {
        throw DimensionError("search: query is not aligned to the " +
                             std::to_string(db.canvas_size()) + " px canvas");
    }

    std::vector<SearchHit> hits(db.size());
    parallel_for(db.size(), opt.threads, [&](std::size_t i) {
        hits[i].entry = i;
        hits[i].id = db[i].id;
        hits[i].d_index = d_index(query, db[i].indexed);
    });

    const std::size_t keep = std::min(opt.k1, hits.size());
    auto by_index = [](const SearchHit& a, const SearchHit& b) {
        if (a.d_index != b.d_index) return a.d_index < b.d_index;
        return a.id < b.id;
    };
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                      by_index);
    hits.resize(keep);

    parallel_for(hits.size(), opt.threads, [&](std::size_t i) {
        const UvDistance d = d_uv_detail(query, db[hits[i].entry].indexed);
        hits[i].d_uv = d.value;
        hits[i].overlap = d.overlap;
    });
    std::sort(hits.begin(), hits.end(), rerank_less);
    hits.resize(std::min(opt.k, hits.size()));
    return {std::move(hits), opt.k};
}

}  // namespace unselfie

#include "unselfie/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace unselfie {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

}  // namespace

DiffusionReport diffuse_fill(std::span<double> values, int channels, const BitMask& known,
                             const BitMask& region, const DiffusionOptions& options,
                             BitMask& filled) {
    require_same_shape(known, region, "diffuse_fill");
    const int w = known.width();
    const int h = known.height();
    if (values.size() != known.size() * static_cast<std::size_t>(channels)) {
        throw DimensionError("diffuse_fill: value buffer does not match grid");
    }
    filled = BitMask(w, h);

    BitMask assigned(w, h);
    std::vector<std::size_t> pending;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = known.index(x, y);
            if (!region[i]) continue;
            if (known[i]) {
                assigned[i] = 1;
            } else {
                pending.push_back(i);
            }
        }
    }

    // Seeding: each layer only reads cells assigned by earlier layers, so the
    // result does not depend on visiting order.
    std::vector<std::size_t> fill_order;
    std::vector<double> sum(static_cast<std::size_t>(channels));
    while (!pending.empty()) {
        std::vector<std::size_t> layer;
        std::vector<double> layer_values;
        std::vector<std::size_t> rest;
        for (std::size_t i : pending) {
            const int x = static_cast<int>(i % static_cast<std::size_t>(w));
            const int y = static_cast<int>(i / static_cast<std::size_t>(w));
            std::fill(sum.begin(), sum.end(), 0.0);
            int n = 0;
            for (int k = 0; k < 4; ++k) {
                const int nx = x + kDx[k];
                const int ny = y + kDy[k];
                if (!known.contains(nx, ny)) continue;
                const std::size_t j = known.index(nx, ny);
                if (!assigned[j]) continue;
                for (int c = 0; c < channels; ++c) sum[c] += values[j * channels + c];
                ++n;
            }
            if (n == 0) {
                rest.push_back(i);
                continue;
            }
            layer.push_back(i);
            for (int c = 0; c < channels; ++c) layer_values.push_back(sum[c] / n);
        }
        if (layer.empty()) break;
        for (std::size_t l = 0; l < layer.size(); ++l) {
            const std::size_t i = layer[l];
            for (int c = 0; c < channels; ++c) values[i * channels + c] = layer_values[l * channels + c];
            assigned[i] = 1;
            filled[i] = 1;
            fill_order.push_back(i);
        }
        pending = std::move(rest);
    }

    DiffusionReport report;
    if (fill_order.empty()) return report;

    std::sort(fill_order.begin(), fill_order.end());
    std::vector<double> next(fill_order.size() * static_cast<std::size_t>(channels));
    report.converged = false;
    while (report.iterations < options.max_iterations) {
        double change = 0.0;
        for (std::size_t f = 0; f < fill_order.size(); ++f) {
            const std::size_t i = fill_order[f];
            const int x = static_cast<int>(i % static_cast<std::size_t>(w));
            const int y = static_cast<int>(i / static_cast<std::size_t>(w));
            std::fill(sum.begin(), sum.end(), 0.0);
            int n = 0;
            for (int k = 0; k < 4; ++k) {
                const int nx = x + kDx[k];
                const int ny = y + kDy[k];
                if (!known.contains(nx, ny)) continue;
                const std::size_t j = known.index(nx, ny);
                if (!assigned[j]) continue;
                for (int c = 0; c < channels; ++c) sum[c] += values[j * channels + c];
                ++n;
            }
            for (int c = 0; c < channels; ++c) {
                const double v = sum[c] / n;
                change = std::max(change, std::abs(v - values[i * channels + c]));
                next[f * channels + c] = v;
            }
        }
        for (std::size_t f = 0; f < fill_order.size(); ++f) {
            const std::size_t i = fill_order[f];
            for (int c = 0; c < channels; ++c) values[i * channels + c] = next[f * channels + c];
        }
        ++report.iterations;
        report.last_change = change;
        if (change < options.tolerance) {
            report.converged = true;
            break;
        }
    }
    return report;
}

}  // namespace unselfie

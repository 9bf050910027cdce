#include "rwmark/reference.hpp"

#include <bit>

#include "rwmark/errors.hpp"

namespace rwmark::ref {

PairScan scan_pairs(const GrayImage& img) {
    const int ppr = img.width / 2;
    PairScan s;
    for (int r = 0; r < img.height; ++r) {
        for (int p = 0; p < ppr; ++p) {
            AlphaDelta ad = forward_transform(img.at(r, 2 * p), img.at(r, 2 * p + 1));
            PairClass pc = classify_pair(ad.alpha, ad.delta);
            s.alpha.push_back(static_cast<std::int16_t>(ad.alpha));
            s.delta.push_back(static_cast<std::int16_t>(ad.delta));
            s.expandable.push_back(pc.expandable ? 1u : 0u);
            s.changeable.push_back(pc.changeable ? 1u : 0u);
        }
    }
    return s;
}

double ssim(const GrayImage& x, const GrayImage& y, const SsimParams& params) {
    if (x.width != y.width || x.height != y.height)
        throw DimensionMismatch("metrics: images differ in size");
    if (params.mode == SsimMode::global) {
        if (x.size() < 2)
            throw TooSmall("ssim: need at least two samples");
        std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uint64_t a = x.samples[i], b = y.samples[i];
            sx += a;
            sy += b;
            sxx += a * a;
            syy += b * b;
            sxy += a * b;
        }
        return detail::ssim_point(sx, sy, sxx, syy, sxy, static_cast<double>(x.size()),
                                  params.c1(), params.c2());
    }
    const int k = params.window;
    if (k < 2 || x.width < k || x.height < k)
        throw TooSmall("ssim: image smaller than one window");
    const int wn = x.width - k + 1, hn = x.height - k + 1;
    const double n = static_cast<double>(k) * k;
    double total = 0.0;
    for (int r = 0; r < hn; ++r) {
        double acc = 0.0;
        for (int c = 0; c < wn; ++c) {
            std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    std::uint64_t a = x.at(r + i, c + j), b = y.at(r + i, c + j);
                    sx += a;
                    sy += b;
                    sxx += a * a;
                    syy += b * b;
                    sxy += a * b;
                }
            acc += detail::ssim_point(sx, sy, sxx, syy, sxy, n, params.c1(), params.c2());
        }
        total += acc;
    }
    return total / (static_cast<double>(wn) * hn);
}

double mse(const GrayImage& x, const GrayImage& y) {
    if (x.width != y.width || x.height != y.height)
        throw DimensionMismatch("metrics: images differ in size");
    std::uint64_t sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        long long d = static_cast<long long>(x.samples[i]) - y.samples[i];
        sse += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sse) / static_cast<double>(x.size());
}

BitplaneDiff bitplane_diff(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("bitplane_diff: images differ in size");
    BitplaneDiff d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned x = a.samples[i] ^ b.samples[i];
        if (!x)
            continue;
        d.positions.push_back(static_cast<std::uint32_t>(i));
        for (int k = 0; k < 8; ++k)
            if ((x >> k) & 1u)
                ++d.plane_counts[k];
    }
    return d;
}

} // namespace rwmark::ref

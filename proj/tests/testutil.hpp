#ifndef RWMARK_TESTUTIL_HPP
#define RWMARK_TESTUTIL_HPP

#include <algorithm>
#include <cmath>

#include "rwmark/codec.hpp"
#include "rwmark/image.hpp"

namespace rwmark::testutil {

inline double uniform(Xorshift64Star& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng.next() >> 11) * 0x1.0p-53);
}

// Seeded random field that is smooth the way natural images are: a sum of
// four low-frequency sinusoids. Smoothness keeps pixel pairs expandable,
// which difference expansion needs; pure noise has near-zero capacity.
inline GrayImage smooth_test_image(int w, int h, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    struct Term {
        double phase, fx, fy, amp;
    };
    Term t[4];
    for (Term& term : t) {
        term.phase = uniform(rng, 0.0, 2.0 * M_PI);
        term.fx = uniform(rng, 0.5, 3.0) / w;
        term.fy = uniform(rng, 0.5, 3.0) / h;
        term.amp = uniform(rng, 10.0, 50.0);
    }
    GrayImage img(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double v = 128.0;
            for (const Term& term : t)
                v += term.amp * std::sin(2.0 * M_PI * (term.fx * c + term.fy * r) + term.phase);
            img.at(r, c) = static_cast<std::uint8_t>(
                std::clamp(static_cast<int>(std::lround(v)), 0, 255));
        }
    return img;
}

// Uniform noise; the worst case for difference expansion.
inline GrayImage noise_test_image(int w, int h, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    GrayImage img(w, h);
    for (auto& px : img.samples)
        px = static_cast<std::uint8_t>(rng.next() & 0xFF);
    return img;
}

// Deterministic 512x512 host with ridged texture for the quality and
// timing sweeps; enough structure for large payloads, enough variance for
// stable similarity scores.
inline GrayImage ridged_host(int w = 512, int h = 512) {
    GrayImage img(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double v = 128.0 +
                       80.0 * std::sin(2.0 * M_PI * (c * 3.0 / w) +
                                       0.7 * std::sin(2.0 * M_PI * r * 2.0 / h)) +
                       30.0 * std::sin(2.0 * M_PI * (r * 1.3 / h + c * 0.9 / w));
            img.at(r, c) = static_cast<std::uint8_t>(
                std::clamp(static_cast<int>(std::lround(v)), 0, 255));
        }
    return img;
}

} // namespace rwmark::testutil

#endif

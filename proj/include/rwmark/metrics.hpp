#ifndef RWMARK_METRICS_HPP
#define RWMARK_METRICS_HPP

#include <cstdint>

#include "rwmark/image.hpp"

namespace rwmark {

enum class SsimMode { global, windowed };

struct SsimParams {
    double k1 = 0.01;
    double k2 = 0.03;
    double range = 255.0;
    SsimMode mode = SsimMode::global;
    int window = 8;

    double c1() const { return (k1 * range) * (k1 * range); }
    double c2() const { return (k2 * range) * (k2 * range); }
};

// Whole-image first and second order statistics with unbiased (n-1)
// normalization. Accumulation is in exact integers, so results do not
// depend on summation order or thread count.
struct SsimStats {
    double mu_x;
    double mu_y;
    double sigma_x;  // standard deviation
    double sigma_y;
    double sigma_xy; // covariance
};

SsimStats ssim_stats(const GrayImage& x, const GrayImage& y);

// Structural similarity. Global mode evaluates one term over the whole
// image; windowed mode averages the term over every 8x8 (or `window`
// squared) window at stride 1, uniformly weighted. Identical images score
// exactly 1.0 in both modes.
double ssim(const GrayImage& x, const GrayImage& y, const SsimParams& params = {});

double mse(const GrayImage& x, const GrayImage& y);

// Peak signal-to-noise ratio in dB against peak 255; +infinity for
// identical images.
double psnr(const GrayImage& x, const GrayImage& y);

namespace detail {

// One similarity term from raw integer sums over n samples. Shared by the
// production and reference paths so any disagreement between them isolates
// to how the sums were gathered.
double ssim_point(std::uint64_t sx, std::uint64_t sy, std::uint64_t sxx, std::uint64_t syy,
                  std::uint64_t sxy, double n, double c1, double c2);

} // namespace detail

} // namespace rwmark

#endif

#include "rwmark/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rwmark/errors.hpp"

namespace rwmark {

namespace {

void check_dims(const GrayImage& x, const GrayImage& y) {
    if (x.width != y.width || x.height != y.height)
        throw DimensionMismatch("metrics: images differ in size");
}

struct IntSums {
    std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
};

IntSums global_sums(const GrayImage& x, const GrayImage& y) {
    const long long n = static_cast<long long>(x.size());
    std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
#pragma omp parallel for reduction(+ : sx, sy, sxx, syy, sxy)
    for (long long i = 0; i < n; ++i) {
        std::uint64_t a = x.samples[i], b = y.samples[i];
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    return {sx, sy, sxx, syy, sxy};
}

// Summed-area table: at(r, c) = sum over the r x c top-left rectangle.
struct Integral {
    std::size_t stride;
    std::vector<std::uint64_t> v;

    std::uint64_t at(std::size_t r, std::size_t c) const { return v[r * stride + c]; }

    // Sum over rows [r, r+k) x cols [c, c+k). Wraparound-free because the
    // true value is nonnegative.
    std::uint64_t window(std::size_t r, std::size_t c, std::size_t k) const {
        return at(r + k, c + k) + at(r, c) - at(r, c + k) - at(r + k, c);
    }
};

template <typename F>
Integral build_integral(int w, int h, F&& sample) {
    Integral ii{static_cast<std::size_t>(w) + 1,
                std::vector<std::uint64_t>((static_cast<std::size_t>(w) + 1) * (h + 1), 0)};
    for (int r = 0; r < h; ++r) {
        std::uint64_t row = 0;
        for (int c = 0; c < w; ++c) {
            row += sample(r, c);
            ii.v[(r + 1) * ii.stride + (c + 1)] = ii.at(r, c + 1) + row;
        }
    }
    return ii;
}

double ssim_windowed(const GrayImage& x, const GrayImage& y, const SsimParams& p) {
    const int k = p.window;
    if (k < 2 || x.width < k || x.height < k)
        throw TooSmall("ssim: image smaller than one window");

    auto ix = build_integral(x.width, x.height, [&](int r, int c) -> std::uint64_t {
        return x.at(r, c);
    });
    auto iy = build_integral(x.width, x.height, [&](int r, int c) -> std::uint64_t {
        return y.at(r, c);
    });
    auto ixx = build_integral(x.width, x.height, [&](int r, int c) -> std::uint64_t {
        return static_cast<std::uint64_t>(x.at(r, c)) * x.at(r, c);
    });
    auto iyy = build_integral(x.width, x.height, [&](int r, int c) -> std::uint64_t {
        return static_cast<std::uint64_t>(y.at(r, c)) * y.at(r, c);
    });
    auto ixy = build_integral(x.width, x.height, [&](int r, int c) -> std::uint64_t {
        return static_cast<std::uint64_t>(x.at(r, c)) * y.at(r, c);
    });

    const int wn = x.width - k + 1, hn = x.height - k + 1;
    const double n = static_cast<double>(k) * k;
    const double c1 = p.c1(), c2 = p.c2();
    // Per-row partial sums combined in row order keep the result identical
    // for any thread count.
    std::vector<double> row_sum(hn, 0.0);
#pragma omp parallel for
    for (long long r = 0; r < hn; ++r) {
        double acc = 0.0;
        for (int c = 0; c < wn; ++c) {
            std::size_t rr = static_cast<std::size_t>(r), cc = static_cast<std::size_t>(c);
            acc += detail::ssim_point(ix.window(rr, cc, k), iy.window(rr, cc, k),
                                      ixx.window(rr, cc, k), iyy.window(rr, cc, k),
                                      ixy.window(rr, cc, k), n, c1, c2);
        }
        row_sum[r] = acc;
    }
    double total = 0.0;
    for (double s : row_sum)
        total += s;
    return total / (static_cast<double>(wn) * hn);
}

} // namespace

namespace detail {

double ssim_point(std::uint64_t sx, std::uint64_t sy, std::uint64_t sxx, std::uint64_t syy,
                  std::uint64_t sxy, double n, double c1, double c2) {
    double dsx = static_cast<double>(sx), dsy = static_cast<double>(sy);
    double mu_x = dsx / n, mu_y = dsy / n;
    double var_x = (static_cast<double>(sxx) - dsx * dsx / n) / (n - 1);
    double var_y = (static_cast<double>(syy) - dsy * dsy / n) / (n - 1);
    double cov = (static_cast<double>(sxy) - dsx * dsy / n) / (n - 1);
    return ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) /
           ((mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2));
}

} // namespace detail

SsimStats ssim_stats(const GrayImage& x, const GrayImage& y) {
    check_dims(x, y);
    if (x.size() < 2)
        throw TooSmall("ssim_stats: need at least two samples");
    IntSums s = global_sums(x, y);
    double n = static_cast<double>(x.size());
    double dsx = static_cast<double>(s.sx), dsy = static_cast<double>(s.sy);
    double var_x = (static_cast<double>(s.sxx) - dsx * dsx / n) / (n - 1);
    double var_y = (static_cast<double>(s.syy) - dsy * dsy / n) / (n - 1);
    double cov = (static_cast<double>(s.sxy) - dsx * dsy / n) / (n - 1);
    return {dsx / n, dsy / n, std::sqrt(std::max(var_x, 0.0)), std::sqrt(std::max(var_y, 0.0)),
            cov};
}

double ssim(const GrayImage& x, const GrayImage& y, const SsimParams& params) {
    check_dims(x, y);
    if (params.mode == SsimMode::windowed)
        return ssim_windowed(x, y, params);
    if (x.size() < 2)
        throw TooSmall("ssim: need at least two samples");
    IntSums s = global_sums(x, y);
    return detail::ssim_point(s.sx, s.sy, s.sxx, s.syy, s.sxy, static_cast<double>(x.size()),
                              params.c1(), params.c2());
}

double mse(const GrayImage& x, const GrayImage& y) {
    check_dims(x, y);
    const long long n = static_cast<long long>(x.size());
    std::uint64_t sse = 0;
#pragma omp parallel for reduction(+ : sse)
    for (long long i = 0; i < n; ++i) {
        long long d = static_cast<long long>(x.samples[i]) - y.samples[i];
        sse += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sse) / static_cast<double>(n);
}

double psnr(const GrayImage& x, const GrayImage& y) {
    check_dims(x, y);
    const long long n = static_cast<long long>(x.size());
    std::uint64_t sse = 0;
#pragma omp parallel for reduction(+ : sse)
    for (long long i = 0; i < n; ++i) {
        long long d = static_cast<long long>(x.samples[i]) - y.samples[i];
        sse += static_cast<std::uint64_t>(d * d);
    }
    if (sse == 0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 * static_cast<double>(n) / static_cast<double>(sse));
}

} // namespace rwmark

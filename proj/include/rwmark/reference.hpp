#ifndef RWMARK_REFERENCE_HPP
#define RWMARK_REFERENCE_HPP

#include "rwmark/de.hpp"
#include "rwmark/image.hpp"
#include "rwmark/metrics.hpp"

// Serial twins of the parallel kernels. Each is a direct single-threaded
// loop with no shared intermediate machinery (the windowed reference sums
// every window afresh instead of using summed-area tables), kept as the
// ground truth the production kernels must match bit for bit.
namespace rwmark::ref {

PairScan scan_pairs(const GrayImage& img);
double ssim(const GrayImage& x, const GrayImage& y, const SsimParams& params = {});
double mse(const GrayImage& x, const GrayImage& y);
BitplaneDiff bitplane_diff(const GrayImage& a, const GrayImage& b);

} // namespace rwmark::ref

#endif

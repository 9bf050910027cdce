#ifndef RWMARK_DE_HPP
#define RWMARK_DE_HPP

#include <cstdint>

#include "rwmark/bits.hpp"
#include "rwmark/image.hpp"

namespace rwmark {

// Integer pair transform: alpha is the floored mean, delta the difference.
// It is a bijection between pixel pairs in [0,255]^2 and the (alpha, delta)
// pairs whose reconstruction stays in range.
struct AlphaDelta {
    int alpha;
    int delta;
};
struct PixelPair {
    int x;
    int y;
};

AlphaDelta forward_transform(int x, int y);

// Throws OutOfRange when the reconstructed pixels would leave [0,255].
PixelPair inverse_transform(int alpha, int delta);

// Largest |delta'| (over both LSB choices) that keeps reconstruction in
// range for this alpha: min(2*(255 - alpha), 2*alpha + 1).
int region_bound(int alpha);

// A pair is expandable when delta can grow to 2*delta + b for both bit
// values without leaving range, and changeable when replacing the LSB of
// delta keeps it in range. Expandable implies changeable, and both
// operations preserve changeability, which is what makes extraction able
// to re-identify the carrier positions.
struct PairClass {
    bool expandable;
    bool changeable;
};

PairClass classify_pair(int alpha, int delta);

// The two embedding primitives and their inverses.
int expand_embed(int delta, int bit);

struct ExpandRecovered {
    int delta;
    int bit;
};
ExpandRecovered expand_recover(int delta_w);

struct LsbReplaced {
    int delta;
    int old_lsb;
};
LsbReplaced lsb_replace(int delta, int bit);

// Classification of every horizontal pixel pair in raster order (an odd
// final column is skipped). Production kernel is parallel; a serial twin
// lives in reference.hpp for equality testing.
struct PairScan {
    std::vector<std::int16_t> alpha;
    std::vector<std::int16_t> delta;
    BitVec expandable;
    BitVec changeable;

    std::size_t pairs() const { return alpha.size(); }
};

PairScan scan_pairs(const GrayImage& img);

// Which changeable positions (by rank) carry an expanded bit. Everything
// else changeable carries a replaced LSB that must be saved in the stream.
struct LocationMap {
    BitVec bits;
};

// Embedded stream layout, one bit per changeable position in raster order:
//   magic 0xD1F0 (16) | map segment bit length (24) | payload bit length
//   (24) | map segment | saved LSBs of non-expanded positions | payload |
//   zero padding
// The map segment is a polarity bit (1 means the map was complemented so
// the run-length code always sees a leading 0) followed by the run-length
// coded map.
inline constexpr std::uint16_t kDeMagic = 0xD1F0;
inline constexpr std::size_t kDeHeaderBits = 64;

// Largest payload the planner can place, 0 when even an empty stream does
// not fit (location maps of noisy images compress badly).
std::size_t de_capacity(const GrayImage& img);

GrayImage de_embed(const GrayImage& img, const BitVec& payload);

struct DeExtractResult {
    BitVec payload;
    GrayImage restored;
    LocationMap map; // as recovered from the stream, one bit per changeable rank
};

DeExtractResult de_extract(const GrayImage& img);

} // namespace rwmark

#endif

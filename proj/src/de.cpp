#include "rwmark/de.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <optional>
#include <string>

#include "rwmark/codec.hpp"
#include "rwmark/errors.hpp"

namespace rwmark {

AlphaDelta forward_transform(int x, int y) {
    assert(x >= 0 && x <= 255 && y >= 0 && y <= 255);
    return {(x + y) >> 1, x - y};
}

namespace {

// Reconstruction without the range check, for positions already proven
// safe by classification.
inline PixelPair inverse_unchecked(int alpha, int delta) {
    return {alpha + ((delta + 1) >> 1), alpha - (delta >> 1)};
}

} // namespace

PixelPair inverse_transform(int alpha, int delta) {
    PixelPair p = inverse_unchecked(alpha, delta);
    if (p.x < 0 || p.x > 255 || p.y < 0 || p.y > 255)
        throw OutOfRange("inverse_transform: pixels leave [0,255]");
    return p;
}

int region_bound(int alpha) {
    return std::min(2 * (255 - alpha), 2 * alpha + 1);
}

PairClass classify_pair(int alpha, int delta) {
    int bound = region_bound(alpha);
    int exp_hi = std::max(std::abs(2 * delta), std::abs(2 * delta + 1));
    int rep = 2 * (delta >> 1);
    int chg_hi = std::max(std::abs(rep), std::abs(rep + 1));
    return {exp_hi <= bound, chg_hi <= bound};
}

int expand_embed(int delta, int bit) {
    assert(bit == 0 || bit == 1);
    return 2 * delta + bit;
}

ExpandRecovered expand_recover(int delta_w) {
    return {delta_w >> 1, delta_w & 1};
}

LsbReplaced lsb_replace(int delta, int bit) {
    assert(bit == 0 || bit == 1);
    return {2 * (delta >> 1) + bit, delta & 1};
}

PairScan scan_pairs(const GrayImage& img) {
    const int ppr = img.width / 2;
    const std::size_t n = static_cast<std::size_t>(ppr) * img.height;
    PairScan s;
    s.alpha.resize(n);
    s.delta.resize(n);
    s.expandable.resize(n);
    s.changeable.resize(n);
#pragma omp parallel for
    for (long long r = 0; r < img.height; ++r) {
        for (int p = 0; p < ppr; ++p) {
            int x = img.at(static_cast<int>(r), 2 * p);
            int y = img.at(static_cast<int>(r), 2 * p + 1);
            AlphaDelta ad = forward_transform(x, y);
            PairClass pc = classify_pair(ad.alpha, ad.delta);
            std::size_t i = static_cast<std::size_t>(r) * ppr + p;
            s.alpha[i] = static_cast<std::int16_t>(ad.alpha);
            s.delta[i] = static_cast<std::int16_t>(ad.delta);
            s.expandable[i] = pc.expandable ? 1u : 0u;
            s.changeable[i] = pc.changeable ? 1u : 0u;
        }
    }
    return s;
}

namespace {

constexpr std::size_t kField24Max = 0xFFFFFF;

struct ChangeableIndex {
    std::vector<std::uint32_t> pair_of_rank; // changeable rank -> pair index
    std::vector<std::uint32_t> exp_ranks;    // ranks that are expandable
};

ChangeableIndex index_changeable(const PairScan& s) {
    ChangeableIndex ci;
    for (std::size_t p = 0; p < s.pairs(); ++p) {
        if (!s.changeable[p])
            continue;
        if (s.expandable[p])
            ci.exp_ranks.push_back(static_cast<std::uint32_t>(ci.pair_of_rank.size()));
        ci.pair_of_rank.push_back(static_cast<std::uint32_t>(p));
    }
    return ci;
}

// Map with the first `k` expandable ranks marked, then its wire segment:
// polarity bit plus run-length code of the (possibly complemented) map.
BitVec prefix_map(const ChangeableIndex& ci, std::size_t nc, std::size_t k) {
    BitVec map(nc, 0);
    for (std::size_t i = 0; i < k; ++i)
        map[ci.exp_ranks[i]] = 1;
    return map;
}

BitVec map_segment(const BitVec& map) {
    std::uint8_t polarity = map.empty() ? 0 : map[0];
    BitVec seg;
    seg.push_back(polarity);
    if (polarity) {
        BitVec flipped(map.size());
        for (std::size_t i = 0; i < map.size(); ++i)
            flipped[i] = map[i] ^ 1u;
        BitVec enc = rle_encode(flipped);
        seg.insert(seg.end(), enc.begin(), enc.end());
    } else {
        BitVec enc = rle_encode(map);
        seg.insert(seg.end(), enc.begin(), enc.end());
    }
    return seg;
}

struct Plan {
    std::size_t expanded;
    BitVec map;
    BitVec segment;
};

// Finds an expansion count k such that header + map segment + payload fit
// into the k expanded slots (replaced slots are a wash: each consumes one
// stream position and adds one saved LSB). The segment length depends on k,
// so iterate the budget to a fixed point; a handful of rounds settles or
// proves divergence.
std::optional<Plan> plan_stream(const ChangeableIndex& ci, std::size_t nc,
                                std::size_t payload_bits) {
    const std::size_t e = ci.exp_ranks.size();
    if (payload_bits > kField24Max)
        return std::nullopt;
    std::size_t k = kDeHeaderBits + payload_bits + 10;
    for (int round = 0; round < 16; ++round) {
        if (k > e)
            return std::nullopt;
        BitVec map = prefix_map(ci, nc, k);
        BitVec seg = map_segment(map);
        if (seg.size() > kField24Max)
            return std::nullopt;
        std::size_t need = kDeHeaderBits + seg.size() + payload_bits;
        if (need <= k)
            return Plan{k, std::move(map), std::move(seg)};
        k = need;
    }
    return std::nullopt;
}

} // namespace

std::size_t de_capacity(const GrayImage& img) {
    PairScan s = scan_pairs(img);
    ChangeableIndex ci = index_changeable(s);
    const std::size_t nc = ci.pair_of_rank.size();
    const std::size_t e = ci.exp_ranks.size();

    auto fits = [&](std::size_t p) { return plan_stream(ci, nc, p).has_value(); };

    std::size_t seg_all = map_segment(prefix_map(ci, nc, e)).size();
    std::size_t p = e > kDeHeaderBits + seg_all ? e - kDeHeaderBits - seg_all : 0;
    p = std::min(p, kField24Max);
    for (int guard = 0; p > 0 && !fits(p) && guard < 4096; ++guard)
        --p;
    if (!fits(p))
        return 0;
    for (int guard = 0; fits(p + 1) && guard < 4096; ++guard)
        ++p;
    return p;
}

GrayImage de_embed(const GrayImage& img, const BitVec& payload) {
    PairScan s = scan_pairs(img);
    ChangeableIndex ci = index_changeable(s);
    const std::size_t nc = ci.pair_of_rank.size();

    std::optional<Plan> plan = plan_stream(ci, nc, payload.size());
    if (!plan)
        throw CapacityExceeded("de_embed: cannot fit " + std::to_string(payload.size()) +
                               " payload bits");

    BitVec stream;
    stream.reserve(nc);
    append_bits(stream, kDeMagic, 16);
    append_bits(stream, plan->segment.size(), 24);
    append_bits(stream, payload.size(), 24);
    stream.insert(stream.end(), plan->segment.begin(), plan->segment.end());
    for (std::size_t j = 0; j < nc; ++j)
        if (!plan->map[j])
            stream.push_back(s.delta[ci.pair_of_rank[j]] & 1);
    stream.insert(stream.end(), payload.begin(), payload.end());
    assert(stream.size() <= nc);
    stream.resize(nc, 0);

    GrayImage out = img;
    const int ppr = img.width / 2;
#pragma omp parallel for
    for (long long j = 0; j < static_cast<long long>(nc); ++j) {
        std::uint32_t pos = ci.pair_of_rank[j];
        int alpha = s.alpha[pos];
        int delta = s.delta[pos];
        int bit = stream[j];
        int dw = plan->map[j] ? expand_embed(delta, bit) : lsb_replace(delta, bit).delta;
        PixelPair px = inverse_unchecked(alpha, dw);
        int r = static_cast<int>(pos) / ppr;
        int c = 2 * (static_cast<int>(pos) % ppr);
        out.at(r, c) = static_cast<std::uint8_t>(px.x);
        out.at(r, c + 1) = static_cast<std::uint8_t>(px.y);
    }
    return out;
}

DeExtractResult de_extract(const GrayImage& img) {
    PairScan s = scan_pairs(img);
    ChangeableIndex ci = index_changeable(s);
    const std::size_t nc = ci.pair_of_rank.size();

    if (nc < kDeHeaderBits)
        throw MalformedStream("de_extract: too few changeable positions for a header");

    BitVec stream(nc);
    for (std::size_t j = 0; j < nc; ++j)
        stream[j] = s.delta[ci.pair_of_rank[j]] & 1;

    std::size_t pos = 0;
    if (take_bits(stream, pos, 16) != kDeMagic)
        throw MalformedStream("de_extract: bad stream magic");
    std::size_t seg_bits = static_cast<std::size_t>(take_bits(stream, pos, 24));
    std::size_t payload_bits = static_cast<std::size_t>(take_bits(stream, pos, 24));
    if (kDeHeaderBits + seg_bits > nc)
        throw MalformedStream("de_extract: map segment overruns stream");
    if (seg_bits < 2)
        throw MalformedStream("de_extract: map segment too short");

    std::uint8_t polarity = stream[pos];
    BitVec coded(stream.begin() + pos + 1, stream.begin() + pos + seg_bits);
    BitVec map;
    try {
        map = rle_decode(coded, nc);
    } catch (const Malformed& e) {
        throw MalformedStream(std::string("de_extract: ") + e.what());
    }
    if (polarity)
        for (auto& b : map)
            b ^= 1u;

    std::size_t expanded = 0;
    for (auto b : map)
        expanded += b;
    std::size_t saved = nc - expanded;
    std::size_t base = kDeHeaderBits + seg_bits;
    if (base + saved + payload_bits > nc)
        throw MalformedStream("de_extract: saved bits and payload overrun stream");

    // Rank of each non-expanded position among the saved LSBs.
    std::vector<std::uint32_t> saved_rank(nc, 0);
    std::uint32_t rank = 0;
    for (std::size_t j = 0; j < nc; ++j) {
        saved_rank[j] = rank;
        if (!map[j])
            ++rank;
    }

    DeExtractResult res;
    res.payload.assign(stream.begin() + base + saved,
                       stream.begin() + base + saved + payload_bits);
    res.map.bits = map;
    res.restored = img;
    const int ppr = img.width / 2;
#pragma omp parallel for
    for (long long j = 0; j < static_cast<long long>(nc); ++j) {
        std::uint32_t p = ci.pair_of_rank[j];
        int alpha = s.alpha[p];
        int dw = s.delta[p];
        int delta = map[j] ? expand_recover(dw).delta
                           : lsb_replace(dw, stream[base + saved_rank[j]]).delta;
        PixelPair px = inverse_unchecked(alpha, delta);
        int r = static_cast<int>(p) / ppr;
        int c = 2 * (static_cast<int>(p) % ppr);
        res.restored.at(r, c) = static_cast<std::uint8_t>(px.x);
        res.restored.at(r, c + 1) = static_cast<std::uint8_t>(px.y);
    }
    return res;
}

} // namespace rwmark

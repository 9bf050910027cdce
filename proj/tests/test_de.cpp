#include <numeric>

#include "doctest.h"
#include "rwmark/codec.hpp"
#include "rwmark/de.hpp"
#include "rwmark/errors.hpp"
#include "rwmark/reference.hpp"
#include "testutil.hpp"

using namespace rwmark;

TEST_SUITE("de") {

TEST_CASE("pair transform examples") {
    AlphaDelta ad = forward_transform(206, 201);
    CHECK(ad.alpha == 203);
    CHECK(ad.delta == 5);
    PixelPair p = inverse_transform(203, 5);
    CHECK(p.x == 206);
    CHECK(p.y == 201);

    // Floor semantics for negative differences.
    ad = forward_transform(10, 13);
    CHECK(ad.alpha == 11);
    CHECK(ad.delta == -3);
    p = inverse_transform(11, -3);
    CHECK(p.x == 10);
    CHECK(p.y == 13);
}

TEST_CASE("inverse rejects out-of-range reconstruction") {
    CHECK_THROWS_AS(inverse_transform(250, 100), OutOfRange);
    CHECK_THROWS_AS(inverse_transform(0, -3), OutOfRange);
    CHECK_THROWS_AS(inverse_transform(255, 1), OutOfRange);
}

TEST_CASE("region bound examples") {
    CHECK(region_bound(203) == 104);
    CHECK(region_bound(127) == 255);
    CHECK(region_bound(0) == 1);
    CHECK(region_bound(255) == 0);
}

TEST_CASE("classification examples") {
    PairClass pc = classify_pair(203, 5);
    CHECK(pc.expandable);
    CHECK(pc.changeable);
    pc = classify_pair(127, 255);
    CHECK(!pc.expandable);
    CHECK(pc.changeable);
    pc = classify_pair(0, 3);
    CHECK(!pc.expandable);
    CHECK(!pc.changeable);
    pc = classify_pair(203, -5);
    CHECK(pc.expandable);
}

TEST_CASE("embedding primitives invert") {
    CHECK(expand_embed(5, 1) == 11);
    ExpandRecovered er = expand_recover(11);
    CHECK(er.delta == 5);
    CHECK(er.bit == 1);
    er = expand_recover(-9);
    CHECK(er.delta == -5);
    CHECK(er.bit == 1);
    CHECK(expand_embed(-5, 1) == -9);

    LsbReplaced lr = lsb_replace(5, 0);
    CHECK(lr.delta == 4);
    CHECK(lr.old_lsb == 1);
    lr = lsb_replace(-5, 1);
    CHECK(lr.delta == -5);
    CHECK(lr.old_lsb == 1);
    lr = lsb_replace(-6, 1);
    CHECK(lr.delta == -5);
    CHECK(lr.old_lsb == 0);
}

TEST_CASE("every pixel pair survives transform, expansion, and replacement") {
    // Exhaustive over the full 16-bit pair space: the transform is a
    // bijection, expandable pairs absorb either bit without leaving range,
    // changeable pairs restore their saved LSB, and both operations land
    // on pairs that classify as changeable again (extraction depends on
    // that closure).
    std::size_t expandable_count = 0, changeable_count = 0;
    for (int x = 0; x <= 255; ++x)
        for (int y = 0; y <= 255; ++y) {
            AlphaDelta ad = forward_transform(x, y);
            PixelPair p = inverse_transform(ad.alpha, ad.delta);
            REQUIRE(p.x == x);
            REQUIRE(p.y == y);
            PairClass pc = classify_pair(ad.alpha, ad.delta);
            if (pc.expandable)
                REQUIRE(pc.changeable);
            for (int bit = 0; bit <= 1; ++bit) {
                if (pc.expandable) {
                    int dw = expand_embed(ad.delta, bit);
                    PixelPair q = inverse_transform(ad.alpha, dw); // throws if out of range
                    AlphaDelta back = forward_transform(q.x, q.y);
                    REQUIRE(back.alpha == ad.alpha);
                    REQUIRE(back.delta == dw);
                    REQUIRE(classify_pair(ad.alpha, dw).changeable);
                    ExpandRecovered er = expand_recover(dw);
                    REQUIRE(er.delta == ad.delta);
                    REQUIRE(er.bit == bit);
                }
                if (pc.changeable) {
                    LsbReplaced lr = lsb_replace(ad.delta, bit);
                    inverse_transform(ad.alpha, lr.delta);
                    REQUIRE(classify_pair(ad.alpha, lr.delta).changeable);
                    REQUIRE(lsb_replace(lr.delta, lr.old_lsb).delta == ad.delta);
                }
            }
            expandable_count += pc.expandable;
            changeable_count += pc.changeable;
        }
    CHECK(expandable_count == 32640);
    CHECK(changeable_count == 65280);
}

TEST_CASE("parallel pair scan matches the serial reference") {
    for (std::uint64_t seed : {1ULL, 9ULL}) {
        GrayImage img = testutil::smooth_test_image(63, 40, seed); // odd width
        PairScan a = scan_pairs(img);
        PairScan b = ref::scan_pairs(img);
        CHECK(a.alpha == b.alpha);
        CHECK(a.delta == b.delta);
        CHECK(a.expandable == b.expandable);
        CHECK(a.changeable == b.changeable);
        CHECK(a.pairs() == static_cast<std::size_t>(31 * 40));
    }
}

TEST_CASE("round trip on smooth hosts at empty, single, and full payloads") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GrayImage host = testutil::smooth_test_image(64, 64, seed);
        std::size_t cap = de_capacity(host);
        REQUIRE(cap > 0);
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{64}, cap}) {
            BitVec payload = n ? prng_bits(seed * 1000 + n, n) : BitVec{};
            GrayImage marked = de_embed(host, payload);
            DeExtractResult res = de_extract(marked);
            REQUIRE(res.payload == payload);
            REQUIRE(res.restored == host);
        }
    }
}

TEST_CASE("capacity is the exact feasibility boundary") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        GrayImage host = testutil::smooth_test_image(64, 64, seed);
        std::size_t cap = de_capacity(host);
        CHECK_NOTHROW(de_embed(host, prng_bits(seed, cap)));
        CHECK_THROWS_AS(de_embed(host, prng_bits(seed, cap + 1)), CapacityExceeded);
    }
}

TEST_CASE("embedding only touches changeable pairs") {
    GrayImage host = testutil::smooth_test_image(64, 64, 4);
    GrayImage marked = de_embed(host, prng_bits(11, 256));
    PairScan scan = scan_pairs(host);
    BitplaneDiff d = bitplane_diff(host, marked);
    const int ppr = host.width / 2;
    for (std::uint32_t pos : d.positions) {
        int r = static_cast<int>(pos) / host.width;
        int c = static_cast<int>(pos) % host.width;
        REQUIRE(c < 2 * ppr);
        REQUIRE(scan.changeable[static_cast<std::size_t>(r) * ppr + c / 2]);
    }
}

TEST_CASE("noise hosts have no usable capacity") {
    // Location maps of noise compress to nothing, so the stream header
    // never fits; this is the known failure mode of the scheme, not a bug.
    GrayImage noise = testutil::noise_test_image(64, 64, 77);
    CHECK(de_capacity(noise) == 0);
    CHECK_THROWS_AS(de_embed(noise, prng_bits(1, 64)), CapacityExceeded);
    CHECK_THROWS_AS(de_embed(noise, {}), CapacityExceeded);
}

TEST_CASE("tiny images cannot hold the header") {
    GrayImage tiny(2, 2, 128);
    CHECK(de_capacity(tiny) == 0);
    CHECK_THROWS_AS(de_embed(tiny, BitVec{1}), CapacityExceeded);
    CHECK_THROWS_AS(de_extract(tiny), MalformedStream);
}

TEST_CASE("payloads beyond the 24-bit length field are rejected") {
    GrayImage host = testutil::smooth_test_image(64, 64, 1);
    CHECK_THROWS_AS(de_embed(host, BitVec(0x1000000, 0)), CapacityExceeded);
}

TEST_CASE("extracting from a clean image fails loudly") {
    CHECK_THROWS_AS(de_extract(GrayImage(64, 64, 128)), MalformedStream);
    CHECK_THROWS_AS(de_extract(testutil::smooth_test_image(64, 64, 8)), MalformedStream);
}

TEST_CASE("extract reports the recovered location map") {
    GrayImage host = testutil::smooth_test_image(64, 64, 6);
    GrayImage marked = de_embed(host, prng_bits(3, 200));
    DeExtractResult res = de_extract(marked);
    PairScan scan = scan_pairs(marked);
    std::size_t nc = 0;
    for (auto b : scan.changeable)
        nc += b;
    CHECK(res.map.bits.size() == nc);
    std::size_t expanded = std::accumulate(res.map.bits.begin(), res.map.bits.end(),
                                           std::size_t{0});
    CHECK(expanded >= kDeHeaderBits + 200);
}

} // TEST_SUITE

#include "rwmark/codec.hpp"

#include <array>

#include "rwmark/errors.hpp"

namespace rwmark {

namespace {

constexpr auto kCrcTable = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        t[i] = c;
    }
    return t;
}();

} // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::uint8_t b : bytes)
        c = kCrcTable[(c ^ b) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

BitVec frame_encode(const BitVec& data) {
    BitVec out;
    out.reserve(kFrameHeaderBits + data.size());
    append_bits(out, kFrameMagic, 16);
    append_bits(out, kFrameVersion, 8);
    append_bits(out, static_cast<std::uint32_t>(data.size()), 32);
    append_bits(out, crc32(pack_msb(data)), 32);
    out.insert(out.end(), data.begin(), data.end());
    return out;
}

std::uint32_t frame_peek_data_bits(const BitVec& prefix) {
    if (prefix.size() < 56)
        throw Truncated("frame: header needs 56 bits");
    std::size_t pos = 0;
    if (take_bits(prefix, pos, 16) != kFrameMagic)
        throw BadMagic("frame: bad magic");
    if (take_bits(prefix, pos, 8) != kFrameVersion)
        throw BadVersion("frame: unsupported version");
    return static_cast<std::uint32_t>(take_bits(prefix, pos, 32));
}

BitVec frame_decode(const BitVec& frame) {
    if (frame.size() < kFrameHeaderBits)
        throw Truncated("frame: shorter than header");
    std::uint32_t len = frame_peek_data_bits(frame);
    if (frame.size() < kFrameHeaderBits + len)
        throw Truncated("frame: data shorter than declared length");
    std::size_t pos = 56;
    std::uint32_t want = static_cast<std::uint32_t>(take_bits(frame, pos, 32));
    BitVec data(frame.begin() + kFrameHeaderBits, frame.begin() + kFrameHeaderBits + len);
    if (crc32(pack_msb(data)) != want)
        throw CrcMismatch("frame: crc mismatch");
    return data;
}

BitVec rle_encode(const BitVec& bits) {
    BitVec out;
    bool raw = bits.empty() || bits[0] == 1;
    std::vector<std::uint8_t> body;
    if (!raw) {
        std::uint8_t cur = 0;
        std::size_t i = 0;
        while (i < bits.size()) {
            std::size_t j = i;
            while (j < bits.size() && bits[j] == cur)
                ++j;
            std::size_t run = j - i;
            while (run >= 256) {
                body.push_back(0);
                run -= 255;
            }
            body.push_back(static_cast<std::uint8_t>(run));
            cur ^= 1u;
            i = j;
        }
        raw = body.size() * 8 > bits.size();
    }
    out.push_back(raw ? 1u : 0u);
    if (raw) {
        out.insert(out.end(), bits.begin(), bits.end());
    } else {
        for (std::uint8_t b : body)
            append_bits(out, b, 8);
    }
    return out;
}

BitVec rle_decode(const BitVec& stream, std::size_t original_length) {
    if (stream.empty())
        throw Malformed("rle: missing raw flag");
    std::size_t pos = 1;
    if (stream[0]) {
        if (stream.size() - 1 != original_length)
            throw Malformed("rle: raw length mismatch");
        return BitVec(stream.begin() + 1, stream.end());
    }
    BitVec out;
    out.reserve(original_length);
    std::uint8_t cur = 0;
    while (out.size() < original_length) {
        std::size_t run = 0;
        for (;;) {
            if (pos + 8 > stream.size())
                throw Malformed("rle: truncated run byte");
            std::uint8_t b = static_cast<std::uint8_t>(take_bits(stream, pos, 8));
            run += b ? b : 255;
            if (b)
                break;
        }
        if (out.size() + run > original_length)
            throw Malformed("rle: runs overrun original length");
        out.insert(out.end(), run, cur);
        cur ^= 1u;
    }
    if (pos != stream.size())
        throw Malformed("rle: trailing bytes after final run");
    return out;
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(seed) {
    if (seed == 0)
        throw ZeroSeed("xorshift64*: seed must be nonzero");
}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

BitVec prng_bits(std::uint64_t seed, std::size_t count) {
    Xorshift64Star rng(seed);
    BitVec out;
    out.reserve(count);
    while (out.size() < count) {
        std::uint64_t w = rng.next();
        for (int i = 63; i >= 0 && out.size() < count; --i)
            out.push_back(static_cast<std::uint8_t>((w >> i) & 1u));
    }
    return out;
}

} // namespace rwmark

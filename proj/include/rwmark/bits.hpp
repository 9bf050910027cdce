#ifndef RWMARK_BITS_HPP
#define RWMARK_BITS_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rwmark {

// One bit per element, each 0 or 1. Wasteful but simple; streams here top
// out around 10^5 bits.
using BitVec = std::vector<std::uint8_t>;

// Appends the low `nbits` of `value`, most significant first.
inline void append_bits(BitVec& out, std::uint64_t value, int nbits) {
    assert(nbits >= 0 && nbits <= 64);
    for (int i = nbits - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

// Reads `nbits` starting at `pos`, most significant first, advancing `pos`.
// Caller must have checked bounds.
inline std::uint64_t take_bits(const BitVec& bits, std::size_t& pos, int nbits) {
    assert(nbits >= 0 && nbits <= 64);
    assert(pos + static_cast<std::size_t>(nbits) <= bits.size());
    std::uint64_t v = 0;
    for (int i = 0; i < nbits; ++i)
        v = (v << 1) | bits[pos++];
    return v;
}

// Packs bits into bytes, most significant bit first, zero-padding the tail.
inline std::vector<std::uint8_t> pack_msb(const BitVec& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            bytes[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    return bytes;
}

// Inverse of pack_msb for a known bit count.
inline BitVec unpack_msb(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
    assert(bit_count <= bytes.size() * 8);
    BitVec bits(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i)
        bits[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
    return bits;
}

} // namespace rwmark

#endif

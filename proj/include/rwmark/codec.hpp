#ifndef RWMARK_CODEC_HPP
#define RWMARK_CODEC_HPP

#include <cstdint>
#include <span>

#include "rwmark/bits.hpp"

namespace rwmark {

// Reflected CRC-32 (polynomial 0xEDB88320, init and final xor 0xFFFFFFFF).
// Check value: crc32("123456789") == 0xCBF43926.
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

// Payload frame layout, most significant bit first:
//   magic 0x5257 (16) | version 0x01 (8) | data bit length (32) |
//   crc32 of the data bits packed MSB-first into zero-padded bytes (32) |
//   data bits
inline constexpr std::uint16_t kFrameMagic = 0x5257;
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameHeaderBits = 88;

BitVec frame_encode(const BitVec& data);

// Recovers the data bits. Trailing bits beyond the declared length are
// ignored so byte-padded carriers decode cleanly.
BitVec frame_decode(const BitVec& frame);

// Validates magic and version in a frame prefix and returns the declared
// data bit length without touching the data. Needs the first 56 bits.
std::uint32_t frame_peek_data_bits(const BitVec& prefix);

// Run-length code for bit vectors: a raw flag bit, then either the bits
// verbatim (flag 1) or run lengths as bytes (flag 0). Runs alternate
// starting from a zeros-run; a zero byte means "add 255 and keep reading
// the same run". Raw is chosen when the input is empty, starts with a 1
// (a leading empty run is unrepresentable), or when the run-length body
// would be longer than the input (ties favor run lengths).
BitVec rle_encode(const BitVec& bits);

// Strict inverse: consumes the entire stream and returns exactly
// `original_length` bits, else throws Malformed.
BitVec rle_decode(const BitVec& stream, std::size_t original_length);

// xorshift64* generator. Seed zero is a fixed point and is rejected.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);
    std::uint64_t next();

private:
    std::uint64_t state_;
};

// `count` pseudo-random bits, each 64-bit output emitted MSB first.
BitVec prng_bits(std::uint64_t seed, std::size_t count);

} // namespace rwmark

#endif

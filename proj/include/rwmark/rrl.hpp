#ifndef RWMARK_RRL_HPP
#define RWMARK_RRL_HPP

#include <array>
#include <cstdint>
#include <string>

#include "rwmark/bits.hpp"
#include "rwmark/image.hpp"

namespace rwmark {

// The LSB plane is processed in 8x8 blocks; each used block carries one
// payload byte in its top row after rotating the rows down by one.
inline constexpr int kRrlBlock = 8;

struct RrlGeometry {
    int block_cols;
    int block_rows;

    int blocks() const { return block_cols * block_rows; }
    std::size_t capacity_bits() const { return static_cast<std::size_t>(blocks()) * 8; }
};

RrlGeometry rrl_geometry(int width, int height);
std::size_t rrl_capacity(const GrayImage& img);

// Host-to-watermark area ratio. Embedding is comfortable from 64 down and
// refused below 8.
double gamma_ratio(int host_w, int host_h, int wm_w, int wm_h);
bool gamma_at_least(int host_w, int host_h, int wm_w, int wm_h, int threshold);

// One block's LSB rows as bytes, leftmost pixel in the most significant
// bit. Embedding pushes rows down one slot, drops the bottom row into the
// sidecar, and writes the payload byte on top.
struct RotatedRows {
    std::array<std::uint8_t, kRrlBlock> rows;
    std::uint8_t displaced;
};

RotatedRows rotate_rows_embed(const std::array<std::uint8_t, kRrlBlock>& rows,
                              std::uint8_t payload_byte);

struct UnrotatedRows {
    std::array<std::uint8_t, kRrlBlock> rows;
    std::uint8_t payload_byte;
};

// Inverts the rotation. With `displaced` the original block returns
// exactly; without it the bottom row is left as embedded, which equals the
// original seventh row (literal restoration).
UnrotatedRows rotate_rows_extract(const std::array<std::uint8_t, kRrlBlock>& rows,
                                  const std::uint8_t* displaced);

// Sidecar holding the displaced bottom rows, serialized big-endian as
//   magic 0xD1F1 (16) | block size (8) | used block count (32) |
//   (block index (32), row byte (8)) per used block
inline constexpr std::uint16_t kRecordMagic = 0xD1F1;

struct RecordEntry {
    std::uint32_t block_index;
    std::uint8_t row;
};

struct RestorationRecord {
    std::vector<RecordEntry> entries;
};

std::vector<std::uint8_t> encode_record(const RestorationRecord& rec);
RestorationRecord decode_record(const std::vector<std::uint8_t>& bytes);
void save_record(const RestorationRecord& rec, const std::string& path);
RestorationRecord load_record(const std::string& path);

struct RrlEmbedResult {
    GrayImage image;
    RestorationRecord record;
};

RrlEmbedResult rrl_embed(const GrayImage& img, const BitVec& payload);

enum class RestoreMode { exact, literal };

struct RrlExtractResult {
    BitVec payload;
    GrayImage restored;
    RestoreMode mode;
};

// The payload must start with a standard payload frame; its declared
// length tells the extractor how many blocks were used. Pass nullptr for
// literal restoration.
RrlExtractResult rrl_extract(const GrayImage& img, const RestorationRecord* record);

} // namespace rwmark

#endif

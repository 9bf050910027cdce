#include "rwmark/rrl.hpp"

#include <cassert>
#include <fstream>

#include "rwmark/codec.hpp"
#include "rwmark/errors.hpp"

namespace rwmark {

RrlGeometry rrl_geometry(int width, int height) {
    return {width / kRrlBlock, height / kRrlBlock};
}

std::size_t rrl_capacity(const GrayImage& img) {
    return rrl_geometry(img.width, img.height).capacity_bits();
}

double gamma_ratio(int host_w, int host_h, int wm_w, int wm_h) {
    return (static_cast<double>(host_w) * host_h) / (static_cast<double>(wm_w) * wm_h);
}

bool gamma_at_least(int host_w, int host_h, int wm_w, int wm_h, int threshold) {
    return static_cast<std::uint64_t>(host_w) * host_h >=
           static_cast<std::uint64_t>(threshold) * wm_w * wm_h;
}

RotatedRows rotate_rows_embed(const std::array<std::uint8_t, kRrlBlock>& rows,
                              std::uint8_t payload_byte) {
    RotatedRows out;
    out.displaced = rows[kRrlBlock - 1];
    out.rows[0] = payload_byte;
    for (int k = 1; k < kRrlBlock; ++k)
        out.rows[k] = rows[k - 1];
    return out;
}

UnrotatedRows rotate_rows_extract(const std::array<std::uint8_t, kRrlBlock>& rows,
                                  const std::uint8_t* displaced) {
    UnrotatedRows out;
    out.payload_byte = rows[0];
    for (int k = 0; k < kRrlBlock - 1; ++k)
        out.rows[k] = rows[k + 1];
    out.rows[kRrlBlock - 1] = displaced ? *displaced : rows[kRrlBlock - 1];
    return out;
}

namespace {

std::array<std::uint8_t, kRrlBlock> read_block_lsb_rows(const GrayImage& img, int block,
                                                        int block_cols) {
    int br = block / block_cols, bc = block % block_cols;
    std::array<std::uint8_t, kRrlBlock> rows{};
    for (int k = 0; k < kRrlBlock; ++k) {
        std::uint8_t byte = 0;
        for (int j = 0; j < kRrlBlock; ++j)
            byte = static_cast<std::uint8_t>((byte << 1) |
                                             (img.at(br * kRrlBlock + k, bc * kRrlBlock + j) & 1u));
        rows[k] = byte;
    }
    return rows;
}

void write_block_lsb_rows(GrayImage& img, int block, int block_cols,
                          const std::array<std::uint8_t, kRrlBlock>& rows) {
    int br = block / block_cols, bc = block % block_cols;
    for (int k = 0; k < kRrlBlock; ++k)
        for (int j = 0; j < kRrlBlock; ++j) {
            std::uint8_t& px = img.at(br * kRrlBlock + k, bc * kRrlBlock + j);
            px = static_cast<std::uint8_t>((px & ~1u) | ((rows[k] >> (7 - j)) & 1u));
        }
}

} // namespace

std::vector<std::uint8_t> encode_record(const RestorationRecord& rec) {
    std::vector<std::uint8_t> out;
    out.reserve(7 + rec.entries.size() * 5);
    out.push_back(kRecordMagic >> 8);
    out.push_back(kRecordMagic & 0xFF);
    out.push_back(kRrlBlock);
    std::uint32_t n = static_cast<std::uint32_t>(rec.entries.size());
    for (int s = 24; s >= 0; s -= 8)
        out.push_back(static_cast<std::uint8_t>(n >> s));
    for (const RecordEntry& e : rec.entries) {
        for (int s = 24; s >= 0; s -= 8)
            out.push_back(static_cast<std::uint8_t>(e.block_index >> s));
        out.push_back(e.row);
    }
    return out;
}

RestorationRecord decode_record(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 7)
        throw RecordMismatch("record: shorter than header");
    if ((bytes[0] << 8 | bytes[1]) != kRecordMagic)
        throw RecordMismatch("record: bad magic");
    if (bytes[2] != kRrlBlock)
        throw RecordMismatch("record: unexpected block size");
    std::uint32_t n = 0;
    for (int i = 3; i < 7; ++i)
        n = n << 8 | bytes[i];
    if (bytes.size() != 7 + static_cast<std::size_t>(n) * 5)
        throw RecordMismatch("record: length disagrees with entry count");
    RestorationRecord rec;
    rec.entries.reserve(n);
    std::size_t p = 7;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t idx = 0;
        for (int k = 0; k < 4; ++k)
            idx = idx << 8 | bytes[p++];
        rec.entries.push_back({idx, bytes[p++]});
    }
    return rec;
}

void save_record(const RestorationRecord& rec, const std::string& path) {
    auto bytes = encode_record(rec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoFailure("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f)
        throw IoFailure("write failed: " + path);
}

RestorationRecord load_record(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoFailure("cannot open for reading: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    if (f.bad())
        throw IoFailure("read failed: " + path);
    return decode_record(bytes);
}

RrlEmbedResult rrl_embed(const GrayImage& img, const BitVec& payload) {
    RrlGeometry geo = rrl_geometry(img.width, img.height);
    std::size_t used = (payload.size() + 7) / 8;
    if (used > static_cast<std::size_t>(geo.blocks()))
        throw CapacityExceeded("rrl_embed: " + std::to_string(payload.size()) +
                               " bits exceed capacity " + std::to_string(geo.capacity_bits()));

    std::vector<std::uint8_t> bytes = pack_msb(payload);
    RrlEmbedResult res{img, {}};
    res.record.entries.resize(used);
#pragma omp parallel for
    for (long long b = 0; b < static_cast<long long>(used); ++b) {
        auto rows = read_block_lsb_rows(img, static_cast<int>(b), geo.block_cols);
        RotatedRows rot = rotate_rows_embed(rows, bytes[b]);
        write_block_lsb_rows(res.image, static_cast<int>(b), geo.block_cols, rot.rows);
        res.record.entries[b] = {static_cast<std::uint32_t>(b), rot.displaced};
    }
    return res;
}

RrlExtractResult rrl_extract(const GrayImage& img, const RestorationRecord* record) {
    RrlGeometry geo = rrl_geometry(img.width, img.height);
    if (geo.blocks() < 7)
        throw MalformedStream("rrl_extract: image too small to hold a frame header");

    // The frame header sits in the top rows of the first blocks; parse it
    // to learn how many blocks were used.
    BitVec head;
    head.reserve(56);
    for (int b = 0; b < 7; ++b)
        append_bits(head, read_block_lsb_rows(img, b, geo.block_cols)[0], 8);
    std::uint32_t data_bits;
    try {
        data_bits = frame_peek_data_bits(head);
    } catch (const Error& e) {
        throw MalformedStream(std::string("rrl_extract: ") + e.what());
    }
    std::size_t total_bits = kFrameHeaderBits + data_bits;
    std::size_t used = (total_bits + 7) / 8;
    if (used > static_cast<std::size_t>(geo.blocks()))
        throw MalformedStream("rrl_extract: frame length exceeds image capacity");

    RrlExtractResult res;
    res.mode = record ? RestoreMode::exact : RestoreMode::literal;
    if (record) {
        if (record->entries.size() != used)
            throw RecordMismatch("rrl_extract: record entry count disagrees with frame length");
        for (std::size_t b = 0; b < used; ++b)
            if (record->entries[b].block_index != b)
                throw RecordMismatch("rrl_extract: record block indices out of order");
    }

    BitVec padded(used * 8);
    res.restored = img;
#pragma omp parallel for
    for (long long b = 0; b < static_cast<long long>(used); ++b) {
        auto rows = read_block_lsb_rows(img, static_cast<int>(b), geo.block_cols);
        const std::uint8_t* disp = record ? &record->entries[b].row : nullptr;
        UnrotatedRows un = rotate_rows_extract(rows, disp);
        write_block_lsb_rows(res.restored, static_cast<int>(b), geo.block_cols, un.rows);
        for (int i = 0; i < 8; ++i)
            padded[b * 8 + i] = (un.payload_byte >> (7 - i)) & 1u;
    }
    padded.resize(total_bits);
    res.payload = std::move(padded);
    return res;
}

} // namespace rwmark

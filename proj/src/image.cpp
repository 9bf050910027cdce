#include "rwmark/image.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

#include "rwmark/errors.hpp"

namespace rwmark {

namespace {

// Skips PGM header whitespace and '#' comments (which run to end of line).
void skip_separators(const std::vector<std::uint8_t>& b, std::size_t& pos) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n')
                ++pos;
        } else {
            break;
        }
    }
}

long parse_header_int(const std::vector<std::uint8_t>& b, std::size_t& pos) {
    skip_separators(b, pos);
    if (pos >= b.size() || !std::isdigit(b[pos]))
        throw CorruptFile("pgm: expected integer in header");
    long v = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        v = v * 10 + (b[pos] - '0');
        if (v > 1'000'000'000L)
            throw CorruptFile("pgm: header value out of range");
        ++pos;
    }
    return v;
}

} // namespace

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw UnsupportedFormat("pgm: not a binary (P5) file");
    std::size_t pos = 2;
    long w = parse_header_int(bytes, pos);
    long h = parse_header_int(bytes, pos);
    long maxval = parse_header_int(bytes, pos);
    if (w <= 0 || h <= 0)
        throw CorruptFile("pgm: non-positive dimensions");
    if (maxval != 255)
        throw UnsupportedFormat("pgm: only maxval 255 is supported");
    // Exactly one whitespace byte separates the header from the raster.
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw CorruptFile("pgm: missing separator before raster");
    ++pos;
    std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - pos < need)
        throw CorruptFile("pgm: raster shorter than header promises");
    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    std::copy(bytes.begin() + pos, bytes.begin() + pos + need, img.samples.begin());
    return img;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", img.width, img.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoFailure("cannot open for reading: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    if (f.bad())
        throw IoFailure("read failed: " + path);
    return decode_pgm(bytes);
}

void save_pgm(const GrayImage& img, const std::string& path) {
    auto bytes = encode_pgm(img);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoFailure("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f)
        throw IoFailure("write failed: " + path);
}

BitplaneDiff bitplane_diff(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("bitplane_diff: images differ in size");
    BitplaneDiff d;
    const std::size_t n = a.size();
    std::uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0, c7 = 0;
#pragma omp parallel for reduction(+ : c0, c1, c2, c3, c4, c5, c6, c7)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        unsigned x = a.samples[i] ^ b.samples[i];
        c0 += x & 1u;
        c1 += (x >> 1) & 1u;
        c2 += (x >> 2) & 1u;
        c3 += (x >> 3) & 1u;
        c4 += (x >> 4) & 1u;
        c5 += (x >> 5) & 1u;
        c6 += (x >> 6) & 1u;
        c7 += (x >> 7) & 1u;
    }
    d.plane_counts = {c0, c1, c2, c3, c4, c5, c6, c7};
    for (std::size_t i = 0; i < n; ++i)
        if (a.samples[i] != b.samples[i])
            d.positions.push_back(static_cast<std::uint32_t>(i));
    return d;
}

} // namespace rwmark

#ifndef RWMARK_IMAGE_HPP
#define RWMARK_IMAGE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rwmark {

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int r, int c) {
        return samples[static_cast<std::size_t>(r) * width + c];
    }
    std::uint8_t at(int r, int c) const {
        return samples[static_cast<std::size_t>(r) * width + c];
    }
    std::size_t size() const { return samples.size(); }

    bool operator==(const GrayImage&) const = default;
};

// Binary PGM (P5), maxval 255 only. The reader accepts arbitrary header
// whitespace and '#' comments; the writer emits the canonical
// "P5\n<w> <h>\n255\n" header.
GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path);

// In-memory codecs behind the file functions, exposed for tests.
GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

// Where and in which bit planes two equally sized images differ.
// plane_counts[k] counts pixels whose bit k differs (0 = LSB);
// positions lists raster indices of differing pixels in ascending order.
struct BitplaneDiff {
    std::array<std::uint64_t, 8> plane_counts{};
    std::vector<std::uint32_t> positions;

    std::uint64_t plane_total() const {
        std::uint64_t t = 0;
        for (auto c : plane_counts)
            t += c;
        return t;
    }
};

BitplaneDiff bitplane_diff(const GrayImage& a, const GrayImage& b);

} // namespace rwmark

#endif

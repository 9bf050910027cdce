#ifndef RWMARK_BENCH_HPP
#define RWMARK_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwmark/image.hpp"
#include "rwmark/metrics.hpp"

namespace rwmark {

enum class Scheme { de, rrl };

const char* scheme_name(Scheme s); // "DE" / "RRL"

struct BenchRow {
    std::size_t payload_bits; // effective bits embedded (after capping)
    Scheme scheme;
    double ssim;
    double psnr_db;
    double embed_ms;  // median over repeats
    double extract_ms;
    bool capped; // payload was reduced to fit the scheme's capacity
};

struct BenchConfig {
    std::vector<std::size_t> payloads;
    bool use_de = true;
    bool use_rrl = true;
    std::uint64_t seed = 1;
    int repeats = 5;
    SsimMode ssim_mode = SsimMode::global;
};

// One row per (scheme, requested payload), ordered by scheme (DE first)
// then ascending payload. Payload bits come from the seeded generator
// (per-row seed: seed xor payload), get framed, embedded, measured, and
// extracted; every row verifies its round trip bit for bit and the bench
// throws if any does not hold. Timing covers embed/extract only, medians
// over `repeats` runs.
std::vector<BenchRow> run_bench(const GrayImage& host, const BenchConfig& cfg);

// CSV with the exact header
// payload_bits,scheme,ssim,psnr_db,embed_ms,extract_ms,capped
// ssim printed with 8 decimals, psnr with 4 ("inf" for identical images),
// times with 3.
void write_csv(const std::vector<BenchRow>& rows, std::ostream& out);
void write_csv(const std::vector<BenchRow>& rows, const std::string& path);

} // namespace rwmark

#endif

#include <limits>
#include <sstream>

#include "doctest.h"
#include "rwmark/bench.hpp"
#include "rwmark/de.hpp"
#include "rwmark/rrl.hpp"
#include "testutil.hpp"

using namespace rwmark;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        out.push_back(line);
    return out;
}

} // namespace

TEST_SUITE("bench") {

TEST_CASE("csv header is stable") {
    std::ostringstream out;
    write_csv({}, out);
    CHECK(out.str() == "payload_bits,scheme,ssim,psnr_db,embed_ms,extract_ms,capped\n");
}

TEST_CASE("csv formats fields exactly") {
    BenchRow a{128, Scheme::de, 0.999950513, 48.1308036, 1.25, 0.5, false};
    BenchRow b{32768, Scheme::rrl, 1.0, std::numeric_limits<double>::infinity(), 2.0, 0.25,
               true};
    std::ostringstream out;
    write_csv({a, b}, out);
    auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[1] == "128,DE,0.99995051,48.1308,1.250,0.500,false");
    CHECK(lines[2] == "32768,RRL,1.00000000,inf,2.000,0.250,true");
}

TEST_CASE("rows come out ordered and capped to capacity") {
    GrayImage host = testutil::smooth_test_image(64, 64, 1);
    BenchConfig cfg;
    cfg.payloads = {256, 64, 1000000};
    cfg.seed = 9;
    cfg.repeats = 1;
    std::vector<BenchRow> rows = run_bench(host, cfg);
    REQUIRE(rows.size() == 6);

    std::size_t de_budget = de_capacity(host) - 88;
    std::size_t rrl_budget = rrl_capacity(host) - 88; // 512 - 88
    CHECK(rows[0].scheme == Scheme::de);
    CHECK(rows[0].payload_bits == 64);
    CHECK(!rows[0].capped);
    CHECK(rows[1].payload_bits == 256);
    CHECK(!rows[1].capped);
    CHECK(rows[2].payload_bits == de_budget);
    CHECK(rows[2].capped);
    CHECK(rows[3].scheme == Scheme::rrl);
    CHECK(rows[3].payload_bits == 64);
    CHECK(rows[4].payload_bits == 256);
    CHECK(!rows[4].capped);
    CHECK(rows[5].payload_bits == rrl_budget);
    CHECK(rows[5].capped); // a million bits exceeds the framed budget

    for (const BenchRow& r : rows) {
        CHECK(r.ssim > 0.9);
        CHECK(r.ssim <= 1.0);
        CHECK(r.psnr_db > 20.0);
        CHECK(r.embed_ms >= 0.0);
        CHECK(r.extract_ms >= 0.0);
    }
}

TEST_CASE("quality columns are reproducible run to run") {
    GrayImage host = testutil::smooth_test_image(64, 64, 2);
    BenchConfig cfg;
    cfg.payloads = {64, 256};
    cfg.seed = 4;
    cfg.repeats = 1;
    std::vector<BenchRow> a = run_bench(host, cfg);
    std::vector<BenchRow> b = run_bench(host, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].payload_bits == b[i].payload_bits);
        CHECK(a[i].scheme == b[i].scheme);
        CHECK(a[i].ssim == b[i].ssim);
        CHECK(a[i].psnr_db == b[i].psnr_db);
        CHECK(a[i].capped == b[i].capped);
    }
}

TEST_CASE("scheme subsets") {
    GrayImage host = testutil::smooth_test_image(64, 64, 3);
    BenchConfig cfg;
    cfg.payloads = {64};
    cfg.repeats = 1;
    cfg.use_de = false;
    std::vector<BenchRow> rows = run_bench(host, cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].scheme == Scheme::rrl);
    CHECK(scheme_name(rows[0].scheme) == std::string("RRL"));
    CHECK(scheme_name(Scheme::de) == std::string("DE"));
}

TEST_CASE("windowed metric flows through") {
    GrayImage host = testutil::smooth_test_image(64, 64, 5);
    BenchConfig cfg;
    cfg.payloads = {64};
    cfg.repeats = 1;
    cfg.use_de = false;
    cfg.ssim_mode = SsimMode::windowed;
    std::vector<BenchRow> rows = run_bench(host, cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ssim < 1.0);
    CHECK(rows[0].ssim > 0.99);
}

} // TEST_SUITE

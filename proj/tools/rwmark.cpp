#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rwmark/bench.hpp"
#include "rwmark/bits.hpp"
#include "rwmark/codec.hpp"
#include "rwmark/de.hpp"
#include "rwmark/errors.hpp"
#include "rwmark/image.hpp"
#include "rwmark/metrics.hpp"
#include "rwmark/rrl.hpp"
#include "rwmark/threading.hpp"

namespace {

using namespace rwmark;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoFailure("cannot open for reading: " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoFailure("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f)
        throw IoFailure("write failed: " + path);
}

struct EmbedArgs {
    std::string scheme, host, out, payload_path, record_path;
    std::uint64_t random_bits = 0;
    std::uint64_t seed = 1;
    bool have_random = false;
};

int run_embed(const EmbedArgs& a) {
    GrayImage host = load_pgm(a.host);
    BitVec data;
    if (a.have_random) {
        data = prng_bits(a.seed, a.random_bits);
    } else {
        std::vector<std::uint8_t> bytes = read_file(a.payload_path);
        data = unpack_msb(bytes, bytes.size() * 8);
    }
    BitVec framed = frame_encode(data);

    if (a.scheme == "de") {
        if (!a.record_path.empty())
            std::cerr << "warning: --record is ignored for scheme de\n";
        GrayImage out = de_embed(host, framed);
        save_pgm(out, a.out);
    } else {
        RrlEmbedResult res = rrl_embed(host, framed);
        if (a.record_path.empty())
            std::cerr << "warning: no --record path; displaced rows are lost and extraction "
                         "will fall back to literal restoration\n";
        else
            save_record(res.record, a.record_path);
        save_pgm(res.image, a.out);
    }
    std::cout << "embedded " << data.size() << " payload bits (" << framed.size()
              << " framed) with scheme " << a.scheme << " into " << a.out << "\n";
    return 0;
}

struct ExtractArgs {
    std::string scheme, in, record_path, payload_out, restored_out;
};

int run_extract(const ExtractArgs& a) {
    GrayImage img = load_pgm(a.in);
    BitVec framed;
    GrayImage restored;
    if (a.scheme == "de") {
        if (!a.record_path.empty())
            std::cerr << "warning: --record is ignored for scheme de\n";
        DeExtractResult res = de_extract(img);
        framed = std::move(res.payload);
        restored = std::move(res.restored);
    } else {
        std::optional<RestorationRecord> rec;
        if (!a.record_path.empty())
            rec = load_record(a.record_path);
        else
            std::cerr << "warning: no --record path; restoring in literal mode (bottom rows "
                         "of used blocks are approximate)\n";
        RrlExtractResult res = rrl_extract(img, rec ? &*rec : nullptr);
        framed = std::move(res.payload);
        restored = std::move(res.restored);
    }
    BitVec data = frame_decode(framed);
    write_file(a.payload_out, pack_msb(data));
    save_pgm(restored, a.restored_out);
    std::cout << "extracted " << data.size() << " payload bits to " << a.payload_out
              << ", restored image to " << a.restored_out << "\n";
    return 0;
}

struct QualityArgs {
    std::string ref, test, metric = "ssim";
    int window = 8;
};

int run_quality(const QualityArgs& a) {
    GrayImage ref = load_pgm(a.ref);
    GrayImage test = load_pgm(a.test);
    char buf[64];
    if (a.metric == "psnr") {
        double v = psnr(ref, test);
        if (v == std::numeric_limits<double>::infinity())
            std::snprintf(buf, sizeof buf, "inf");
        else
            std::snprintf(buf, sizeof buf, "%.4f", v);
    } else {
        SsimParams p;
        p.mode = a.metric == "mssim" ? SsimMode::windowed : SsimMode::global;
        p.window = a.window;
        std::snprintf(buf, sizeof buf, "%.8f", ssim(ref, test, p));
    }
    std::cout << buf << "\n";
    return 0;
}

struct BenchArgs {
    std::string host, csv;
    std::string payloads = "128,256,512,1024,2048,4096,8192,16384,32768,65536";
    std::string schemes = "de,rrl";
    std::uint64_t seed = 1;
    int repeats = 5;
    bool mssim = false;
};

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos)
            next = s.size();
        std::string tok = s.substr(pos, next - pos);
        if (!tok.empty())
            out.push_back(std::stoull(tok));
        pos = next + 1;
    }
    return out;
}

int run_bench_cmd(const BenchArgs& a) {
    GrayImage host = load_pgm(a.host);
    BenchConfig cfg;
    cfg.payloads = parse_size_list(a.payloads);
    cfg.use_de = a.schemes.find("de") != std::string::npos;
    cfg.use_rrl = a.schemes.find("rrl") != std::string::npos;
    cfg.seed = a.seed;
    cfg.repeats = a.repeats;
    cfg.ssim_mode = a.mssim ? SsimMode::windowed : SsimMode::global;
    std::vector<BenchRow> rows = run_bench(host, cfg);
    write_csv(rows, a.csv);
    std::cout << "wrote " << rows.size() << " rows to " << a.csv << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible watermarking for 8-bit grayscale PGM images"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "thread count for parallel kernels (default: all)");

    EmbedArgs ea;
    CLI::App* embed = app.add_subcommand("embed", "embed a payload into a host image");
    embed->add_option("--scheme", ea.scheme, "de or rrl")
        ->required()
        ->check(CLI::IsMember({"de", "rrl"}));
    embed->add_option("--host", ea.host, "host PGM")->required();
    embed->add_option("--out", ea.out, "watermarked PGM to write")->required();
    auto* pay = embed->add_option("--payload", ea.payload_path, "payload file (bytes)");
    auto* rnd = embed->add_option("--random-bits", ea.random_bits, "generate N random payload bits");
    pay->excludes(rnd);
    rnd->excludes(pay);
    embed->add_option("--seed", ea.seed, "seed for --random-bits (nonzero)");
    embed->add_option("--record", ea.record_path, "restoration record to write (rrl)");

    ExtractArgs xa;
    CLI::App* extract = app.add_subcommand("extract", "extract a payload and restore the host");
    extract->add_option("--scheme", xa.scheme, "de or rrl")
        ->required()
        ->check(CLI::IsMember({"de", "rrl"}));
    extract->add_option("--in", xa.in, "watermarked PGM")->required();
    extract->add_option("--record", xa.record_path, "restoration record (rrl exact mode)");
    extract->add_option("--payload-out", xa.payload_out, "file for the recovered payload bytes")
        ->required();
    extract->add_option("--restored-out", xa.restored_out, "file for the restored PGM")
        ->required();

    QualityArgs qa;
    CLI::App* quality = app.add_subcommand("quality", "compare two images");
    quality->add_option("--ref", qa.ref, "reference PGM")->required();
    quality->add_option("--test", qa.test, "test PGM")->required();
    quality->add_option("--metric", qa.metric, "ssim, mssim, or psnr")
        ->check(CLI::IsMember({"ssim", "mssim", "psnr"}));
    quality->add_option("--window", qa.window, "window size for mssim (default 8)");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "payload sweep with quality and timing");
    bench->add_option("--host", ba.host, "host PGM")->required();
    bench->add_option("--payloads", ba.payloads, "comma-separated payload bit counts");
    bench->add_option("--schemes", ba.schemes, "subset of de,rrl");
    bench->add_option("--seed", ba.seed, "payload generator seed (nonzero)");
    bench->add_option("--repeats", ba.repeats, "timing repeats per row (default 5)");
    bench->add_option("--csv", ba.csv, "CSV output path")->required();
    bench->add_flag("--mssim", ba.mssim, "use windowed SSIM instead of global");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*embed || *extract || *quality) {
            if (threads >= 1)
                rwmark::set_threads(threads);
        } else {
            // Bench times kernels; keep it single-threaded unless asked.
            rwmark::set_threads(threads >= 1 ? threads : 1);
        }
        if (*embed) {
            ea.have_random = rnd->count() > 0;
            if (!ea.have_random && pay->count() == 0) {
                std::cerr << "embed: need --payload or --random-bits\n";
                return 1;
            }
            return run_embed(ea);
        }
        if (*extract)
            return run_extract(xa);
        if (*quality)
            return run_quality(qa);
        return run_bench_cmd(ba);
    } catch (const rwmark::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

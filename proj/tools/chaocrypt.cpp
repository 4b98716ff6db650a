// chaocrypt command line tool: key generation, image encryption/decryption, and
// the statistical analysis / robustness harness around them.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <chaocrypt/chaocrypt.hpp>

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CHAOCRYPT_THREADS caps internal parallelism. The current implementation is
// single-threaded, so any positive value is honored as-is; garbage is rejected.
void check_threads_env() {
    const char* raw = std::getenv("CHAOCRYPT_THREADS");
    if (!raw)
        return;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        throw UsageError("CHAOCRYPT_THREADS must be a positive integer");
}

std::uint64_t random_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

bool is_envelope_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw chaocrypt::IoError("cannot open " + path);
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::memcmp(magic, chaocrypt::kEnvelopeMagic, 4) == 0;
}

chaocrypt::ImageBuffer envelope_as_image(const chaocrypt::CipherEnvelope& env) {
    chaocrypt::ImageBuffer img;
    img.width = env.width;
    img.height = env.height;
    img.channels = env.channels;
    img.pixels = env.ciphertext;
    chaocrypt::validate_image(img);
    return img;
}

void write_histogram_csv(const chaocrypt::ImageBuffer& img, const std::string& prefix) {
    for (std::uint32_t c = 0; c < img.channels; ++c) {
        const auto hist = chaocrypt::histogram(chaocrypt::extract_channel(img, c));
        const std::string path = prefix + "." + chaocrypt::channel_name(img, c) + ".csv";
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw chaocrypt::IoError("cannot open " + path + " for writing");
        for (int v = 0; v < 256; ++v)
            out << v << "," << hist[v] << "\n";
        if (!out)
            throw chaocrypt::IoError("write failed for " + path);
    }
}

struct KeygenOpts {
    std::string out;
    std::uint64_t seed = 0;
    bool seeded = false;
};

struct CryptOpts {
    std::string in, key, out;
    std::uint32_t block = 32;
};

struct AnalyzeOpts {
    std::string in, against, hist_csv;
};

struct DiffOpts {
    std::string a, b;
};

struct AttackOpts {
    std::string in, key;
    std::uint32_t block = 32;
    std::vector<double> speckle;
    std::vector<double> crop;
    std::uint64_t seed = 0;
};

struct BenchOpts {
    std::uint32_t size = 512;
    std::uint32_t block = 32;
    std::uint32_t iterations = 5;
};

void run_keygen(const KeygenOpts& o) {
    const std::uint64_t seed = o.seeded ? o.seed : random_seed();
    chaocrypt::write_key(o.out, chaocrypt::generate_key(seed));
    std::printf("out=%s\n", o.out.c_str());
}

void run_encrypt(const CryptOpts& o) {
    const chaocrypt::ImageBuffer img = chaocrypt::read_ppm(o.in);
    const chaocrypt::MasterKey key = chaocrypt::read_key(o.key);
    const chaocrypt::CipherEnvelope env = chaocrypt::encrypt(img, key, o.block);
    chaocrypt::write_envelope(o.out, env);
    const std::size_t blocks = (static_cast<std::size_t>(env.width) / env.block_size) *
                               (env.height / env.block_size);
    std::printf("digest=%u\nblocks=%zu\nout=%s\n", env.digest, blocks, o.out.c_str());
}

void run_decrypt(const CryptOpts& o) {
    const chaocrypt::CipherEnvelope env = chaocrypt::read_envelope(o.in);
    const chaocrypt::MasterKey key = chaocrypt::read_key(o.key);
    chaocrypt::write_ppm(o.out, chaocrypt::decrypt(env, key));
    std::printf("out=%s\n", o.out.c_str());
}

void run_analyze(const AnalyzeOpts& o) {
    chaocrypt::ImageBuffer img;
    if (is_envelope_file(o.in)) {
        img = envelope_as_image(chaocrypt::read_envelope(o.in));
        std::printf("kind=envelope\n");
    } else {
        img = chaocrypt::read_ppm(o.in);
        std::printf("kind=plain\n");
    }
    std::printf("width=%u\nheight=%u\nchannels=%u\n", img.width, img.height, img.channels);
    std::fputs(chaocrypt::analyze_image(img).to_text().c_str(), stdout);
    if (!o.against.empty()) {
        const chaocrypt::ImageBuffer other = chaocrypt::read_ppm(o.against);
        std::fputs(chaocrypt::compare_images(img, other).to_text().c_str(), stdout);
    }
    if (!o.hist_csv.empty())
        write_histogram_csv(img, o.hist_csv);
}

void run_diff(const DiffOpts& o) {
    const chaocrypt::ImageBuffer a = envelope_as_image(chaocrypt::read_envelope(o.a));
    const chaocrypt::ImageBuffer b = envelope_as_image(chaocrypt::read_envelope(o.b));
    std::fputs(chaocrypt::diff_images(a, b).to_text().c_str(), stdout);
}

void run_attack(const AttackOpts& o) {
    if (o.speckle.empty() && o.crop.empty())
        throw UsageError("attack: at least one --speckle or --crop is required");
    const chaocrypt::ImageBuffer img = chaocrypt::read_ppm(o.in);
    const chaocrypt::MasterKey key = chaocrypt::read_key(o.key);
    std::vector<chaocrypt::AttackSpec> specs;
    for (double alpha : o.speckle)
        specs.push_back({chaocrypt::AttackSpec::Kind::Speckle, alpha, o.seed});
    for (double fraction : o.crop)
        specs.push_back({chaocrypt::AttackSpec::Kind::Crop, fraction, 0});
    const auto rows = chaocrypt::robustness_report(img, key, o.block, specs);
    std::fputs(chaocrypt::robustness_csv(rows).c_str(), stdout);
}

void run_bench(const BenchOpts& o) {
    if (o.iterations == 0)
        throw UsageError("bench: --iterations must be positive");
    if (o.block == 0 || o.size % o.block != 0)
        throw chaocrypt::DomainError("bench: --block must evenly divide --size");
    // deterministic random input; timings are the only varying output
    chaocrypt::ImageBuffer img = chaocrypt::make_image(o.size, o.size, 3);
    std::mt19937_64 eng(0x63686170);
    for (auto& p : img.pixels)
        p = static_cast<std::uint8_t>(eng() >> 56);
    const chaocrypt::MasterKey key = chaocrypt::generate_key(1);

    std::printf("size=%u\nblock=%u\niterations=%u\n", o.size, o.block, o.iterations);
    chaocrypt::EncryptProfile mean{};
    double min_total = 0.0;
    for (std::uint32_t i = 0; i < o.iterations; ++i) {
        chaocrypt::EncryptProfile prof{};
        (void)chaocrypt::encrypt_profiled(img, key, o.block, &prof);
        std::printf("run.%u.keystream_s=%.6f\n", i, prof.keystream_s);
        std::printf("run.%u.permutation_s=%.6f\n", i, prof.permutation_s);
        std::printf("run.%u.diffusion_s=%.6f\n", i, prof.diffusion_s);
        std::printf("run.%u.total_s=%.6f\n", i, prof.total_s);
        mean.keystream_s += prof.keystream_s;
        mean.permutation_s += prof.permutation_s;
        mean.diffusion_s += prof.diffusion_s;
        mean.total_s += prof.total_s;
        min_total = i == 0 ? prof.total_s : std::min(min_total, prof.total_s);
    }
    const double k = o.iterations;
    std::printf("mean.keystream_s=%.6f\n", mean.keystream_s / k);
    std::printf("mean.permutation_s=%.6f\n", mean.permutation_s / k);
    std::printf("mean.diffusion_s=%.6f\n", mean.diffusion_s / k);
    std::printf("mean.total_s=%.6f\n", mean.total_s / k);
    std::printf("min.total_s=%.6f\n", min_total);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaocrypt: chaos-based color image cipher and analysis toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "chaocrypt 1.0.0");

    KeygenOpts kg;
    auto* keygen = app.add_subcommand("keygen", "generate a key file");
    keygen->add_option("--out", kg.out, "output key path")->required();
    auto* seed_opt = keygen->add_option("--seed", kg.seed, "seed for deterministic output");

    CryptOpts enc;
    auto* encrypt = app.add_subcommand("encrypt", "encrypt a P6 PPM image");
    encrypt->add_option("--in", enc.in, "input PPM")->required();
    encrypt->add_option("--key", enc.key, "key file")->required();
    encrypt->add_option("--out", enc.out, "output envelope")->required();
    encrypt->add_option("--block", enc.block, "tile size (default 32)");

    CryptOpts dec;
    auto* decrypt = app.add_subcommand("decrypt", "decrypt an envelope back to PPM");
    decrypt->add_option("--in", dec.in, "input envelope")->required();
    decrypt->add_option("--key", dec.key, "key file")->required();
    decrypt->add_option("--out", dec.out, "output PPM")->required();

    AnalyzeOpts an;
    auto* analyze = app.add_subcommand("analyze", "entropy / chi-square / correlation report");
    analyze->add_option("--in", an.in, "PPM or envelope to analyze")->required();
    analyze->add_option("--against", an.against, "PPM to compare against (adds MSE/PSNR)");
    analyze->add_option("--hist-csv", an.hist_csv,
                        "write per-channel histograms to <prefix>.<channel>.csv");

    DiffOpts df;
    auto* diff = app.add_subcommand("diff", "NPCR/UACI between two envelopes");
    diff->add_option("--a", df.a, "first envelope")->required();
    diff->add_option("--b", df.b, "second envelope")->required();

    AttackOpts at;
    auto* attack = app.add_subcommand("attack", "robustness table for attacked ciphertexts");
    attack->add_option("--in", at.in, "plain PPM")->required();
    attack->add_option("--key", at.key, "key file")->required();
    attack->add_option("--block", at.block, "tile size (default 32)");
    attack->add_option("--speckle", at.speckle, "speckle noise variance (repeatable)");
    attack->add_option("--crop", at.crop, "crop area fraction (repeatable)");
    attack->add_option("--seed", at.seed, "speckle noise seed (default 0)");

    BenchOpts be;
    auto* bench = app.add_subcommand("bench", "time encryption phases on a random image");
    bench->add_option("--size", be.size, "image side length (default 512)");
    bench->add_option("--block", be.block, "tile size (default 32)");
    bench->add_option("--iterations", be.iterations, "number of runs (default 5)");

    try {
        app.parse(argc, argv);
        check_threads_env();
        kg.seeded = seed_opt->count() > 0;
        if (*keygen)
            run_keygen(kg);
        else if (*encrypt)
            run_encrypt(enc);
        else if (*decrypt)
            run_decrypt(dec);
        else if (*analyze)
            run_analyze(an);
        else if (*diff)
            run_diff(df);
        else if (*attack)
            run_attack(at);
        else if (*bench)
            run_bench(be);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const chaocrypt::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const chaocrypt::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const chaocrypt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

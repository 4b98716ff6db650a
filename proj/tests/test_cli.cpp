// End-to-end exercise of the chaocrypt command line tool. The binary path is
// passed as argv[1]; all artifacts live in a scratch directory created here.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <chaocrypt/chaocrypt.hpp>

#include "support/test_images.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& name) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    if (!ok)
        ++failures;
}

std::string cli;
std::string dir;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string capture = dir + "/stdout.txt";
    const std::string cmd =
        env_prefix + cli + " " + args + " > " + capture + " 2> " + dir + "/stderr.txt";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        n += c == '\n' ? 1 : 0;
    return n;
}

// value of "name=..." in a key=value report, or "" if absent
std::string report_value(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(name + "=", 0) == 0)
            return line.substr(name.size() + 1);
    return "";
}

void test_keygen() {
    RunResult r = run("keygen --out " + dir + "/a.key --seed 42");
    check(r.code == 0 && contains(r.out, "out="), "keygen exits cleanly");
    const chaocrypt::MasterKey key = chaocrypt::read_key(dir + "/a.key");
    check(key.x > 0.0 && key.x < 1.0 && key.mu >= 3.57 && key.mu <= 4.0,
          "keygen writes a valid key file");
    run("keygen --out " + dir + "/b.key --seed 42");
    check(slurp(dir + "/a.key") == slurp(dir + "/b.key"),
          "keygen with the same seed is deterministic");
    run("keygen --out " + dir + "/c.key --seed 43");
    check(slurp(dir + "/a.key") != slurp(dir + "/c.key"),
          "keygen with a different seed differs");
}

void test_encrypt_decrypt() {
    chaocrypt::write_ppm(dir + "/plain.ppm", testsupport::named_test_image("lena", 64));

    RunResult r = run("encrypt --in " + dir + "/plain.ppm --key " + dir +
                      "/a.key --out " + dir + "/ct.cbpx --block 16");
    check(r.code == 0, "encrypt exits cleanly");
    check(!report_value(r.out, "digest").empty() && report_value(r.out, "blocks") == "16",
          "encrypt reports digest and block count");

    run("encrypt --in " + dir + "/plain.ppm --key " + dir + "/a.key --out " + dir +
        "/ct2.cbpx --block 16");
    check(slurp(dir + "/ct.cbpx") == slurp(dir + "/ct2.cbpx"),
          "repeated encryption is byte-identical");

    const chaocrypt::CipherEnvelope env = chaocrypt::read_envelope(dir + "/ct.cbpx");
    check(env.width == 64 && env.height == 64 && env.channels == 3 && env.block_size == 16,
          "envelope header carries the image geometry");

    r = run("decrypt --in " + dir + "/ct.cbpx --key " + dir + "/a.key --out " + dir +
            "/rt.ppm");
    check(r.code == 0, "decrypt exits cleanly");
    check(slurp(dir + "/rt.ppm") == slurp(dir + "/plain.ppm"),
          "decrypt restores the original PPM byte for byte");

    r = run("decrypt --in " + dir + "/ct.cbpx --key " + dir + "/c.key --out " + dir +
            "/wrong.ppm");
    check(r.code == 0 && slurp(dir + "/wrong.ppm") != slurp(dir + "/plain.ppm"),
          "decrypting with the wrong key yields a different image");
}

void test_analyze() {
    RunResult r = run("analyze --in " + dir + "/plain.ppm");
    check(r.code == 0 && report_value(r.out, "kind") == "plain" &&
              report_value(r.out, "width") == "64" &&
              !report_value(r.out, "entropy.red").empty() &&
              !report_value(r.out, "corr.diagonal.blue").empty(),
          "analyze reports stats for a plain image");

    r = run("analyze --in " + dir + "/ct.cbpx --hist-csv " + dir + "/h");
    check(r.code == 0 && report_value(r.out, "kind") == "envelope",
          "analyze detects envelopes by magic");
    bool hist_ok = true;
    for (const char* ch : {"red", "green", "blue"}) {
        const std::string csv = slurp(dir + "/h." + std::string(ch) + ".csv");
        hist_ok = hist_ok && count_lines(csv) == 256 && csv.rfind("0,", 0) == 0;
    }
    check(hist_ok, "histogram CSVs have 256 rows per channel");

    r = run("analyze --in " + dir + "/plain.ppm --against " + dir + "/plain.ppm");
    check(r.code == 0 && report_value(r.out, "psnr.red") == "inf" &&
              report_value(r.out, "mse.blue") == "0.000000",
          "analyze --against itself reports zero error");
}

void test_diff() {
    RunResult r = run("diff --a " + dir + "/ct.cbpx --b " + dir + "/ct.cbpx");
    check(r.code == 0 && report_value(r.out, "npcr.mean") == "0.000000" &&
              report_value(r.out, "uaci.mean") == "0.000000",
          "diff of an envelope against itself is zero");

    // flip one plaintext pixel; digest coupling should rewrite the ciphertext
    chaocrypt::ImageBuffer img = testsupport::named_test_image("lena", 64);
    img.pixels[0] ^= 1;
    chaocrypt::write_ppm(dir + "/plain2.ppm", img);
    run("encrypt --in " + dir + "/plain2.ppm --key " + dir + "/a.key --out " + dir +
        "/ct3.cbpx --block 16");
    r = run("diff --a " + dir + "/ct.cbpx --b " + dir + "/ct3.cbpx");
    const std::string npcr = report_value(r.out, "npcr.mean");
    check(r.code == 0 && !npcr.empty() && std::stod(npcr) > 99.0,
          "diff of ciphertexts for adjacent plaintexts shows avalanche");
}

void test_attack() {
    RunResult r = run("attack --in " + dir + "/plain.ppm --key " + dir +
                      "/a.key --block 16 --crop 0.05 --speckle 0.1 --seed 7");
    check(r.code == 0 &&
              contains(r.out, "attack,parameter,channel,psnr_db,byte_error_rate") &&
              count_lines(r.out) == 7,
          "attack emits a CSV row per attack and channel");
    check(contains(r.out, "speckle,0.1,") && contains(r.out, "crop,0.05,"),
          "attack covers both requested corruptions");

    RunResult again = run("attack --in " + dir + "/plain.ppm --key " + dir +
                          "/a.key --block 16 --crop 0.05 --speckle 0.1 --seed 7");
    check(again.out == r.out, "attack output is deterministic for a fixed seed");

    r = run("attack --in " + dir + "/plain.ppm --key " + dir + "/a.key");
    check(r.code == 1, "attack without any corruption flag is a usage error");
}

void test_bench() {
    RunResult r = run("bench --size 64 --block 16 --iterations 3");
    check(r.code == 0 && !report_value(r.out, "run.0.keystream_s").empty() &&
              !report_value(r.out, "run.2.total_s").empty() &&
              !report_value(r.out, "mean.total_s").empty() &&
              !report_value(r.out, "min.total_s").empty(),
          "bench reports per-run and aggregate timings");
    r = run("bench --size 64 --block 48");
    check(r.code == 4, "bench rejects a block that does not divide the size");
    r = run("bench --iterations 0");
    check(r.code == 1, "bench rejects zero iterations");
}

void test_exit_codes() {
    RunResult r = run("encrypt --in " + dir + "/plain.ppm --key " + dir +
                      "/missing.key --out " + dir + "/x.cbpx");
    check(r.code == 2, "missing key file is an io error (2)");

    r = run("decrypt --in " + dir + "/plain.ppm --key " + dir + "/a.key --out " + dir +
            "/x.ppm");
    check(r.code == 3, "PPM handed to decrypt is a format error (3)");

    r = run("encrypt --in " + dir + "/plain.ppm --key " + dir + "/a.key --out " + dir +
            "/x.cbpx --block 33");
    check(r.code == 4, "block that does not divide the image is a domain error (4)");

    r = run("frobnicate");
    check(r.code == 1, "unknown subcommand is a usage error (1)");

    r = run("");
    check(r.code == 1, "missing subcommand is a usage error (1)");

    r = run("--version");
    check(r.code == 0 && contains(r.out, "chaocrypt"), "--version prints and exits 0");

    r = run("bench --size 32 --block 16 --iterations 1", "CHAOCRYPT_THREADS=abc ");
    check(r.code == 1, "garbage CHAOCRYPT_THREADS is a usage error (1)");

    r = run("bench --size 32 --block 16 --iterations 1", "CHAOCRYPT_THREADS=2 ");
    check(r.code == 0, "numeric CHAOCRYPT_THREADS is accepted");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-chaocrypt-binary>\n", argv[0]);
        return 2;
    }
    cli = argv[1];
    dir = "cli_scratch";
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) {
        std::fprintf(stderr, "cannot create scratch directory %s\n", dir.c_str());
        return 2;
    }

    test_keygen();
    test_encrypt_decrypt();
    test_analyze();
    test_diff();
    test_attack();
    test_bench();
    test_exit_codes();

    std::printf("%s: %d failure(s)\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}

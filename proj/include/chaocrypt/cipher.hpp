#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "chaos.hpp"
#include "errors.hpp"
#include "image.hpp"

namespace chaocrypt {

struct MasterKey {
    double x = 0.0; // initial conditions, each in (0,1)
    double y = 0.0;
    double v = 0.0;
    double w = 0.0;
    double mu = 3.99;        // logistic control parameter
    double a = 2.75;         // duffing constants
    double b = 0.2;
    std::uint32_t n_iter = 1000; // burn-in length, part of the key
};

inline void validate_master_key(const MasterKey& key) {
    for (double c : {key.x, key.y, key.v, key.w})
        if (!(c > 0.0 && c < 1.0))
            throw DomainError("key initial conditions must lie in (0,1)");
    if (!(key.mu >= kMuMin && key.mu <= kMuMax))
        throw DomainError("key mu must lie in [3.57, 4.0]");
    if (!std::isfinite(key.a) || !std::isfinite(key.b))
        throw DomainError("key duffing parameters must be finite");
    if (key.n_iter == 0)
        throw DomainError("key n_iter must be positive");
}

// Binary envelope carried alongside the ciphertext; see io.hpp for the wire format.
struct CipherEnvelope {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 0;
    std::uint16_t block_size = 0;
    std::uint32_t digest = 0; // plaintext digest, re-derives the keystream on decrypt
    std::vector<std::uint8_t> ciphertext;
};

struct BlockGrid {
    std::uint32_t block_size = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::uint32_t channels = 0;
    std::vector<std::vector<std::uint8_t>> blocks; // row-major tile order
};

// Sum of all samples, wrapping mod 2^32.
inline std::uint32_t plaintext_digest(const ImageBuffer& img) {
    validate_image(img);
    std::uint32_t acc = 0;
    for (std::uint8_t p : img.pixels)
        acc += p;
    return acc;
}

inline double frac(double t) {
    return t - std::floor(t);
}

inline constexpr double kGoldenFrac = 0.6180339887;

// Perturbs the key's initial conditions by digest-dependent offsets so that any
// plaintext change rekeys the whole stream. Offsets use incommensurate golden-ratio
// multiples per component.
inline MasterKey derive_initial_conditions(const MasterKey& key, std::uint32_t digest) {
    const double t = static_cast<double>(digest) * 0x1p-32;
    MasterKey d = key;
    d.x = 0.01 + 0.98 * frac(key.x + t);
    d.y = 0.01 + 0.98 * frac(key.y + frac(kGoldenFrac * t));
    d.v = 0.01 + 0.98 * frac(key.v + frac(frac(2.0 * kGoldenFrac) * t));
    // narrower span for w: duffing orbits diverge for seeds with small v and w above
    // ~0.857; the box [0.01,0.99]x[0.01,0.81] is verified divergence-free
    d.w = 0.01 + 0.80 * frac(key.w + frac(frac(3.0 * kGoldenFrac) * t));
    return d;
}

// Keystream: two logistic orbits (seeded x' and y') are folded into one stream by
// fractional addition, then reordered by the ranks of a duffing orbit seeded (v', w').
// The first n_blocks combined samples become the tile permutation, the remaining
// n_pixels quantize to the XOR mask. Every initial condition feeds a chaotic orbit,
// so a 1e-10 change in any of them decorrelates the whole stream.
inline std::pair<Permutation, std::vector<std::uint8_t>>
build_keystream(const MasterKey& key, std::uint32_t digest, std::size_t n_pixels, std::size_t n_blocks) {
    if (n_pixels == 0 || n_blocks == 0)
        throw DomainError("build_keystream: sample counts must be positive");
    validate_master_key(key);
    const MasterKey ek = derive_initial_conditions(key, digest);
    const std::size_t total = n_pixels + n_blocks;
    const ChaosSequence xa = generate_sequence(LogisticParams{ek.x, ek.mu}, total, ek.n_iter);
    // one extra burn-in step so swapping x and y cannot reproduce the same orbit pair
    const ChaosSequence xb = generate_sequence(LogisticParams{ek.y, ek.mu}, total, ek.n_iter + 1);
    std::vector<double> xs(total);
    for (std::size_t i = 0; i < total; ++i)
        xs[i] = frac(xa.samples[i] + xb.samples[i]);
    const ChaosSequence ys = generate_sequence(DuffingParams{ek.v, ek.w, ek.a, ek.b}, total, ek.n_iter);
    const std::vector<double> combined = combine_streams(xs, ys.samples);
    Permutation perm = floats_to_permutation(std::span<const double>(combined.data(), n_blocks));
    std::vector<std::uint8_t> mask =
        floats_to_bytes(std::span<const double>(combined.data() + n_blocks, n_pixels));
    return {std::move(perm), std::move(mask)};
}

// Splits the image into an m x m tile grid, row-major, each tile carrying all
// channels of its spatial window. m must divide both dimensions exactly.
inline BlockGrid partition_blocks(const ImageBuffer& img, std::uint32_t block_size) {
    validate_image(img);
    if (block_size == 0 || img.width % block_size != 0 || img.height % block_size != 0)
        throw DomainError("block size must evenly divide both image dimensions");
    BlockGrid grid;
    grid.block_size = block_size;
    grid.rows = img.height / block_size;
    grid.cols = img.width / block_size;
    grid.channels = img.channels;
    grid.blocks.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
    const std::size_t tile_row_bytes = static_cast<std::size_t>(block_size) * img.channels;
    for (std::uint32_t br = 0; br < grid.rows; ++br) {
        for (std::uint32_t bc = 0; bc < grid.cols; ++bc) {
            std::vector<std::uint8_t> tile;
            tile.reserve(tile_row_bytes * block_size);
            for (std::uint32_t ty = 0; ty < block_size; ++ty) {
                const std::size_t off =
                    (static_cast<std::size_t>(br) * block_size + ty) * row_bytes +
                    static_cast<std::size_t>(bc) * tile_row_bytes;
                tile.insert(tile.end(), img.pixels.begin() + off,
                            img.pixels.begin() + off + tile_row_bytes);
            }
            grid.blocks.push_back(std::move(tile));
        }
    }
    return grid;
}

inline ImageBuffer merge_blocks(const BlockGrid& grid) {
    if (grid.block_size == 0 || grid.rows == 0 || grid.cols == 0)
        throw DomainError("merge_blocks: empty grid");
    if (grid.blocks.size() != static_cast<std::size_t>(grid.rows) * grid.cols)
        throw DomainError("merge_blocks: block count does not match grid shape");
    const std::size_t tile_row_bytes = static_cast<std::size_t>(grid.block_size) * grid.channels;
    const std::size_t tile_bytes = tile_row_bytes * grid.block_size;
    ImageBuffer img = make_image(grid.cols * grid.block_size, grid.rows * grid.block_size,
                                 grid.channels);
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
    for (std::uint32_t br = 0; br < grid.rows; ++br) {
        for (std::uint32_t bc = 0; bc < grid.cols; ++bc) {
            const auto& tile = grid.blocks[static_cast<std::size_t>(br) * grid.cols + bc];
            if (tile.size() != tile_bytes)
                throw DomainError("merge_blocks: tile has wrong size");
            for (std::uint32_t ty = 0; ty < grid.block_size; ++ty) {
                const std::size_t off =
                    (static_cast<std::size_t>(br) * grid.block_size + ty) * row_bytes +
                    static_cast<std::size_t>(bc) * tile_row_bytes;
                std::copy_n(tile.begin() + static_cast<std::size_t>(ty) * tile_row_bytes,
                            tile_row_bytes, img.pixels.begin() + off);
            }
        }
    }
    return img;
}

// Output tile j is input tile mapping[j].
inline BlockGrid apply_block_permutation(const BlockGrid& grid, const Permutation& perm) {
    if (perm.mapping.size() != grid.blocks.size())
        throw DomainError("apply_block_permutation: permutation length does not match block count");
    invert_permutation(perm); // bijection check
    BlockGrid out = grid;
    for (std::size_t i = 0; i < grid.blocks.size(); ++i)
        out.blocks[i] = grid.blocks[perm.mapping[i]];
    return out;
}

inline std::vector<std::uint8_t> xor_diffuse(const std::vector<std::uint8_t>& data,
                                             const std::vector<std::uint8_t>& mask) {
    if (data.size() != mask.size())
        throw DomainError("xor_diffuse: data and mask lengths differ");
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        out[i] = data[i] ^ mask[i];
    return out;
}

struct EncryptProfile {
    double keystream_s = 0.0;
    double permutation_s = 0.0;
    double diffusion_s = 0.0;
    double total_s = 0.0;
};

inline CipherEnvelope encrypt_profiled(const ImageBuffer& img, const MasterKey& key,
                                       std::uint32_t block_size, EncryptProfile* profile) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    validate_image(img);
    validate_master_key(key);
    if (block_size == 0 || block_size > 65535)
        throw DomainError("block size must lie in [1, 65535]");
    if (img.width % block_size != 0 || img.height % block_size != 0)
        throw DomainError("block size must evenly divide both image dimensions");

    const std::uint32_t digest = plaintext_digest(img);
    const std::size_t n_blocks =
        (static_cast<std::size_t>(img.width) / block_size) * (img.height / block_size);

    const auto t1 = clock::now();
    auto [perm, mask] = build_keystream(key, digest, img.pixels.size(), n_blocks);
    const auto t2 = clock::now();
    const BlockGrid grid = partition_blocks(img, block_size);
    const ImageBuffer shuffled = merge_blocks(apply_block_permutation(grid, perm));
    const auto t3 = clock::now();
    CipherEnvelope env;
    env.width = img.width;
    env.height = img.height;
    env.channels = static_cast<std::uint8_t>(img.channels);
    env.block_size = static_cast<std::uint16_t>(block_size);
    env.digest = digest;
    env.ciphertext = xor_diffuse(shuffled.pixels, mask);
    const auto t4 = clock::now();

    if (profile) {
        const auto secs = [](auto d) { return std::chrono::duration<double>(d).count(); };
        profile->keystream_s = secs(t2 - t1);
        profile->permutation_s = secs(t3 - t2);
        profile->diffusion_s = secs(t4 - t3);
        profile->total_s = secs(t4 - t0);
    }
    return env;
}

inline CipherEnvelope encrypt(const ImageBuffer& img, const MasterKey& key,
                              std::uint32_t block_size) {
    return encrypt_profiled(img, key, block_size, nullptr);
}

inline void validate_envelope(const CipherEnvelope& env) {
    if (env.width == 0 || env.height == 0)
        throw DomainError("envelope dimensions must be positive");
    if (env.channels != 1 && env.channels != 3)
        throw DomainError("envelope must have 1 or 3 channels");
    if (env.block_size == 0 || env.width % env.block_size != 0 ||
        env.height % env.block_size != 0)
        throw DomainError("envelope block size must evenly divide both image dimensions");
    const std::size_t expected =
        static_cast<std::size_t>(env.width) * env.height * env.channels;
    if (env.ciphertext.size() != expected)
        throw DomainError("envelope payload length does not match dimensions");
}

inline ImageBuffer decrypt(const CipherEnvelope& env, const MasterKey& key) {
    validate_envelope(env);
    validate_master_key(key);
    const std::size_t n_blocks = (static_cast<std::size_t>(env.width) / env.block_size) *
                                 (env.height / env.block_size);
    auto [perm, mask] = build_keystream(key, env.digest, env.ciphertext.size(), n_blocks);
    ImageBuffer shuffled;
    shuffled.width = env.width;
    shuffled.height = env.height;
    shuffled.channels = env.channels;
    shuffled.pixels = xor_diffuse(env.ciphertext, mask);
    const BlockGrid grid = partition_blocks(shuffled, env.block_size);
    return merge_blocks(apply_block_permutation(grid, invert_permutation(perm)));
}

} // namespace chaocrypt

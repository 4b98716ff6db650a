#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cipher.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "metrics.hpp"

namespace chaocrypt {

struct AttackSpec {
    enum class Kind { Speckle, Crop };
    Kind kind = Kind::Speckle;
    double parameter = 0.0; // noise variance alpha, or crop area fraction
    std::uint64_t seed = 0; // speckle only
};

// Uniform multiplicative-noise factors on [-sqrt(3*alpha), +sqrt(3*alpha)], so the
// sample variance equals alpha. Bits are mapped explicitly (not via std distributions)
// to keep draws identical across standard library implementations.
inline std::vector<double> speckle_noise_factors(std::size_t count, double alpha,
                                                 std::uint64_t seed) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw DomainError("speckle: alpha must be a finite non-negative number");
    const double spread = std::sqrt(3.0 * alpha);
    std::mt19937_64 eng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = static_cast<double>(eng() >> 11) * 0x1p-53; // [0,1)
        out.push_back((2.0 * u - 1.0) * spread);
    }
    return out;
}

// v' = clamp(round(v + n*v), 0, 255), n drawn per sample
inline ImageBuffer speckle_noise(const ImageBuffer& img, double alpha, std::uint64_t seed) {
    validate_image(img);
    const std::vector<double> noise = speckle_noise_factors(img.pixels.size(), alpha, seed);
    ImageBuffer out = img;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = static_cast<double>(img.pixels[i]);
        const long long r = std::llround(v + noise[i] * v);
        out.pixels[i] = static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
    }
    return out;
}

// zeroes the top-left square whose side is round(min(w,h) * sqrt(fraction))
inline ImageBuffer crop_loss(const ImageBuffer& img, double fraction) {
    validate_image(img);
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw DomainError("crop: fraction must lie in [0,1]");
    const std::uint32_t base = img.width < img.height ? img.width : img.height;
    const std::uint32_t side =
        static_cast<std::uint32_t>(std::llround(base * std::sqrt(fraction)));
    ImageBuffer out = img;
    for (std::uint32_t y = 0; y < side; ++y) {
        const std::size_t off =
            static_cast<std::size_t>(y) * img.width * img.channels;
        for (std::size_t i = 0; i < static_cast<std::size_t>(side) * img.channels; ++i)
            out.pixels[off + i] = 0;
    }
    return out;
}

inline ImageBuffer apply_attack(const ImageBuffer& img, const AttackSpec& spec) {
    switch (spec.kind) {
    case AttackSpec::Kind::Speckle: return speckle_noise(img, spec.parameter, spec.seed);
    case AttackSpec::Kind::Crop: return crop_loss(img, spec.parameter);
    }
    throw DomainError("unknown attack kind");
}

inline const char* attack_name(AttackSpec::Kind k) {
    return k == AttackSpec::Kind::Speckle ? "speckle" : "crop";
}

struct RobustnessRow {
    std::string attack;
    double parameter = 0.0;
    std::string channel;
    double psnr_db = 0.0;
    double byte_error_rate = 0.0; // fraction of channel bytes recovered incorrectly
};

// For each attack: encrypt, corrupt the ciphertext payload in place (header kept),
// decrypt with the right key, and compare against the plain image per channel.
inline std::vector<RobustnessRow> robustness_report(const ImageBuffer& plain,
                                                    const MasterKey& key,
                                                    std::uint32_t block_size,
                                                    const std::vector<AttackSpec>& attacks) {
    const CipherEnvelope env = encrypt(plain, key, block_size);
    std::vector<RobustnessRow> rows;
    for (const AttackSpec& spec : attacks) {
        ImageBuffer as_image;
        as_image.width = env.width;
        as_image.height = env.height;
        as_image.channels = env.channels;
        as_image.pixels = env.ciphertext;
        CipherEnvelope attacked = env;
        attacked.ciphertext = apply_attack(as_image, spec).pixels;
        const ImageBuffer recovered = decrypt(attacked, key);
        for (std::uint32_t c = 0; c < plain.channels; ++c) {
            const ChannelView pc = extract_channel(plain, c);
            const ChannelView rc = extract_channel(recovered, c);
            RobustnessRow row;
            row.attack = attack_name(spec.kind);
            row.parameter = spec.parameter;
            row.channel = channel_name(plain, c);
            row.psnr_db = psnr(pc, rc);
            row.byte_error_rate = npcr(pc, rc) / 100.0;
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::string robustness_csv(const std::vector<RobustnessRow>& rows) {
    std::string out = "attack,parameter,channel,psnr_db,byte_error_rate\n";
    char buf[160];
    for (const auto& r : rows) {
        if (std::isinf(r.psnr_db))
            std::snprintf(buf, sizeof buf, "%s,%g,%s,inf,%.6f\n", r.attack.c_str(),
                          r.parameter, r.channel.c_str(), r.byte_error_rate);
        else
            std::snprintf(buf, sizeof buf, "%s,%g,%s,%.4f,%.6f\n", r.attack.c_str(),
                          r.parameter, r.channel.c_str(), r.psnr_db, r.byte_error_rate);
        out += buf;
    }
    return out;
}

} // namespace chaocrypt

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "image.hpp"

namespace chaocrypt {

// chi-square critical value, 255 degrees of freedom, p = 0.01
inline constexpr double kChiSquareCritical255 = 310.46;

inline void require_same_shape(const ChannelView& a, const ChannelView& b) {
    validate_channel(a);
    validate_channel(b);
    if (a.width != b.width || a.height != b.height)
        throw DomainError("channel dimensions differ");
}

// percentage of positions whose values differ
inline double npcr(const ChannelView& a, const ChannelView& b) {
    require_same_shape(a, b);
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        diff += a.values[i] != b.values[i] ? 1 : 0;
    return 100.0 * static_cast<double>(diff) / static_cast<double>(a.values.size());
}

// mean absolute difference as a percentage of full scale
inline double uaci(const ChannelView& a, const ChannelView& b) {
    require_same_shape(a, b);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const int d = static_cast<int>(a.values[i]) - static_cast<int>(b.values[i]);
        sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    return 100.0 * static_cast<double>(sum) /
           (255.0 * static_cast<double>(a.values.size()));
}

inline std::array<std::uint64_t, 256> histogram(const ChannelView& ch) {
    validate_channel(ch);
    std::array<std::uint64_t, 256> h{};
    for (std::uint8_t v : ch.values)
        ++h[v];
    return h;
}

// Shannon entropy in bits per symbol; empty bins contribute nothing
inline double shannon_entropy(const ChannelView& ch) {
    const std::array<std::uint64_t, 256> h = histogram(ch);
    const double n = static_cast<double>(ch.values.size());
    double acc = 0.0;
    for (int i = 0; i < 256; ++i) {
        if (h[i] == 0)
            continue;
        const double p = static_cast<double>(h[i]) / n;
        acc -= p * std::log2(p);
    }
    return acc;
}

inline double chi_square_uniformity(const std::array<std::uint64_t, 256>& h) {
    std::uint64_t total = 0;
    for (std::uint64_t c : h)
        total += c;
    if (total == 0)
        throw DomainError("chi_square_uniformity: empty histogram");
    const double expected = static_cast<double>(total) / 256.0;
    double acc = 0.0;
    for (std::uint64_t c : h) {
        const double d = static_cast<double>(c) - expected;
        acc += d * d / expected;
    }
    return acc;
}

enum class Direction { Horizontal, Vertical, Diagonal };

// Pearson correlation over ALL adjacent pairs in the given direction.
inline double adjacent_correlation(const ChannelView& ch, Direction dir) {
    validate_channel(ch);
    if (ch.width < 2 || ch.height < 2)
        throw DomainError("adjacent_correlation: channel must be at least 2x2");
    const std::uint32_t w = ch.width, h = ch.height;
    std::uint32_t dx = 0, dy = 0;
    switch (dir) {
    case Direction::Horizontal: dx = 1; break;
    case Direction::Vertical: dy = 1; break;
    case Direction::Diagonal: dx = 1; dy = 1; break;
    }
    std::uint64_t sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0, n = 0;
    for (std::uint32_t y = 0; y + dy < h; ++y) {
        for (std::uint32_t x = 0; x + dx < w; ++x) {
            const std::uint64_t a = ch.values[static_cast<std::size_t>(y) * w + x];
            const std::uint64_t b =
                ch.values[static_cast<std::size_t>(y + dy) * w + (x + dx)];
            sa += a;
            sb += b;
            sab += a * b;
            saa += a * a;
            sbb += b * b;
            ++n;
        }
    }
    // integer sums are exact; one subtraction each in double keeps full precision
    const double cov = static_cast<double>(n) * static_cast<double>(sab) -
                       static_cast<double>(sa) * static_cast<double>(sb);
    const double va = static_cast<double>(n) * static_cast<double>(saa) -
                      static_cast<double>(sa) * static_cast<double>(sa);
    const double vb = static_cast<double>(n) * static_cast<double>(sbb) -
                      static_cast<double>(sb) * static_cast<double>(sb);
    if (va <= 0.0 || vb <= 0.0)
        throw DomainError("adjacent_correlation: zero variance");
    return cov / std::sqrt(va * vb);
}

inline double mse(const ChannelView& a, const ChannelView& b) {
    require_same_shape(a, b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a.values[i]) -
                               static_cast<std::int64_t>(b.values[i]);
        acc += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(acc) / static_cast<double>(a.values.size());
}

// 10*log10(255^2 / mse); identical channels yield the infinite sentinel
inline double psnr(const ChannelView& a, const ChannelView& b) {
    const double m = mse(a, b);
    if (m == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

// ------------------------------------------------------------------- report ----

struct MetricEntry {
    std::string name;
    std::string value;
};

struct MetricsReport {
    std::vector<MetricEntry> entries;

    void add(const std::string& name, const std::string& value) {
        entries.push_back({name, value});
    }

    void add(const std::string& name, double value) {
        char buf[48];
        if (std::isinf(value))
            std::snprintf(buf, sizeof buf, "%s", value > 0 ? "inf" : "-inf");
        else
            std::snprintf(buf, sizeof buf, "%.6f", value);
        entries.push_back({name, buf});
    }

    // one "name=value" per line
    std::string to_text() const {
        std::string out;
        for (const auto& e : entries) {
            out += e.name;
            out += '=';
            out += e.value;
            out += '\n';
        }
        return out;
    }
};

inline const char* direction_name(Direction d) {
    switch (d) {
    case Direction::Horizontal: return "horizontal";
    case Direction::Vertical: return "vertical";
    default: return "diagonal";
    }
}

// entropy, chi-square, and correlations for every channel of an image
inline MetricsReport analyze_image(const ImageBuffer& img) {
    validate_image(img);
    MetricsReport rep;
    double entropy_sum = 0.0;
    for (std::uint32_t c = 0; c < img.channels; ++c) {
        const ChannelView ch = extract_channel(img, c);
        const std::string name = channel_name(img, c);
        const double ent = shannon_entropy(ch);
        entropy_sum += ent;
        rep.add("entropy." + name, ent);
        rep.add("chi_square." + name, chi_square_uniformity(histogram(ch)));
        for (Direction d : {Direction::Horizontal, Direction::Vertical, Direction::Diagonal})
            rep.add("corr." + std::string(direction_name(d)) + "." + name,
                    adjacent_correlation(ch, d));
    }
    rep.add("entropy.mean", entropy_sum / img.channels);
    return rep;
}

// npcr/uaci between two equally shaped images, per channel plus means
inline MetricsReport diff_images(const ImageBuffer& a, const ImageBuffer& b) {
    validate_image(a);
    validate_image(b);
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DomainError("diff_images: image shapes differ");
    MetricsReport rep;
    double nsum = 0.0, usum = 0.0;
    for (std::uint32_t c = 0; c < a.channels; ++c) {
        const ChannelView ca = extract_channel(a, c);
        const ChannelView cb = extract_channel(b, c);
        const std::string name = channel_name(a, c);
        const double n = npcr(ca, cb), u = uaci(ca, cb);
        nsum += n;
        usum += u;
        rep.add("npcr." + name, n);
        rep.add("uaci." + name, u);
    }
    rep.add("npcr.mean", nsum / a.channels);
    rep.add("uaci.mean", usum / a.channels);
    return rep;
}

// mse/psnr between two equally shaped images, per channel
inline MetricsReport compare_images(const ImageBuffer& a, const ImageBuffer& b) {
    validate_image(a);
    validate_image(b);
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DomainError("compare_images: image shapes differ");
    MetricsReport rep;
    for (std::uint32_t c = 0; c < a.channels; ++c) {
        const ChannelView ca = extract_channel(a, c);
        const ChannelView cb = extract_channel(b, c);
        const std::string name = channel_name(a, c);
        rep.add("mse." + name, mse(ca, cb));
        rep.add("psnr." + name, psnr(ca, cb));
    }
    return rep;
}

} // namespace chaocrypt

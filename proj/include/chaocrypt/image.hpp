#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chaocrypt {

// Interleaved row-major pixel buffer, 8 bits per sample.
struct ImageBuffer {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0; // 3 for color, 1 for grayscale
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height * channels;
    }
};

inline void validate_image(const ImageBuffer& img) {
    if (img.width == 0 || img.height == 0)
        throw DomainError("image dimensions must be positive");
    if (img.channels != 1 && img.channels != 3)
        throw DomainError("image must have 1 or 3 channels");
    if (img.pixels.size() != img.pixel_count())
        throw DomainError("pixel buffer size does not match dimensions");
}

inline ImageBuffer make_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels) {
    ImageBuffer img{width, height, channels, {}};
    if (width == 0 || height == 0)
        throw DomainError("image dimensions must be positive");
    if (channels != 1 && channels != 3)
        throw DomainError("image must have 1 or 3 channels");
    img.pixels.assign(img.pixel_count(), 0);
    return img;
}

// One color plane of an image, kept with its geometry.
struct ChannelView {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> values;
};

inline void validate_channel(const ChannelView& ch) {
    if (ch.width == 0 || ch.height == 0)
        throw DomainError("channel dimensions must be positive");
    if (ch.values.size() != static_cast<std::size_t>(ch.width) * ch.height)
        throw DomainError("channel buffer size does not match dimensions");
}

inline ChannelView extract_channel(const ImageBuffer& img, std::uint32_t channel) {
    validate_image(img);
    if (channel >= img.channels)
        throw DomainError("channel index out of range");
    ChannelView ch{img.width, img.height, {}};
    ch.values.reserve(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = channel; i < img.pixels.size(); i += img.channels)
        ch.values.push_back(img.pixels[i]);
    return ch;
}

inline std::string channel_name(const ImageBuffer& img, std::uint32_t channel) {
    if (img.channels == 1)
        return "gray";
    static const char* names[3] = {"red", "green", "blue"};
    return names[channel];
}

} // namespace chaocrypt

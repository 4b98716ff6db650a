#pragma once

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cipher.hpp"
#include "errors.hpp"
#include "image.hpp"

namespace chaocrypt {

// ---------------------------------------------------------------- PPM (P6) ----

namespace detail {

// next header token, skipping whitespace and '#' comments
inline std::string ppm_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n')
                c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

inline std::uint32_t ppm_number(std::istream& in, const char* what) {
    const std::string tok = ppm_token(in);
    if (tok.empty())
        throw FormatError(std::string("ppm: missing ") + what);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FormatError(std::string("ppm: malformed ") + what);
    unsigned long v = std::strtoul(tok.c_str(), nullptr, 10);
    if (v > 0xFFFFFFFFul)
        throw FormatError(std::string("ppm: ") + what + " out of range");
    return static_cast<std::uint32_t>(v);
}

} // namespace detail

inline ImageBuffer read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::string magic = detail::ppm_token(in);
    if (magic != "P6")
        throw FormatError("ppm: bad magic (expected P6)");
    const std::uint32_t width = detail::ppm_number(in, "width");
    const std::uint32_t height = detail::ppm_number(in, "height");
    const std::uint32_t maxval = detail::ppm_number(in, "maxval");
    if (width == 0 || height == 0)
        throw FormatError("ppm: dimensions must be positive");
    if (maxval != 255)
        throw FormatError("ppm: only maxval 255 is supported");
    // ppm_number consumed exactly one whitespace after maxval; pixel data follows
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.channels = 3;
    img.pixels.resize(img.pixel_count());
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        throw FormatError("ppm: truncated pixel data");
    return img;
}

inline void write_ppm(const std::string& path, const ImageBuffer& img) {
    validate_image(img);
    if (img.channels != 3)
        throw DomainError("ppm: only 3-channel images can be written");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

// ----------------------------------------------------------------- key files ----
//
// Plain text, one "name=value" per line: x y v w mu a b n_iter.
// Reals carry 17 significant digits so a write/read cycle is bit-exact.

inline void write_key(const std::string& path, const MasterKey& key) {
    validate_master_key(key);
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    char buf[64];
    const auto put = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", name, v);
        out << buf;
    };
    put("x", key.x);
    put("y", key.y);
    put("v", key.v);
    put("w", key.w);
    put("mu", key.mu);
    put("a", key.a);
    put("b", key.b);
    out << "n_iter=" << key.n_iter << "\n";
    if (!out)
        throw IoError("write failed for " + path);
}

inline MasterKey read_key(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    MasterKey key;
    bool seen[8] = {};
    static const char* names[8] = {"x", "y", "v", "w", "mu", "a", "b", "n_iter"};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("key: malformed line '" + line + "'");
        const std::string name = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        int idx = -1;
        for (int i = 0; i < 8; ++i)
            if (name == names[i])
                idx = i;
        if (idx < 0)
            throw FormatError("key: unknown field '" + name + "'");
        if (value.empty())
            throw FormatError("key: empty value for '" + name + "'");
        char* end = nullptr;
        errno = 0;
        if (idx == 7) {
            const unsigned long n = std::strtoul(value.c_str(), &end, 10);
            if (errno != 0 || end == value.c_str() || *end != '\0' || n > 0xFFFFFFFFul)
                throw FormatError("key: unparsable n_iter '" + value + "'");
            key.n_iter = static_cast<std::uint32_t>(n);
        } else {
            const double d = std::strtod(value.c_str(), &end);
            if (end == value.c_str() || *end != '\0')
                throw FormatError("key: unparsable number for '" + name + "'");
            double* fields[7] = {&key.x, &key.y, &key.v, &key.w, &key.mu, &key.a, &key.b};
            *fields[idx] = d;
        }
        seen[idx] = true;
    }
    for (int i = 0; i < 8; ++i)
        if (!seen[i])
            throw FormatError(std::string("key: missing field '") + names[i] + "'");
    validate_master_key(key); // out-of-range values surface as domain errors
    return key;
}

// ------------------------------------------------------------- envelope wire ----
//
// Little-endian layout:
//   magic "CBPX" | version u8 = 1 | width u32 | height u32 | channels u8 |
//   block_size u16 | digest u32 | ciphertext bytes (width*height*channels)

inline constexpr char kEnvelopeMagic[4] = {'C', 'B', 'P', 'X'};
inline constexpr std::uint8_t kEnvelopeVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 20;

namespace detail {

inline void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace detail

inline void write_envelope(const std::string& path, const CipherEnvelope& env) {
    validate_envelope(env);
    std::string header;
    header.reserve(kEnvelopeHeaderSize);
    header.append(kEnvelopeMagic, 4);
    header.push_back(static_cast<char>(kEnvelopeVersion));
    detail::put_u32(header, env.width);
    detail::put_u32(header, env.height);
    header.push_back(static_cast<char>(env.channels));
    detail::put_u16(header, env.block_size);
    detail::put_u32(header, env.digest);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(env.ciphertext.data()),
              static_cast<std::streamsize>(env.ciphertext.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

inline CipherEnvelope read_envelope(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (raw.size() < kEnvelopeHeaderSize)
        throw FormatError("envelope: truncated header");
    if (std::memcmp(raw.data(), kEnvelopeMagic, 4) != 0)
        throw FormatError("envelope: bad magic");
    if (raw[4] != kEnvelopeVersion)
        throw FormatError("envelope: unsupported version");
    CipherEnvelope env;
    env.width = detail::get_u32(raw.data() + 5);
    env.height = detail::get_u32(raw.data() + 9);
    env.channels = raw[13];
    env.block_size = detail::get_u16(raw.data() + 14);
    env.digest = detail::get_u32(raw.data() + 16);
    const std::uint64_t expected = static_cast<std::uint64_t>(env.width) * env.height *
                                   env.channels;
    if (raw.size() - kEnvelopeHeaderSize != expected)
        throw FormatError("envelope: payload length does not match header");
    env.ciphertext.assign(raw.begin() + kEnvelopeHeaderSize, raw.end());
    return env;
}

} // namespace chaocrypt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace chaocrypt {

inline constexpr double kMuMin = 3.57; // chaotic band of the logistic map
inline constexpr double kMuMax = 4.0;

struct LogisticParams {
    double x0 = 0.0;
    double mu = 3.99;
};

struct DuffingParams {
    double x0 = 0.0;
    double y0 = 0.0;
    double a = 2.75;
    double b = 0.2;
};

enum class ChaosSource : std::uint8_t { Logistic, Duffing };

struct ChaosSequence {
    ChaosSource source = ChaosSource::Logistic;
    std::vector<double> samples;
};

// Index mapping: output position i takes input element mapping[i].
struct Permutation {
    std::vector<std::uint32_t> mapping;
};

inline double logistic_next(double x, double mu) {
    if (!(x > 0.0 && x < 1.0))
        throw DomainError("logistic_next: state must lie in (0,1)");
    if (!(mu >= kMuMin && mu <= kMuMax))
        throw DomainError("logistic_next: mu must lie in [3.57, 4.0]");
    return mu * x * (1.0 - x);
}

inline std::pair<double, double> duffing_next(double x, double y, double a, double b) {
    const double yn = -b * x + a * y - y * y * y;
    if (!std::isfinite(yn))
        throw NumericError("duffing_next: orbit escaped to a non-finite value");
    return {y, yn};
}

inline void validate_logistic(const LogisticParams& p) {
    if (!(p.x0 > 0.0 && p.x0 < 1.0))
        throw DomainError("logistic seed must lie in (0,1)");
    if (!(p.mu >= kMuMin && p.mu <= kMuMax))
        throw DomainError("logistic mu must lie in [3.57, 4.0]");
}

inline void validate_duffing(const DuffingParams& p) {
    if (!std::isfinite(p.x0) || !std::isfinite(p.y0))
        throw DomainError("duffing seed must be finite");
    if (p.x0 == 0.0 && p.y0 == 0.0)
        throw DomainError("duffing seed (0,0) is a fixed point");
    if (!std::isfinite(p.a) || !std::isfinite(p.b))
        throw DomainError("duffing parameters must be finite");
}

// Iterates the map, discards the first burn_in outputs, then samples count values.
inline ChaosSequence generate_sequence(const LogisticParams& p, std::size_t count, std::size_t burn_in) {
    validate_logistic(p);
    ChaosSequence seq{ChaosSource::Logistic, {}};
    seq.samples.reserve(count);
    double x = p.x0;
    const std::size_t total = burn_in + count;
    for (std::size_t i = 0; i < total; ++i) {
        // re-check the state rather than calling logistic_next: mu = 4.0 can reach exactly 1.0
        if (!(x > 0.0 && x < 1.0))
            throw NumericError("logistic orbit left (0,1)");
        x = p.mu * x * (1.0 - x);
        if (i >= burn_in)
            seq.samples.push_back(x);
    }
    return seq;
}

// Duffing variant samples the y component of the orbit.
inline ChaosSequence generate_sequence(const DuffingParams& p, std::size_t count, std::size_t burn_in) {
    validate_duffing(p);
    ChaosSequence seq{ChaosSource::Duffing, {}};
    seq.samples.reserve(count);
    double x = p.x0;
    double y = p.y0;
    const std::size_t total = burn_in + count;
    for (std::size_t i = 0; i < total; ++i) {
        const double yn = -p.b * x + p.a * y - y * y * y;
        if (!std::isfinite(yn))
            throw NumericError("duffing orbit escaped to a non-finite value");
        x = y;
        y = yn;
        if (i >= burn_in)
            seq.samples.push_back(y);
    }
    return seq;
}

// Stable argsort: mapping[i] is the index of the i-th smallest sample.
inline Permutation floats_to_permutation(std::span<const double> samples) {
    if (samples.empty())
        throw DomainError("floats_to_permutation: empty input");
    if (samples.size() > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("floats_to_permutation: input too long");
    for (double s : samples)
        if (!std::isfinite(s))
            throw DomainError("floats_to_permutation: non-finite sample");
    Permutation perm;
    perm.mapping.resize(samples.size());
    std::iota(perm.mapping.begin(), perm.mapping.end(), 0u);
    std::stable_sort(perm.mapping.begin(), perm.mapping.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return samples[a] < samples[b]; });
    return perm;
}

// Reorders x by the ascending ranks of y: out[i] = x[argsort(y)[i]].
inline std::vector<double> combine_streams(std::span<const double> x_stream,
                                           std::span<const double> y_stream) {
    if (x_stream.size() != y_stream.size())
        throw DomainError("combine_streams: stream lengths differ");
    const Permutation rank = floats_to_permutation(y_stream);
    std::vector<double> out(x_stream.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = x_stream[rank.mapping[i]];
    return out;
}

// byte = floor(frac(|s|) * 1e10) mod 256; keeps the 10th-digit tail of the sample
inline std::vector<std::uint8_t> floats_to_bytes(std::span<const double> samples) {
    std::vector<std::uint8_t> out;
    out.reserve(samples.size());
    for (double s : samples) {
        if (!std::isfinite(s))
            throw NumericError("floats_to_bytes: non-finite sample");
        const double mag = std::fabs(s);
        const double fr = mag - std::floor(mag);
        out.push_back(static_cast<std::uint8_t>(std::fmod(std::floor(fr * 1e10), 256.0)));
    }
    return out;
}

inline Permutation invert_permutation(const Permutation& perm) {
    const std::size_t n = perm.mapping.size();
    Permutation inv;
    inv.mapping.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t j = perm.mapping[i];
        if (j >= n || seen[j])
            throw DomainError("invert_permutation: mapping is not a bijection");
        seen[j] = true;
        inv.mapping[j] = static_cast<std::uint32_t>(i);
    }
    return inv;
}

} // namespace chaocrypt

#include "fkrfe/rng.hpp"

#include <cmath>
#include <numbers>

namespace fkrfe {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t stream_key(SeedSpec seed, std::string_view tag, std::uint64_t index) {
    std::uint64_t k = mix64(seed.master_seed);
    k = mix64(k ^ fnv1a(tag));
    k = mix64(k ^ index);
    return k;
}

RngStream::RngStream(std::uint64_t key) {
    // expand the key through splitmix64 into the 256-bit state
    std::uint64_t s = key;
    for (auto& w : state_) w = mix64(s++);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double RngStream::normal() {
    // u1 in (0,1] so the log is finite
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::exponential() {
    return -std::log(1.0 - uniform());
}

double RngStream::student_t2() {
    // t_2 = Z / sqrt(V/2) with V ~ chi^2_2, and chi^2_2 / 2 ~ Exp(1)
    return normal() / std::sqrt(exponential());
}

double RngStream::poisson(double mean) {
    if (mean <= 0.0) return 0.0;
    if (mean < 30.0) return poisson_knuth(mean);
    return poisson_ptrs(mean);
}

double RngStream::poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    double prod = 1.0;
    double k = -1.0;
    do {
        k += 1.0;
        prod *= uniform();
    } while (prod > limit);
    return k;
}

// Hormann's PTRS transformed-rejection sampler, valid for mean >= 10.
double RngStream::poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = 1.0 - uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return k;
        }
    }
}

std::vector<std::size_t> RngStream::permutation(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle(idx);
    return idx;
}

RngStream substream(SeedSpec seed, std::string_view tag, std::uint64_t index) {
    return RngStream(stream_key(seed, tag, index));
}

SeedSpec derive_seed(SeedSpec seed, std::string_view tag, std::uint64_t index) {
    return SeedSpec{stream_key(seed, tag, index)};
}

}  // namespace fkrfe

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fkrfe {

// Master seed for a whole run. Every stochastic operation derives its own
// stream from (master_seed, tag, index), so results do not depend on how
// work is scheduled across threads.
struct SeedSpec {
    std::uint64_t master_seed = 0;
};

std::uint64_t mix64(std::uint64_t x);  // splitmix64 finalizer

// Key for one substream; stable across platforms.
std::uint64_t stream_key(SeedSpec seed, std::string_view tag, std::uint64_t index);

// xoshiro256++ with hand-rolled distributions. std::* distributions are
// implementation-defined, which would break the cross-machine replay
// contract, so every draw here is specified bit-for-bit.
class RngStream {
  public:
    explicit RngStream(std::uint64_t key);

    std::uint64_t next_u64();

    // [0, 1), 53-bit resolution
    double uniform();

    // uniform on {0, ..., bound-1}, unbiased (rejection)
    std::uint64_t uniform_below(std::uint64_t bound);

    double normal();                    // N(0,1), Box-Muller
    double exponential();               // mean 1
    double student_t2();                // t with 2 degrees of freedom
    double poisson(double mean);        // integer-valued, returned as double

    // in-place Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t k = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[k]);
        }
    }

    std::vector<std::size_t> permutation(std::size_t n);

  private:
    double poisson_knuth(double mean);
    double poisson_ptrs(double mean);

    std::array<std::uint64_t, 4> state_;
};

// Stream for one unit of work.
RngStream substream(SeedSpec seed, std::string_view tag, std::uint64_t index);

// Fresh SeedSpec for a nested scope (per replication, per RFE step, ...).
SeedSpec derive_seed(SeedSpec seed, std::string_view tag, std::uint64_t index);

}  // namespace fkrfe

#ifndef RMLMC_RNG_HPP
#define RMLMC_RNG_HPP

#include <array>
#include <cstdint>

namespace rmlmc {

// Counter-based random stream (Philox4x64, 10 rounds). A stream is a pure
// function of (root_seed, stream_index): draws are identical no matter which
// worker consumes them, and distinct indices give independent sequences.
// Output-compatible with numpy.random.Philox for the same key/counter.
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    // Uniform on [0,1), 53-bit resolution.
    double uniform();

    // Standard normal via inverse CDF of a uniform on (0,1). One draw per
    // call, no rejection, so stream layout is input-independent.
    double normal();

    std::uint64_t root_seed() const { return root_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

private:
    void refill();

    std::uint64_t root_seed_;
    std::uint64_t stream_index_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> block_;
    int pos_;
};

inline RngStream derive_stream(std::uint64_t root_seed, std::uint64_t index) {
    return RngStream(root_seed, index);
}

// One keyed block of the underlying generator, exposed for known-answer tests.
std::array<std::uint64_t, 4> philox4x64_block(const std::array<std::uint64_t, 2>& key,
                                              const std::array<std::uint64_t, 4>& counter);

// Standard normal CDF.
double normal_cdf(double z);

// Standard normal quantile (Wichura's AS 241, double precision).
double normal_quantile(double p);

}  // namespace rmlmc

#endif

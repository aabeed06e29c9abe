#pragma once

// Counter-based random stream.
//
// Output i of stream (key, stream_id) is a pure function of the three
// integers, so work split across threads in any order draws the same
// numbers. The mixing function is the SplitMix64 finaliser applied twice.

#include <cstdint>
#include <string_view>

namespace seqrac {

inline constexpr std::string_view kRngAlgorithm = "splitmix64-ctr/1";

class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t key, std::uint64_t stream_id) : key_(key), stream_(stream_id) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() { return at(key_, stream_, counter_++); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Fair coin.
    bool bit() { return ((*this)() >> 63) != 0; }

    std::uint64_t counter() const { return counter_; }

    static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t stream_id, std::uint64_t counter) {
        std::uint64_t z = mix(key + 0x9E3779B97F4A7C15ULL * (stream_id + 1));
        z ^= counter * 0xD1B54A32D192ED03ULL;
        return mix(z + 0x9E3779B97F4A7C15ULL);
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace seqrac

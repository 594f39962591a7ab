#pragma once

#include <cstdint>

namespace gsplab {

/// Counter-based uniform stream: draw i is a pure function of
/// (seed, stream, i), built on the SplitMix64 finalizer.  Random access in i
/// lets chunks of one stream be generated in parallel with identical output.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), key_(mix(seed ^ mix(stream + kGolden))) {}

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t bits_at(std::uint64_t counter) const { return mix(key_ + (counter + 1) * kGolden); }

    /// Uniform in the open interval (0, 1) with 53 random bits.
    double uniform_at(std::uint64_t counter) const {
        return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    CounterRng split(std::uint64_t stream) const { return CounterRng(seed_, mix(stream_ + 1) ^ stream); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
};

}  // namespace gsplab

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "als/types.hpp"

namespace als {

/// Deterministic random stream addressed by (seed, stream_id).
///
/// Every stochastic operation in the engine owns its own stream so that
/// trials, cycles, and sub-operations draw from independent sequences and
/// identical (seed, stream_id) pairs always replay the same draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id),
          engine_(mix(splitmix64(seed), splitmix64(stream_id * 0x9E3779B97F4A7C15ULL + 1))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform integer in [0, n). n must be positive.
    int uniform_int(int n) {
        std::uniform_int_distribution<int> dist(0, n - 1);
        return dist(engine_);
    }

    /// Uniform real in [lo, hi).
    double uniform_real(double lo = 0.0, double hi = 1.0) {
        std::uniform_real_distribution<double> dist(lo, hi);
        return dist(engine_);
    }

    /// Standard normal draw.
    double normal() { return normal_(engine_); }

    /// Bernoulli draw with success probability p.
    bool bernoulli(double p) {
        std::bernoulli_distribution dist(p);
        return dist(engine_);
    }

    /// k distinct items from [0, n), uniform without replacement, in draw order.
    std::vector<int> sample_without_replacement(int n, int k);

    /// k distinct elements of `items`, uniform without replacement, in draw order.
    IndexSet sample_without_replacement(const IndexSet& items, int k);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            std::swap(v[static_cast<std::size_t>(i)],
                      v[static_cast<std::size_t>(uniform_int(i + 1))]);
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Fixed stream-id layout. Cycle-scoped streams add the cycle index.
namespace stream {
inline constexpr std::uint64_t kDataset = 1;
inline constexpr std::uint64_t kTestSet = 2;
inline constexpr std::uint64_t kOodSource = 3;
inline constexpr std::uint64_t kScenario = 4;
inline constexpr std::uint64_t kInitial = 5;
inline constexpr std::uint64_t kTrainBase = 100;     // + cycle
inline constexpr std::uint64_t kInferBase = 1100;    // + cycle
inline constexpr std::uint64_t kStrategyBase = 2100; // + cycle
inline constexpr std::uint64_t kAuxBase = 3100;      // + cycle
} // namespace stream

} // namespace als

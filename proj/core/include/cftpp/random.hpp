#pragma once

#include <cstdint>
#include <vector>

namespace cftpp::rng {

/// One step of a stream key path: a structural role (label) plus an index
/// within that role (realization number, replicate number, node id, ...).
struct PathEntry {
    std::uint32_t label = 0;
    std::uint64_t index = 0;
};

/// Identifies a random stream: a master seed plus a structural path.
/// Distinct paths under the same seed give independent streams, and the
/// stream for a given key is identical across runs and thread schedules.
struct StreamKey {
    std::uint64_t master_seed = 0;
    std::vector<PathEntry> path;
};

/// Counter-based random stream (Philox4x32-10 under a key hashed from the
/// master seed and path). Creating a stream for a key is pure; drawing
/// advances only this instance. All primitives are inverse-CDF sampled so
/// the number of draws consumed per call is fixed.
class Stream {
public:
    static Stream root(std::uint64_t master_seed);
    static Stream from_key(const StreamKey& key);

    /// Derives the stream for the child path (label, index). Pure: does not
    /// depend on or affect this stream's draw position.
    Stream child(std::uint32_t label, std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform();

    /// Exp(rate) via -log(u)/rate. Throws std::invalid_argument if rate <= 0.
    double exponential(double rate);

    /// Standard Gumbel(0,1) via -log(-log(u)).
    double gumbel();

    /// N(0, sigma^2) via the normal quantile function.
    /// Throws std::invalid_argument if sigma < 0.
    double normal(double sigma);

private:
    explicit Stream(std::uint64_t digest);

    std::uint64_t digest_;    // absorbed (seed, path) identity
    std::uint64_t key_;       // Philox key
    std::uint64_t space_;     // high half of the 128-bit counter
    std::uint64_t counter_ = 0;
    std::uint64_t buffer_[2] = {0, 0};
    int available_ = 0;

    void refill();
};

}  // namespace cftpp::rng

#include "cftpp/random.hpp"

#include <cmath>
#include <stdexcept>

#include "cftpp/stats.hpp"

namespace cftpp::rng {

namespace {

// Philox4x32 round constants (Salmon et al., SC 2011).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::uint64_t mix64(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t absorb(std::uint64_t digest, std::uint64_t value) {
    return mix64(digest ^ mix64(value));
}

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t next[4] = {hi1 ^ ctr[1] ^ key[0], lo1,
                                   hi0 ^ ctr[3] ^ key[1], lo0};
    ctr[0] = next[0];
    ctr[1] = next[1];
    ctr[2] = next[2];
    ctr[3] = next[3];
}

inline void philox4x32_10(std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1) {
    std::uint32_t key[2] = {k0, k1};
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
}

constexpr std::uint64_t kRootDigest = 0x243F6A8885A308D3ull;  // pi fraction
constexpr std::uint64_t kKeyTweak = 0x452821E638D01377ull;
constexpr std::uint64_t kSpaceTweak = 0xBE5466CF34E90C6Cull;

}  // namespace

Stream::Stream(std::uint64_t digest)
    : digest_(digest),
      key_(mix64(digest ^ kKeyTweak)),
      space_(mix64(digest ^ kSpaceTweak)) {}

Stream Stream::root(std::uint64_t master_seed) {
    return Stream(absorb(kRootDigest, master_seed));
}

Stream Stream::from_key(const StreamKey& key) {
    Stream s = root(key.master_seed);
    for (const PathEntry& entry : key.path) {
        s = s.child(entry.label, entry.index);
    }
    return s;
}

Stream Stream::child(std::uint32_t label, std::uint64_t index) const {
    return Stream(absorb(absorb(digest_, label), index));
}

void Stream::refill() {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(space_),
        static_cast<std::uint32_t>(space_ >> 32),
    };
    philox4x32_10(ctr, static_cast<std::uint32_t>(key_),
                  static_cast<std::uint32_t>(key_ >> 32));
    ++counter_;
    buffer_[0] = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    buffer_[1] = (static_cast<std::uint64_t>(ctr[3]) << 32) | ctr[2];
    available_ = 2;
}

std::uint64_t Stream::next_u64() {
    if (available_ == 0) {
        refill();
    }
    return buffer_[--available_];
}

double Stream::uniform() {
    // 53-bit mantissa offset by 1/2 keeps the value strictly inside (0,1).
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Stream::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("exponential: rate must be positive");
    }
    return -std::log(uniform()) / rate;
}

double Stream::gumbel() {
    return -std::log(-std::log(uniform()));
}

double Stream::normal(double sigma) {
    if (sigma < 0.0) {
        throw std::invalid_argument("normal: sigma must be nonnegative");
    }
    return sigma * stats::normal_quantile(uniform());
}

}  // namespace cftpp::rng

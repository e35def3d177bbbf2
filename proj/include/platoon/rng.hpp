#pragma once

#include <cstdint>

namespace platoon {

// Counter-based seedable RNG built on the splitmix64 finalizer. Substreams are
// derived by hashing an index into the parent state, so a fixed tuple
// (seed, replica, vehicle, step) always reproduces the same draws bit-exactly,
// independent of evaluation order.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    // Derived child stream; independent of the parent's future draws.
    [[nodiscard]] RngStream substream(std::uint64_t index) const;
    [[nodiscard]] RngStream substream(std::uint64_t a, std::uint64_t b) const;
    [[nodiscard]] RngStream substream(std::uint64_t a, std::uint64_t b, std::uint64_t c) const;

    // Next uniform draw in [0, 1).
    double uniform();

    [[nodiscard]] std::uint64_t next_u64();

  private:
    struct raw_tag {};
    RngStream(std::uint64_t state, raw_tag) : state_(state) {}

    std::uint64_t state_;
};

// Substream index tags used by the simulator so that transmitted-state draws
// and the eavesdropper's estimator draws never share randomness.
inline constexpr std::uint64_t kRngDomainTransmit = 0;
inline constexpr std::uint64_t kRngDomainAttack = 1;

}  // namespace platoon

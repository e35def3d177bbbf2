#include "platoon/rng.hpp"

namespace platoon {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 output finalizer (Steele, Lea, Flood 2014; public domain).
constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t state, std::uint64_t index) {
    return mix(state ^ mix((index + 1) * kGolden));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : state_(mix(seed + kGolden)) {}

RngStream RngStream::substream(std::uint64_t index) const {
    return RngStream(derive(state_, index), raw_tag{});
}

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b) const {
    return RngStream(derive(derive(state_, a), b), raw_tag{});
}

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return RngStream(derive(derive(derive(state_, a), b), c), raw_tag{});
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

double RngStream::uniform() {
    // 53 random mantissa bits -> [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace platoon

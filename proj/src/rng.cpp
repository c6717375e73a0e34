#include "dropsim/rng.hpp"

#include <cassert>
#include <cmath>

namespace dropsim {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Stafford mix13 finalizer.
uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(mix64(seed ^ mix64((stream_id + 1) * kGolden))),
      counter_(0) {}

uint64_t RngStream::next_u64() {
    counter_ += kGolden;
    return mix64(counter_ ^ key_);
}

double RngStream::next_unit() {
    // 53-bit draw mapped to (0, 1]
    uint64_t bits = next_u64() >> 11;
    return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double exp_from_unit(double u, double mean) {
    return -mean * std::log(u);
}

double exp_sample(RngStream& rng, double mean) {
    assert(mean > 0.0);
    double u = rng.next_unit();
    while (u == 1.0)
        u = rng.next_unit();
    return exp_from_unit(u, mean);
}

}  // namespace dropsim

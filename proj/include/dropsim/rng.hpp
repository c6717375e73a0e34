#pragma once

#include <cstdint>

namespace dropsim {

// Counter-based random stream: the output at position n is a hash of
// (key, n), where the key is derived from (seed, stream_id). Streams with
// the same seed but different ids are independent, and every (seed, id)
// pair reproduces the same sequence, which is what run determinism and
// per-consumer stream splitting rely on.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(uint64_t seed, uint64_t stream_id);

    uint64_t next_u64();
    double next_unit();  // uniform in (0, 1]

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

private:
    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t key_;
    uint64_t counter_;
};

// Inverse-CDF exponential: -mean * ln(u) for u in (0, 1].
double exp_from_unit(double u, double mean);

// Exponential variate with the given mean. A u == 1 draw (the one input
// mapping to zero) is rediscarded so samples are strictly positive.
double exp_sample(RngStream& rng, double mean);

}  // namespace dropsim

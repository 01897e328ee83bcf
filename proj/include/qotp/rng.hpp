#ifndef QOTP_RNG_HPP
#define QOTP_RNG_HPP

#include <cstdint>

#include "qotp/bits.hpp"

namespace qotp {

// xoshiro256++ seeded through splitmix64. Hand-rolled so every draw is
// bit-identical across platforms and standard-library versions; the
// reproducibility contract of run records depends on that.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t u64();
    // Uniform in [0, 1), 53 bits of mantissa.
    double real();
    bool bit() { return u64() >> 63; }
    // Uniform integer in [0, n), n >= 1. Rejection sampled, no modulo bias.
    std::uint64_t below(std::uint64_t n);
    BitVec bits(std::size_t n);
    // Standard normal via Box-Muller.
    double gauss();

  private:
    std::uint64_t s_[4];
    bool have_cached_gauss_ = false;
    double cached_gauss_ = 0.0;
};

// Derives an independent stream seed from (seed, tag). Used for the
// per-purpose streams inside a protocol run and for per-trial seeds, so
// results do not depend on scheduling or thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace qotp

#endif

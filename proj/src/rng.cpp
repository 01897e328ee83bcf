#include "qotp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qotp {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t st = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
    std::uint64_t a = splitmix64(st);
    std::uint64_t b = splitmix64(st);
    return a ^ (b >> 1);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& s : s_) s = splitmix64(st);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::real() {
    return double(u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = u64();
    } while (v >= limit);
    return v % n;
}

BitVec Rng::bits(std::size_t n) {
    BitVec out(n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, bit());
    return out;
}

double Rng::gauss() {
    if (have_cached_gauss_) {
        have_cached_gauss_ = false;
        return cached_gauss_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = real();
    double u2 = real();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_gauss_ = r * std::sin(theta);
    have_cached_gauss_ = true;
    return r * std::cos(theta);
}

}  // namespace qotp

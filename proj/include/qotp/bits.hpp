#ifndef QOTP_BITS_HPP
#define QOTP_BITS_HPP

#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qotp {

// Packed bit string. Bit i lives in word i/64 at position i%64; unused high
// bits of the last word are always zero, so word-wise comparison is exact.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view bits01);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool v);
    void flip(std::size_t i);

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    std::size_t popcount() const;
    bool any() const;

    // Parity of popcount(this AND o); the workhorse of symplectic products.
    bool parity_and(const BitVec& o) const;

    BitVec slice(std::size_t begin, std::size_t len) const;
    BitVec concat(const BitVec& o) const;

    std::string to_string01() const;
    // Lowercase hex, one nibble per 4 bits, bit 4k..4k+3 -> nibble k (LSB first).
    std::string to_hex() const;

    const std::vector<std::uint64_t>& words() const { return w_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace qotp

#endif

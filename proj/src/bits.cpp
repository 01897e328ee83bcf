#include "qotp/bits.hpp"

#include <bit>
#include <stdexcept>

namespace qotp {

BitVec BitVec::from_string(std::string_view bits01) {
    BitVec out(bits01.size());
    for (std::size_t i = 0; i < bits01.size(); ++i) {
        char c = bits01[i];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("BitVec::from_string: expected only '0'/'1'");
        }
        out.set(i, c == '1');
    }
    return out;
}

bool BitVec::get(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("BitVec::get: index out of range");
    return (w_[i >> 6] >> (i & 63)) & 1u;
}

void BitVec::set(std::size_t i, bool v) {
    if (i >= n_) throw std::out_of_range("BitVec::set: index out of range");
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (v) {
        w_[i >> 6] |= mask;
    } else {
        w_[i >> 6] &= ~mask;
    }
}

void BitVec::flip(std::size_t i) {
    if (i >= n_) throw std::out_of_range("BitVec::flip: index out of range");
    w_[i >> 6] ^= std::uint64_t(1) << (i & 63);
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec::operator^=: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += std::size_t(std::popcount(w));
    return c;
}

bool BitVec::any() const {
    for (std::uint64_t w : w_) {
        if (w) return true;
    }
    return false;
}

bool BitVec::parity_and(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec::parity_and: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
}

BitVec BitVec::slice(std::size_t begin, std::size_t len) const {
    if (begin + len > n_) throw std::out_of_range("BitVec::slice: range out of bounds");
    BitVec out(len);
    for (std::size_t i = 0; i < len; ++i) out.set(i, get(begin + i));
    return out;
}

BitVec BitVec::concat(const BitVec& o) const {
    BitVec out(n_ + o.n_);
    for (std::size_t i = 0; i < n_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < o.n_; ++i) out.set(n_ + i, o.get(i));
    return out;
}

std::string BitVec::to_string01() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nibbles = (n_ + 3) / 4;
    std::string s(nibbles, '0');
    for (std::size_t k = 0; k < nibbles; ++k) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t i = 4 * k + b;
            if (i < n_ && get(i)) v |= 1u << b;
        }
        s[k] = digits[v];
    }
    return s;
}

}  // namespace qotp

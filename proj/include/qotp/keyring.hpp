#ifndef QOTP_KEYRING_HPP
#define QOTP_KEYRING_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qotp/bits.hpp"
#include "qotp/pauli.hpp"
#include "qotp/records.hpp"
#include "qotp/rng.hpp"

namespace qotp {

// Toeplitz family over GF(2): output bit i is the parity of the input ANDed
// with the seed window [i, i+j). Two-universal: distinct inputs collide with
// probability exactly 2^-t over a uniform seed.
struct ToeplitzHash {
    int in_len = 0;   // j
    int out_len = 0;  // t
    BitVec seed;      // j + t - 1 bits

    ToeplitzHash(int j, int t, BitVec seed_bits);
};

BitVec toeplitz_hash(const BitVec& input, const ToeplitzHash& h);

// Result of a recycling event. The hash seed is public and fresh per event;
// it rides along so run records can archive it.
struct RecycledKey {
    BitVec bits;
    BitVec hash_seed;
};

// Accept branch: the 2m pad bits survive verbatim, the 2s authentication
// bits are hashed down to s - 2. Requires s >= 3.
RecycledKey recycle_on_accept(const KeyString& key, std::uint64_t seed);

// Reject branch: the whole key is hashed down to m + s - 2. Requires m+s >= 3.
RecycledKey recycle_on_reject(const KeyString& key, std::uint64_t seed);

// Tops a recycled key up with fresh random bits so it can drive another
// authenticated round at the same (m, s).
KeyString pad_recycled(const RecycledKey& recycled, int m, int s, Rng& fresh);

struct LedgerEntry {
    Protocol protocol = Protocol::sqas;
    std::uint64_t seed = 0;
    long long delta_q = 0;
    long long delta_m = 0;
    long long delta_k = 0;
};

// Append-only resource ledger; one entry per completed run.
class Ledger {
  public:
    void record(const RunRecord& run);
    void append_raw(const LedgerEntry& e) { entries_.push_back(e); }
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::string to_csv() const;  // header: protocol,seed,delta_q,delta_m,delta_k
    static Ledger from_csv(std::istream& in);
    static Ledger from_csv_string(const std::string& text);

  private:
    std::vector<LedgerEntry> entries_;
};

struct AuditReport {
    bool ok = true;
    std::vector<std::size_t> violations;  // entry indices, prefix checks included
    std::string to_json() const;
};

// Checks delta_k <= delta_q - delta_m entry-wise and on every prefix sum.
AuditReport audit_law(const Ledger& ledger);

}  // namespace qotp

#endif

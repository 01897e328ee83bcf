#include "qotp/keyring.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qotp {

ToeplitzHash::ToeplitzHash(int j, int t, BitVec seed_bits)
    : in_len(j), out_len(t), seed(std::move(seed_bits)) {
    if (j < 1 || t < 1) throw std::invalid_argument("ToeplitzHash: lengths must be positive");
    if (t > j) throw std::invalid_argument("ToeplitzHash: output cannot exceed input length");
    if (seed.size() != std::size_t(j + t - 1)) {
        throw std::invalid_argument("ToeplitzHash: seed must have j + t - 1 bits");
    }
}

BitVec toeplitz_hash(const BitVec& input, const ToeplitzHash& h) {
    if (input.size() != std::size_t(h.in_len)) {
        throw std::invalid_argument("toeplitz_hash: input length mismatch");
    }
    BitVec out{std::size_t(h.out_len)};
    for (int i = 0; i < h.out_len; ++i) {
        bool b = false;
        for (int k = 0; k < h.in_len; ++k) {
            b ^= input.get(std::size_t(k)) && h.seed.get(std::size_t(i + k));
        }
        out.set(std::size_t(i), b);
    }
    return out;
}

RecycledKey recycle_on_accept(const KeyString& key, std::uint64_t seed) {
    const int s = key.s();
    if (s < 3) {
        throw std::invalid_argument("recycle_on_accept: s must be at least 3");
    }
    const int j = 2 * s;
    const int t = s - 2;
    Rng rng(derive_seed(seed, 0x52454359u));
    BitVec hash_seed = rng.bits(std::size_t(j + t - 1));
    BitVec yz = key.y_bits().concat(key.z_bits());
    BitVec hashed = toeplitz_hash(yz, ToeplitzHash(j, t, hash_seed));
    return RecycledKey{key.x_bits().concat(hashed), std::move(hash_seed)};
}

RecycledKey recycle_on_reject(const KeyString& key, std::uint64_t seed) {
    const int m = key.m(), s = key.s();
    if (m + s < 3) {
        throw std::invalid_argument("recycle_on_reject: m + s must be at least 3");
    }
    const int j = 2 * m + 2 * s;
    const int t = m + s - 2;
    Rng rng(derive_seed(seed, 0x52454A43u));
    BitVec hash_seed = rng.bits(std::size_t(j + t - 1));
    BitVec hashed = toeplitz_hash(key.bits(), ToeplitzHash(j, t, hash_seed));
    return RecycledKey{std::move(hashed), std::move(hash_seed)};
}

KeyString pad_recycled(const RecycledKey& recycled, int m, int s, Rng& fresh) {
    const std::size_t want = std::size_t(2 * m + 2 * s);
    if (recycled.bits.size() > want) {
        throw std::invalid_argument("pad_recycled: recycled key longer than target");
    }
    BitVec padding = fresh.bits(want - recycled.bits.size());
    return KeyString(m, s, recycled.bits.concat(padding));
}

void Ledger::record(const RunRecord& run) {
    LedgerEntry e;
    e.protocol = run.protocol;
    e.seed = run.seed;
    e.delta_q = run.qubits_sent;
    e.delta_m = run.message_bits_delivered;
    e.delta_k = (long long)(run.key_recycled_bits) - run.key_consumed_bits;
    entries_.push_back(e);
}

std::string Ledger::to_csv() const {
    std::ostringstream os;
    os << "protocol,seed,delta_q,delta_m,delta_k\n";
    for (const auto& e : entries_) {
        os << protocol_name(e.protocol) << ',' << e.seed << ',' << e.delta_q << ',' << e.delta_m
           << ',' << e.delta_k << '\n';
    }
    return os.str();
}

Ledger Ledger::from_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::invalid_argument("ledger csv: empty input");
    }
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "protocol,seed,delta_q,delta_m,delta_k") {
        throw std::invalid_argument("ledger csv: bad header");
    }
    Ledger ledger;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw std::invalid_argument("ledger csv: wrong field count at line " +
                                        std::to_string(lineno));
        }
        LedgerEntry e;
        try {
            e.protocol = protocol_from_name(fields[0]);
            e.seed = std::stoull(fields[1]);
            e.delta_q = std::stoll(fields[2]);
            e.delta_m = std::stoll(fields[3]);
            e.delta_k = std::stoll(fields[4]);
        } catch (const std::exception&) {
            throw std::invalid_argument("ledger csv: malformed row at line " +
                                        std::to_string(lineno));
        }
        ledger.entries_.push_back(e);
    }
    return ledger;
}

Ledger Ledger::from_csv_string(const std::string& text) {
    std::istringstream is(text);
    return from_csv(is);
}

std::string AuditReport::to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = ok;
    j["violations"] = violations;
    return j.dump();
}

AuditReport audit_law(const Ledger& ledger) {
    AuditReport report;
    long long kq = 0, km = 0, kk = 0;
    for (std::size_t i = 0; i < ledger.entries().size(); ++i) {
        const auto& e = ledger.entries()[i];
        bool bad = e.delta_k > e.delta_q - e.delta_m;
        kq += e.delta_q;
        km += e.delta_m;
        kk += e.delta_k;
        if (kk > kq - km) bad = true;
        if (bad) {
            report.ok = false;
            report.violations.push_back(i);
        }
    }
    return report;
}

}  // namespace qotp

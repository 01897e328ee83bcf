#ifndef QOTP_RECORDS_HPP
#define QOTP_RECORDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace qotp {

enum class Protocol {
    sqas,
    modified_qas,
    interactive,
    teleport,
    secret_sharing,
    protect_entanglement,
};

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

// Per-run outcome and resource counts. The serialized form is one JSON
// object per line with exactly the fields below (eve_key_product_distance
// only when measured, plus an optional "analysis" sub-object).
struct RunRecord {
    Protocol protocol = Protocol::sqas;
    std::uint64_t seed = 0;
    bool accepted = false;
    double fidelity_out = 0.0;
    int qubits_sent = 0;
    int cbits_forward = 0;
    int cbits_back = 0;
    int key_consumed_bits = 0;
    int key_recycled_bits = 0;
    std::optional<double> eve_key_product_distance;

    // Bookkeeping that feeds the resource ledger but is not serialized:
    // message bits delivered counts m qubits on accept, plus the plaintext
    // length of any encrypted classical message.
    int message_bits_delivered = 0;
    // Extra diagnostics, serialized under "analysis" when present.
    std::optional<double> ab_ref_overlap;

    std::string to_json_line() const;

    // Checks a serialized record against the field contract above.
    static bool validate_json_line(const std::string& line, std::string* error = nullptr);
};

}  // namespace qotp

#endif

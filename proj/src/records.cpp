#include "qotp/records.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qotp {

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::sqas: return "sqas";
        case Protocol::modified_qas: return "modified_qas";
        case Protocol::interactive: return "interactive";
        case Protocol::teleport: return "teleport";
        case Protocol::secret_sharing: return "secret_sharing";
        case Protocol::protect_entanglement: return "protect_entanglement";
    }
    throw std::logic_error("protocol_name: unreachable");
}

Protocol protocol_from_name(const std::string& name) {
    for (Protocol p : {Protocol::sqas, Protocol::modified_qas, Protocol::interactive,
                       Protocol::teleport, Protocol::secret_sharing,
                       Protocol::protect_entanglement}) {
        if (name == protocol_name(p)) return p;
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

std::string RunRecord::to_json_line() const {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(protocol);
    j["seed"] = seed;
    j["accepted"] = accepted;
    j["fidelity_out"] = fidelity_out;
    j["qubits_sent"] = qubits_sent;
    j["cbits_forward"] = cbits_forward;
    j["cbits_back"] = cbits_back;
    j["key_consumed_bits"] = key_consumed_bits;
    j["key_recycled_bits"] = key_recycled_bits;
    if (eve_key_product_distance) j["eve_key_product_distance"] = *eve_key_product_distance;
    if (ab_ref_overlap) j["analysis"] = nlohmann::ordered_json{{"ab_ref_overlap", *ab_ref_overlap}};
    return j.dump();
}

bool RunRecord::validate_json_line(const std::string& line, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        return fail(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) return fail("record is not an object");

    struct Field {
        const char* name;
        bool required;
    };
    static const Field fields[] = {
        {"protocol", true},       {"seed", true},
        {"accepted", true},       {"fidelity_out", true},
        {"qubits_sent", true},    {"cbits_forward", true},
        {"cbits_back", true},     {"key_consumed_bits", true},
        {"key_recycled_bits", true},
        {"eve_key_product_distance", false},
        {"analysis", false},
    };
    for (const auto& f : fields) {
        if (f.required && !j.contains(f.name)) {
            return fail(std::string("missing field '") + f.name + "'");
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const auto& f : fields) {
            if (it.key() == f.name) known = true;
        }
        if (!known) return fail("unexpected field '" + it.key() + "'");
    }
    try {
        protocol_from_name(j["protocol"].get<std::string>());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    if (!j["accepted"].is_boolean()) return fail("'accepted' must be boolean");
    double f = j["fidelity_out"].get<double>();
    if (f < 0.0 || f > 1.0) return fail("'fidelity_out' out of [0,1]");
    for (const char* cnt : {"qubits_sent", "cbits_forward", "cbits_back", "key_consumed_bits",
                            "key_recycled_bits"}) {
        if (!j[cnt].is_number_integer() || j[cnt].get<long long>() < 0) {
            return fail(std::string("'") + cnt + "' must be a nonnegative integer");
        }
    }
    return true;
}

}  // namespace qotp

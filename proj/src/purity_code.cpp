#include "qotp/purity_code.hpp"

#include <cmath>
#include <stdexcept>

namespace qotp {

std::vector<PauliString> PurityTestingCode::stabilizers() const {
    std::vector<PauliString> out;
    out.reserve(std::size_t(s));
    for (int i = 0; i < s; ++i) {
        out.push_back(circuit.conjugate(PauliString::single(n(), m + i, 'Z')));
    }
    return out;
}

BitVec PurityTestingCode::syndrome_flips(const PauliString& attack) const {
    if (attack.n() != n()) throw std::invalid_argument("syndrome_flips: attack size mismatch");
    // Behind the decoder the attack flips ancilla i iff it carries an X there,
    // which happens iff it anticommutes with the corresponding stabilizer.
    PauliString back = pulled_back(attack);
    BitVec flips{std::size_t(s)};
    for (int i = 0; i < s; ++i) flips.set(std::size_t(i), back.x(m + i));
    return flips;
}

PauliString PurityTestingCode::pulled_back(const PauliString& attack) const {
    return circuit.conjugate_inverse(attack);
}

PurityTestingCode sample_code(int m, int s, const BitVec& z) {
    if (m < 1 || s < 1) throw std::invalid_argument("sample_code: m and s must be positive");
    if (z.empty()) throw std::invalid_argument("sample_code: seed must be nonempty");

    // Absorb (m, s, z) into one stream seed.
    std::uint64_t st = 0x243f6a8885a308d3ULL;
    st ^= splitmix64(st) ^ std::uint64_t(m);
    st ^= splitmix64(st) ^ (std::uint64_t(s) << 20);
    st ^= splitmix64(st) ^ std::uint64_t(z.size());
    for (std::uint64_t w : z.words()) st ^= splitmix64(st) ^ w;
    Rng rng(splitmix64(st));

    return PurityTestingCode{m, s, z, sample_random_clifford(m + s, rng)};
}

StateVector encode(const StateVector& payload, const PurityTestingCode& code, const BitVec& y) {
    if (payload.qubits() != code.m) throw std::invalid_argument("encode: payload size mismatch");
    if (int(y.size()) != code.s) throw std::invalid_argument("encode: syndrome size mismatch");
    StateVector anc = StateVector::basis_state(SubsystemLayout::single("anc", code.s), y);
    StateVector joint = payload.tensor(anc);
    code.circuit.apply(joint, 0);
    return joint;
}

DensityMatrix encode(const DensityMatrix& payload, const PurityTestingCode& code, const BitVec& y) {
    if (payload.qubits() != code.m) throw std::invalid_argument("encode: payload size mismatch");
    if (int(y.size()) != code.s) throw std::invalid_argument("encode: syndrome size mismatch");
    std::uint64_t yidx = 0;
    for (int i = 0; i < code.s; ++i) {
        if (y.get(std::size_t(i))) yidx |= std::uint64_t(1) << (code.s - 1 - i);
    }
    const std::uint64_t dp = std::uint64_t(1) << code.m;
    const std::uint64_t ds = std::uint64_t(1) << code.s;
    ComplexMatrix joint{int(dp * ds)};
    for (std::uint64_t r = 0; r < dp; ++r)
        for (std::uint64_t c = 0; c < dp; ++c)
            joint.at(int(r * ds + yidx), int(c * ds + yidx)) = payload.mat().at(int(r), int(c));
    DensityMatrix out(payload.layout().concat(SubsystemLayout::single("anc", code.s)),
                      std::move(joint));
    code.circuit.apply(out, 0);
    return out;
}

VerifyOutcome decode_and_verify_at(StateVector& joint, int channel_offset,
                                   const PurityTestingCode& code, const BitVec& y,
                                   Rng& measure_rng) {
    if (int(y.size()) != code.s) {
        throw std::invalid_argument("decode_and_verify: syndrome size mismatch");
    }
    if (channel_offset < 0 || channel_offset + code.n() > joint.qubits()) {
        throw std::invalid_argument("decode_and_verify: code block does not fit the register");
    }
    code.circuit.apply_inverse(joint, channel_offset);
    VerifyOutcome out;
    out.syndrome = BitVec(std::size_t(code.s));
    bool accept = true;
    for (int i = 0; i < code.s; ++i) {
        int bit = joint.measure_qubit(channel_offset + code.m + i, measure_rng);
        out.syndrome.set(std::size_t(i), bit != 0);
        if (bool(bit) != y.get(std::size_t(i))) accept = false;
    }
    out.accept = accept;
    return out;
}

VerifyResult decode_and_verify(const StateVector& received, const PurityTestingCode& code,
                               const BitVec& y, Rng& measure_rng) {
    if (received.qubits() != code.n()) {
        throw std::invalid_argument("decode_and_verify: received state size mismatch");
    }
    StateVector work = received;
    VerifyOutcome o = decode_and_verify_at(work, 0, code, y, measure_rng);

    // Ancillas are in a definite basis state now; peel them off.
    std::uint64_t yidx = 0;
    for (int i = 0; i < code.s; ++i) {
        if (o.syndrome.get(std::size_t(i))) yidx |= std::uint64_t(1) << (code.s - 1 - i);
    }
    const std::uint64_t dp = std::uint64_t(1) << code.m;
    const std::uint64_t ds = std::uint64_t(1) << code.s;
    std::vector<cx> amps(dp);
    for (std::uint64_t p = 0; p < dp; ++p) amps[p] = work.amplitudes()[p * ds + yidx];
    SubsystemLayout pl;
    for (int i = 0; i + 1 < work.layout().subsystem_count(); ++i) {
        pl.append(work.layout().name(i), work.layout().qubits(i));
    }
    if (pl.total_qubits() != code.m) pl = SubsystemLayout::single("payload", code.m);
    return VerifyResult{o.accept, o.syndrome, StateVector(std::move(pl), std::move(amps))};
}

DetectionEstimate detection_probability(int m, int s, const PauliString& attack, int trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("detection_probability: trials must be >= 1");
    if (attack.n() != m + s) {
        throw std::invalid_argument("detection_probability: attack must act on n = m+s qubits");
    }
    if (attack.is_identity_up_to_phase()) {
        throw std::invalid_argument(
            "detection_probability: identity attack commutes with everything");
    }
    Rng rng(seed);
    int detected = 0;
    for (int t = 0; t < trials; ++t) {
        PurityTestingCode code = sample_code(m, s, rng.bits(64));
        if (code.syndrome_flips(attack).any()) ++detected;
    }
    double p = double(detected) / trials;
    double ci = 1.959963984540054 * std::sqrt(std::max(p * (1.0 - p), 0.0) / trials);
    return DetectionEstimate{p, ci};
}

}  // namespace qotp

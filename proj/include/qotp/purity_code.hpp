#ifndef QOTP_PURITY_CODE_HPP
#define QOTP_PURITY_CODE_HPP

#include <cstdint>
#include <vector>

#include "qotp/clifford.hpp"

namespace qotp {

// Seed-keyed stabilizer detection code: an m-qubit payload is joined by s
// ancillas prepared in |y> and scrambled by a pseudorandom Clifford derived
// from the seed. Tampering flips syndrome bits exactly when the tampering
// operator anticommutes with the corresponding conjugated-Z stabilizer.
struct PurityTestingCode {
    int m = 0;
    int s = 0;
    BitVec z;                 // seed bits
    CliffordCircuit circuit;  // on n = m + s qubits

    int n() const { return m + s; }

    // The s code stabilizers, circuit-conjugates of Z on each ancilla.
    std::vector<PauliString> stabilizers() const;

    // Syndrome bits a Pauli attack would flip: bit i set iff the attack
    // anticommutes with stabilizer i. Pure mask arithmetic, no dense state.
    BitVec syndrome_flips(const PauliString& attack) const;

    // The attack as seen behind the decoder, circuit^dagger * attack * circuit.
    PauliString pulled_back(const PauliString& attack) const;
};

// Deterministic in (m, s, z): the same arguments always reproduce the same
// 4*n^2 gates drawn from {H, S, CNOT}.
PurityTestingCode sample_code(int m, int s, const BitVec& z);

// Appends ancillas in |y> after the payload and applies the code circuit.
StateVector encode(const StateVector& payload, const PurityTestingCode& code, const BitVec& y);
DensityMatrix encode(const DensityMatrix& payload, const PurityTestingCode& code, const BitVec& y);

struct VerifyResult {
    bool accept = false;
    BitVec syndrome;      // measured ancilla outcomes
    StateVector payload;  // post-measurement payload, returned even on reject
};

// Inverse circuit, projective ancilla measurement, syndrome comparison.
VerifyResult decode_and_verify(const StateVector& received, const PurityTestingCode& code,
                               const BitVec& y, Rng& measure_rng);

// In-place variant for channels embedded in a larger register: the code block
// starts at channel_offset; ancillas end up in a definite basis state.
struct VerifyOutcome {
    bool accept = false;
    BitVec syndrome;
};
VerifyOutcome decode_and_verify_at(StateVector& joint, int channel_offset,
                                   const PurityTestingCode& code, const BitVec& y,
                                   Rng& measure_rng);

struct DetectionEstimate {
    double estimate = 0.0;
    double ci95 = 0.0;  // half width
};

// Fraction of freshly seeded codes that detect the given attack, with a
// binomial 95% confidence half-width. The identity attack is rejected as
// meaningless input.
DetectionEstimate detection_probability(int m, int s, const PauliString& attack, int trials,
                                        std::uint64_t seed);

}  // namespace qotp

#endif

#ifndef QOTP_PROTOCOLS_HPP
#define QOTP_PROTOCOLS_HPP

#include <cstdint>
#include <vector>

#include "qotp/keyring.hpp"
#include "qotp/pauli.hpp"
#include "qotp/purity_code.hpp"
#include "qotp/records.hpp"

namespace qotp {

enum class Backend { dense, stabilizer };

Backend backend_from_name(const std::string& name);
const char* backend_name(Backend b);

struct SimulationParams {
    int m = 1;           // message qubits
    int s = 1;           // security parameter qubits
    Backend backend = Backend::dense;
    std::uint64_t seed = 0;
    int trials = 1;
    // When set, authenticated runs feed the key recycler and are charged the
    // one accept/reject back bit that recycling needs.
    bool recycle = true;
};

// Channel tampering models. All act on the n qubits in flight; probes may
// bring their own ancillas, which become Eve's register.
struct AttackModel {
    enum class Kind {
        none,
        fixed_pauli,
        random_pauli,
        steal_replace,
        measure_resend,
        entangling_probe,
    };
    enum class Basis { computational, hadamard };

    Kind kind = Kind::none;
    PauliString pauli{0};         // fixed_pauli
    double flip_prob = 0.0;       // random_pauli, per qubit
    std::vector<int> qubits;      // steal_replace / entangling_probe targets
    Basis basis = Basis::computational;  // measure_resend
    ComplexMatrix probe_unitary;  // acts on (targets..., ancillas...)
    int probe_ancillas = 0;

    static AttackModel make_none();
    static AttackModel make_fixed(PauliString p);
    static AttackModel make_random_pauli(double per_qubit_prob);
    static AttackModel make_steal(std::vector<int> channel_qubits);
    static AttackModel make_measure(Basis basis);
    // CNOT from one channel qubit into a fresh ancilla Eve keeps.
    static AttackModel make_cnot_probe(int channel_qubit);

    // Whether the symplectic backend can represent this attack.
    bool pauli_compatible() const {
        return kind == Kind::none || kind == Kind::fixed_pauli || kind == Kind::random_pauli;
    }
};

// Draws the concrete Pauli a none/fixed/random attack applies this run.
// Both backends call this with the same stream so their runs stay aligned.
PauliString sample_attack_pauli(const AttackModel& attack, int n, Rng& rng);

// Applies the attack to the channel block of a dense register. Returns the
// number of Eve qubits appended (label "E").
int apply_attack_dense(StateVector& sv, int channel_offset, int n_channel,
                       const AttackModel& attack, Rng& rng);

// One-way authenticated transmission: pad with x, scramble with the z-seeded
// code carrying syndrome y, verify, decrypt.
RunRecord run_sqas(const SimulationParams& params, const StateVector& input, const KeyString& key,
                   const AttackModel& attack);

// Symplectic variant for computational-basis inputs; handles hundreds of
// qubits since no amplitudes are tracked.
RunRecord run_sqas_stabilizer(const SimulationParams& params, const BitVec& input_bits,
                              const KeyString& key, const AttackModel& attack);

// Coherent-pad variant: the pad register is held in superposition and
// measured only on accept, which makes Eve's correlation with the pad a
// measurable quantity. Dense only; m <= 2 and s <= 2.
RunRecord run_modified_qas(const SimulationParams& params, const StateVector& input,
                           const BitVec& authkey_yz, const AttackModel& attack);

struct MqasExact {
    double p_accept = 0.0;
    double eve_product_distance_given_accept = 0.0;
    double ab_ref_overlap_given_accept = 0.0;
};

// Exact branch analysis of the coherent-pad run: projects onto the accept
// branch instead of sampling the syndrome measurement.
MqasExact run_modified_qas_exact(const SimulationParams& params, const StateVector& input,
                                 const BitVec& authkey_yz, const AttackModel& attack);

// Fully public-coin variant: x, y, z are drawn fresh and told to the
// receiver over the classical channel, so no pre-shared key is consumed.
RunRecord run_interactive(const SimulationParams& params, const StateVector& input,
                          const AttackModel& attack);

// EPR-based baseline: distribute pairs, spot-check s of them with random
// stabilizers, teleport over the rest. Consumes no key at all.
RunRecord run_teleport_baseline(const SimulationParams& params, const StateVector& input,
                                const AttackModel& attack_on_epr);

struct SecretSharingOutcome {
    RunRecord record;
    BitVec bob_holds;            // J xor X; empty when the run aborts
    DensityMatrix claire_holds;  // pad-encrypted payload held by Claire
};

// Split trust: Claire gets the J-encrypted state under authentication key S;
// Bob gets J one-time-padded with X. Neither side alone learns the payload.
SecretSharingOutcome run_secret_sharing(const SimulationParams& params, const StateVector& input,
                                        const BitVec& key_ab_x, const BitVec& key_ac_s,
                                        const AttackModel& attack);

// Local protection drill: pad m singlet halves with a fresh m-bit flip key,
// then undo it; the run record carries the key accounting.
RunRecord run_protect_entanglement(const SimulationParams& params);

// Measurement of a Hermitian Pauli observable on the listed register
// positions. Returns +1 or -1 and collapses the state.
int measure_pauli(StateVector& sv, const PauliString& p, const std::vector<int>& positions,
                  Rng& rng);

}  // namespace qotp

#endif

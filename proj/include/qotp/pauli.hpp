#ifndef QOTP_PAULI_HPP
#define QOTP_PAULI_HPP

#include <string>

#include "qotp/bits.hpp"
#include "qotp/rng.hpp"
#include "qotp/states.hpp"

namespace qotp {

// n-qubit Pauli operator stored as i^k * prod_q X_q^{x_q} Z_q^{z_q}.
// With that ordering Y = i*X*Z, and the one-time pad's "Z then X" per-qubit
// composition lands on phase +1.
class PauliString {
  public:
    explicit PauliString(int n);  // identity
    PauliString(int n, BitVec xs, BitVec zs, int phase_k = 0);

    // letter in {I, X, Y, Z} acting on one qubit of an n-qubit register.
    static PauliString single(int n, int qubit, char letter);

    int n() const { return n_; }
    const BitVec& xs() const { return xs_; }
    const BitVec& zs() const { return zs_; }
    int phase_k() const { return phase_k_; }

    bool x(int q) const { return xs_.get(std::size_t(q)); }
    bool z(int q) const { return zs_.get(std::size_t(q)); }
    void set_x(int q, bool v) { xs_.set(std::size_t(q), v); }
    void set_z(int q, bool v) { zs_.set(std::size_t(q), v); }
    void add_phase(int k) { phase_k_ = (phase_k_ + k) & 3; }

    bool is_identity_up_to_phase() const { return !xs_.any() && !zs_.any(); }
    std::size_t weight() const;

    PauliString operator*(const PauliString& o) const;
    PauliString adjoint() const;
    bool commutes_with(const PauliString& o) const;

    // Restriction to qubits [begin, begin+len); phase is kept.
    PauliString restrict(int begin, int len) const;

    ComplexMatrix dense() const;  // guarded to small n
    std::string to_string() const;

  private:
    int n_;
    BitVec xs_, zs_;
    int phase_k_;
};

// P applied at a qubit offset of a larger register: |psi> -> P|psi>.
void apply_pauli(StateVector& psi, const PauliString& p, int offset = 0);
// P applied to the listed register positions (qubit q of p acts on
// positions[q]).
void apply_pauli_at(StateVector& psi, const PauliString& p, const std::vector<int>& positions);
// rho -> P rho P^dagger.
void apply_pauli(DensityMatrix& rho, const PauliString& p, int offset = 0);

// Classical key with the standard segmentation: x holds 2m pad bits,
// y the s-bit syndrome, z the s-bit code selector.
class KeyString {
  public:
    KeyString(int m, int s, BitVec bits);
    static KeyString random(int m, int s, Rng& rng);

    int m() const { return m_; }
    int s() const { return s_; }
    std::size_t size() const { return bits_.size(); }
    const BitVec& bits() const { return bits_; }

    BitVec x_bits() const { return bits_.slice(0, 2 * std::size_t(m_)); }
    BitVec y_bits() const { return bits_.slice(2 * std::size_t(m_), s_); }
    BitVec z_bits() const { return bits_.slice(2 * std::size_t(m_) + s_, s_); }

    std::string to_hex() const { return bits_.to_hex(); }

  private:
    int m_, s_;
    BitVec bits_;
};

// Pad bits -> Pauli: qubit i gets Z^(b_{2i}) then X^(b_{2i+1}).
PauliString pauli_from_key(const BitVec& xseg);

StateVector qotp_encrypt(const StateVector& state, const BitVec& xseg);
StateVector qotp_decrypt(const StateVector& state, const BitVec& xseg);
DensityMatrix qotp_encrypt(const DensityMatrix& state, const BitVec& xseg);
DensityMatrix qotp_decrypt(const DensityMatrix& state, const BitVec& xseg);

// X on each qubit of subsystem "A" where the key bit is set; the cheaper
// 1-bit-per-qubit pad that suffices for hiding entanglement.
DensityMatrix bitflip_protect(const DensityMatrix& joint, const BitVec& key);

// The four Bell states, on a 2-qubit layout {A, C}.
StateVector bell_phi_plus();   // (|00> + |11>)/sqrt(2)
StateVector bell_phi_minus();  // (|00> - |11>)/sqrt(2)
StateVector bell_psi_plus();   // (|01> + |10>)/sqrt(2)
StateVector bell_psi_minus();  // (|01> - |10>)/sqrt(2), the singlet

}  // namespace qotp

#endif

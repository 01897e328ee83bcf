#ifndef QOTP_CLIFFORD_HPP
#define QOTP_CLIFFORD_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qotp/pauli.hpp"
#include "qotp/states.hpp"

namespace qotp {

struct CliffordGate {
    enum class Kind { H, S, CX };
    Kind kind;
    int a;      // qubit (H, S) or control (CX)
    int b = 0;  // target (CX)
};

// Gate list over {H, S, CNOT}, applied in list order. Inversion is exact
// gate-wise reversal with S replaced by its adjoint.
class CliffordCircuit {
  public:
    explicit CliffordCircuit(int n);

    void h(int q);
    void s(int q);
    void cx(int c, int t);

    int n() const { return n_; }
    const std::vector<CliffordGate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool operator==(const CliffordCircuit& o) const { return n_ == o.n_ && same_gates(o); }

    void apply(StateVector& psi, int offset = 0) const;
    void apply_inverse(StateVector& psi, int offset = 0) const;
    void apply(DensityMatrix& rho, int offset = 0) const;
    void apply_inverse(DensityMatrix& rho, int offset = 0) const;

    // Heisenberg picture: C P C^dagger and C^dagger P C, exact phases.
    PauliString conjugate(const PauliString& p) const;
    PauliString conjugate_inverse(const PauliString& p) const;

    ComplexMatrix unitary() const;  // dense form, small n only

    // One gate per line: "H q" / "S q" / "CX c t" under a "CLIFF n=<n>" header.
    std::string to_text() const;
    static CliffordCircuit from_text(std::string_view text);

  private:
    bool same_gates(const CliffordCircuit& o) const;
    void check_qubit(int q) const;

    int n_;
    std::vector<CliffordGate> gates_;
};

// 4*n^2 gates drawn uniformly from {H, S, CNOT}; long enough to scramble
// like a generic Clifford at the sizes used here.
CliffordCircuit sample_random_clifford(int n, Rng& rng);

}  // namespace qotp

#endif

#ifndef QOTP_STATES_HPP
#define QOTP_STATES_HPP

#include <cstdint>
#include <vector>

#include "qotp/bits.hpp"
#include "qotp/layout.hpp"
#include "qotp/matrix.hpp"
#include "qotp/rng.hpp"

namespace qotp {

// Hard size caps. Exceeding either is an error, not a slow path.
constexpr int kMaxStateQubits = 22;
constexpr int kMaxDensityQubits = 11;

class DensityMatrix;

// Pure state on a labeled qubit register. Amplitudes are indexed big-endian:
// qubit 0 is the most significant bit of the index.
class StateVector {
  public:
    StateVector(SubsystemLayout layout, std::vector<cx> amplitudes);

    static StateVector basis_state(SubsystemLayout layout, std::uint64_t index);
    static StateVector basis_state(SubsystemLayout layout, const BitVec& bits);
    // Gaussian amplitudes, normalized; a reasonable stand-in for Haar.
    static StateVector random(SubsystemLayout layout, Rng& rng);

    const SubsystemLayout& layout() const { return layout_; }
    int qubits() const { return layout_.total_qubits(); }
    std::size_t dim() const { return amp_.size(); }
    const std::vector<cx>& amplitudes() const { return amp_; }
    std::vector<cx>& amplitudes() { return amp_; }

    double norm() const;
    cx inner(const StateVector& o) const;  // <this|o>

    // Elementary gates; qubit indices are register positions.
    void apply_h(int q);
    void apply_s(int q);
    void apply_sdg(int q);
    void apply_x(int q);
    void apply_y(int q);
    void apply_z(int q);
    void apply_cx(int c, int t);
    void apply_cz(int c, int t);
    void apply_swap(int a, int b);

    // Arbitrary unitary on an ordered list of qubits (first listed qubit is
    // the most significant bit of the gate's index space).
    void apply_unitary(const ComplexMatrix& u, const std::vector<int>& qubits);

    // Projective measurement of one qubit in the computational basis.
    // Collapses and renormalizes; returns the outcome bit.
    int measure_qubit(int q, Rng& rng);

    // Projects onto the given bit pattern of the listed qubits and
    // renormalizes. Returns the branch probability (0 leaves the state
    // untouched).
    double project_onto(const std::vector<int>& qubits, const BitVec& pattern);

    StateVector tensor(const StateVector& o) const;

    // Same amplitudes under different labels; qubit counts must match.
    StateVector relabeled(SubsystemLayout new_layout) const;

    DensityMatrix to_density() const;
    DensityMatrix reduced_density(const std::vector<std::string>& keep_labels) const;
    // Keeps the listed register positions, in the listed order.
    DensityMatrix reduced_density_positions(const std::vector<int>& kept,
                                            SubsystemLayout out_layout) const;

    std::uint64_t qubit_mask(int q) const;

  private:
    SubsystemLayout layout_;
    std::vector<cx> amp_;
};

// Mixed state over a labeled register. Constructor enforces unit trace and
// Hermiticity; positivity is checked by validate() (it needs a full
// eigendecomposition, so it is not on the hot path).
class DensityMatrix {
  public:
    DensityMatrix(SubsystemLayout layout, ComplexMatrix mat);

    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(SubsystemLayout layout);

    const SubsystemLayout& layout() const { return layout_; }
    int qubits() const { return layout_.total_qubits(); }
    int dim() const { return mat_.dim(); }
    const ComplexMatrix& mat() const { return mat_; }
    ComplexMatrix& mat() { return mat_; }

    double min_eigenvalue() const;
    // Full invariant check: trace, Hermiticity, smallest eigenvalue >= -1e-9.
    void validate() const;

  private:
    SubsystemLayout layout_;
    ComplexMatrix mat_;
};

// Reduced state on the kept subsystems; trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

// Transpose on the designated subsystems' indices. The result is Hermitian
// but possibly not positive, so it comes back as a plain matrix.
ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                const std::vector<std::string>& transpose_part);

// Half the trace norm of (a - b); lies in [0, 1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Von Neumann entropy in bits.
double vn_entropy(const DensityMatrix& rho);

// <psi| rho |psi>.
double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);

}  // namespace qotp

#endif

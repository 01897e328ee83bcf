#include "qotp/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qotp {

namespace {

const cx kPhases[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};

}  // namespace

PauliString::PauliString(int n) : n_(n), xs_(std::size_t(n)), zs_(std::size_t(n)), phase_k_(0) {
    if (n < 0) throw std::invalid_argument("PauliString: negative qubit count");
}

PauliString::PauliString(int n, BitVec xs, BitVec zs, int phase_k)
    : n_(n), xs_(std::move(xs)), zs_(std::move(zs)), phase_k_(phase_k & 3) {
    if (int(xs_.size()) != n || int(zs_.size()) != n) {
        throw std::invalid_argument("PauliString: mask lengths must equal qubit count");
    }
}

PauliString PauliString::single(int n, int qubit, char letter) {
    PauliString p(n);
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("PauliString::single: bad qubit");
    switch (letter) {
        case 'I': break;
        case 'X': p.set_x(qubit, true); break;
        case 'Z': p.set_z(qubit, true); break;
        case 'Y':
            p.set_x(qubit, true);
            p.set_z(qubit, true);
            p.add_phase(1);
            break;
        default: throw std::invalid_argument("PauliString::single: letter must be I/X/Y/Z");
    }
    return p;
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (int q = 0; q < n_; ++q) {
        if (x(q) || z(q)) ++w;
    }
    return w;
}

PauliString PauliString::operator*(const PauliString& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PauliString::operator*: size mismatch");
    // Moving this Z part across the other's X part costs (-1)^{z1.x2}.
    int k = phase_k_ + o.phase_k_ + (zs_.parity_and(o.xs_) ? 2 : 0);
    return PauliString(n_, xs_ ^ o.xs_, zs_ ^ o.zs_, k);
}

PauliString PauliString::adjoint() const {
    // (X^x Z^z)^dagger = Z^z X^x = (-1)^{x.z} X^x Z^z.
    int k = -phase_k_ + (xs_.parity_and(zs_) ? 2 : 0);
    return PauliString(n_, xs_, zs_, k & 3);
}

bool PauliString::commutes_with(const PauliString& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PauliString::commutes_with: size mismatch");
    return xs_.parity_and(o.zs_) == zs_.parity_and(o.xs_);
}

PauliString PauliString::restrict(int begin, int len) const {
    return PauliString(len, xs_.slice(std::size_t(begin), std::size_t(len)),
                       zs_.slice(std::size_t(begin), std::size_t(len)), phase_k_);
}

ComplexMatrix PauliString::dense() const {
    if (n_ > kMaxDensityQubits) {
        throw std::invalid_argument("PauliString::dense: too many qubits for a dense matrix");
    }
    ComplexMatrix m = ComplexMatrix(1);
    m.at(0, 0) = kPhases[phase_k_];
    for (int q = 0; q < n_; ++q) {
        ComplexMatrix f = ComplexMatrix::identity(2);
        if (x(q) && z(q)) {
            f = matmul(pauli_x_matrix(), pauli_z_matrix());
        } else if (x(q)) {
            f = pauli_x_matrix();
        } else if (z(q)) {
            f = pauli_z_matrix();
        }
        m = kron(m, f);
    }
    return m;
}

std::string PauliString::to_string() const {
    static const char* ph[4] = {"+", "+i", "-", "-i"};
    // Fold the stored X*Z products into Y letters for display.
    int shown_k = phase_k_;
    std::string letters;
    for (int q = 0; q < n_; ++q) {
        if (x(q) && z(q)) {
            letters += 'Y';
            shown_k = (shown_k + 3) & 3;  // Y = i XZ, so XZ = -i Y
        } else if (x(q)) {
            letters += 'X';
        } else if (z(q)) {
            letters += 'Z';
        } else {
            letters += 'I';
        }
    }
    return ph[shown_k] + letters;
}

namespace {

void apply_pauli_masks(StateVector& psi, const PauliString& p, std::uint64_t xmask,
                       std::uint64_t zmask) {
    const cx ph = kPhases[p.phase_k()];
    auto& amp = psi.amplitudes();
    std::vector<cx> out(amp.size());
    for (std::uint64_t i = 0; i < amp.size(); ++i) {
        cx v = ph * amp[i];
        if (std::popcount(i & zmask) & 1) v = -v;
        out[i ^ xmask] = v;
    }
    amp = std::move(out);
}

}  // namespace

void apply_pauli(StateVector& psi, const PauliString& p, int offset) {
    const int nq = psi.qubits();
    if (offset < 0 || offset + p.n() > nq) {
        throw std::invalid_argument("apply_pauli: operator does not fit the register");
    }
    std::uint64_t xmask = 0, zmask = 0;
    for (int q = 0; q < p.n(); ++q) {
        std::uint64_t m = psi.qubit_mask(offset + q);
        if (p.x(q)) xmask |= m;
        if (p.z(q)) zmask |= m;
    }
    apply_pauli_masks(psi, p, xmask, zmask);
}

void apply_pauli_at(StateVector& psi, const PauliString& p, const std::vector<int>& positions) {
    if (int(positions.size()) != p.n()) {
        throw std::invalid_argument("apply_pauli_at: position count mismatch");
    }
    std::uint64_t xmask = 0, zmask = 0;
    for (int q = 0; q < p.n(); ++q) {
        std::uint64_t m = psi.qubit_mask(positions[std::size_t(q)]);
        if (p.x(q)) xmask |= m;
        if (p.z(q)) zmask |= m;
    }
    apply_pauli_masks(psi, p, xmask, zmask);
}

void apply_pauli(DensityMatrix& rho, const PauliString& p, int offset) {
    const int nq = rho.qubits();
    if (offset < 0 || offset + p.n() > nq) {
        throw std::invalid_argument("apply_pauli: operator does not fit the register");
    }
    std::uint64_t xmask = 0, zmask = 0;
    const std::uint64_t top = std::uint64_t(1) << (nq - 1);
    for (int q = 0; q < p.n(); ++q) {
        std::uint64_t m = top >> (offset + q);
        if (p.x(q)) xmask |= m;
        if (p.z(q)) zmask |= m;
    }
    // P|i> = i^k (-1)^{i.z} |i ^ x>; conjugation picks up f(r) conj(f(c)).
    const std::uint64_t d = std::uint64_t(1) << nq;
    ComplexMatrix out{int(d)};
    const cx ph = kPhases[p.phase_k()];
    for (std::uint64_t r = 0; r < d; ++r) {
        cx fr = ph;
        if (std::popcount(r & zmask) & 1) fr = -fr;
        for (std::uint64_t c = 0; c < d; ++c) {
            cx fc = ph;
            if (std::popcount(c & zmask) & 1) fc = -fc;
            out.at(int(r ^ xmask), int(c ^ xmask)) = fr * std::conj(fc) * rho.mat().at(int(r), int(c));
        }
    }
    rho.mat() = std::move(out);
}

KeyString::KeyString(int m, int s, BitVec bits) : m_(m), s_(s), bits_(std::move(bits)) {
    if (m < 1 || s < 1) throw std::invalid_argument("KeyString: m and s must be positive");
    if (bits_.size() != std::size_t(2 * m + 2 * s)) {
        throw std::invalid_argument("KeyString: bit count must be 2m+2s");
    }
}

KeyString KeyString::random(int m, int s, Rng& rng) {
    return KeyString(m, s, rng.bits(std::size_t(2 * m + 2 * s)));
}

PauliString pauli_from_key(const BitVec& xseg) {
    if (xseg.size() % 2 != 0) {
        throw std::invalid_argument("pauli_from_key: pad segment must have even length");
    }
    const int m = int(xseg.size() / 2);
    PauliString p(m);
    for (int q = 0; q < m; ++q) {
        p.set_z(q, xseg.get(2 * std::size_t(q)));
        p.set_x(q, xseg.get(2 * std::size_t(q) + 1));
    }
    return p;
}

StateVector qotp_encrypt(const StateVector& state, const BitVec& xseg) {
    if (std::size_t(state.qubits()) * 2 != xseg.size()) {
        throw std::invalid_argument("qotp_encrypt: pad must hold two bits per qubit");
    }
    StateVector out = state;
    apply_pauli(out, pauli_from_key(xseg), 0);
    return out;
}

StateVector qotp_decrypt(const StateVector& state, const BitVec& xseg) {
    if (std::size_t(state.qubits()) * 2 != xseg.size()) {
        throw std::invalid_argument("qotp_decrypt: pad must hold two bits per qubit");
    }
    StateVector out = state;
    apply_pauli(out, pauli_from_key(xseg).adjoint(), 0);
    return out;
}

DensityMatrix qotp_encrypt(const DensityMatrix& state, const BitVec& xseg) {
    if (std::size_t(state.qubits()) * 2 != xseg.size()) {
        throw std::invalid_argument("qotp_encrypt: pad must hold two bits per qubit");
    }
    DensityMatrix out = state;
    apply_pauli(out, pauli_from_key(xseg), 0);
    return out;
}

DensityMatrix qotp_decrypt(const DensityMatrix& state, const BitVec& xseg) {
    if (std::size_t(state.qubits()) * 2 != xseg.size()) {
        throw std::invalid_argument("qotp_decrypt: pad must hold two bits per qubit");
    }
    DensityMatrix out = state;
    apply_pauli(out, pauli_from_key(xseg).adjoint(), 0);
    return out;
}

DensityMatrix bitflip_protect(const DensityMatrix& joint, const BitVec& key) {
    const SubsystemLayout& l = joint.layout();
    if (!l.has("A")) throw std::invalid_argument("bitflip_protect: layout needs subsystem 'A'");
    if (int(key.size()) != l.size_of("A")) {
        throw std::invalid_argument("bitflip_protect: key length must match subsystem 'A'");
    }
    DensityMatrix out = joint;
    PauliString flips(int(key.size()));
    for (std::size_t q = 0; q < key.size(); ++q) flips.set_x(int(q), key.get(q));
    apply_pauli(out, flips, l.offset_of("A"));
    return out;
}

namespace {

StateVector bell_state(cx a00, cx a01, cx a10, cx a11) {
    return StateVector(SubsystemLayout{{"A", 1}, {"C", 1}}, {a00, a01, a10, a11});
}

}  // namespace

StateVector bell_phi_plus() {
    double r = 1.0 / std::sqrt(2.0);
    return bell_state(r, 0, 0, r);
}

StateVector bell_phi_minus() {
    double r = 1.0 / std::sqrt(2.0);
    return bell_state(r, 0, 0, -r);
}

StateVector bell_psi_plus() {
    double r = 1.0 / std::sqrt(2.0);
    return bell_state(0, r, r, 0);
}

StateVector bell_psi_minus() {
    double r = 1.0 / std::sqrt(2.0);
    return bell_state(0, r, -r, 0);
}

}  // namespace qotp

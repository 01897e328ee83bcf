#include "qotp/clifford.hpp"

#include <sstream>
#include <stdexcept>

namespace qotp {

CliffordCircuit::CliffordCircuit(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("CliffordCircuit: need at least one qubit");
}

void CliffordCircuit::check_qubit(int q) const {
    if (q < 0 || q >= n_) throw std::invalid_argument("CliffordCircuit: qubit index out of range");
}

void CliffordCircuit::h(int q) {
    check_qubit(q);
    gates_.push_back({CliffordGate::Kind::H, q});
}

void CliffordCircuit::s(int q) {
    check_qubit(q);
    gates_.push_back({CliffordGate::Kind::S, q});
}

void CliffordCircuit::cx(int c, int t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw std::invalid_argument("CliffordCircuit: CX control equals target");
    gates_.push_back({CliffordGate::Kind::CX, c, t});
}

bool CliffordCircuit::same_gates(const CliffordCircuit& o) const {
    if (gates_.size() != o.gates_.size()) return false;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const auto& a = gates_[i];
        const auto& b = o.gates_[i];
        if (a.kind != b.kind || a.a != b.a || a.b != b.b) return false;
    }
    return true;
}

void CliffordCircuit::apply(StateVector& psi, int offset) const {
    for (const auto& g : gates_) {
        switch (g.kind) {
            case CliffordGate::Kind::H: psi.apply_h(offset + g.a); break;
            case CliffordGate::Kind::S: psi.apply_s(offset + g.a); break;
            case CliffordGate::Kind::CX: psi.apply_cx(offset + g.a, offset + g.b); break;
        }
    }
}

void CliffordCircuit::apply_inverse(StateVector& psi, int offset) const {
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        switch (it->kind) {
            case CliffordGate::Kind::H: psi.apply_h(offset + it->a); break;
            case CliffordGate::Kind::S: psi.apply_sdg(offset + it->a); break;
            case CliffordGate::Kind::CX: psi.apply_cx(offset + it->a, offset + it->b); break;
        }
    }
}

namespace {

// rho -> G rho G^dagger for one elementary gate, via row then column pass.
void conjugate_gate_density(DensityMatrix& rho, const CliffordGate& g, int offset, bool dagger) {
    const int nq = rho.qubits();
    const std::uint64_t d = std::uint64_t(1) << nq;
    const std::uint64_t ma = std::uint64_t(1) << (nq - 1 - (offset + g.a));
    ComplexMatrix& m = rho.mat();
    switch (g.kind) {
        case CliffordGate::Kind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < d; ++i) {
                if (i & ma) continue;
                for (std::uint64_t c = 0; c < d; ++c) {
                    cx v0 = m.at(int(i), int(c)), v1 = m.at(int(i | ma), int(c));
                    m.at(int(i), int(c)) = r * (v0 + v1);
                    m.at(int(i | ma), int(c)) = r * (v0 - v1);
                }
            }
            for (std::uint64_t i = 0; i < d; ++i) {
                if (i & ma) continue;
                for (std::uint64_t r0 = 0; r0 < d; ++r0) {
                    cx v0 = m.at(int(r0), int(i)), v1 = m.at(int(r0), int(i | ma));
                    m.at(int(r0), int(i)) = r * (v0 + v1);
                    m.at(int(r0), int(i | ma)) = r * (v0 - v1);
                }
            }
            break;
        }
        case CliffordGate::Kind::S: {
            const cx ph = dagger ? cx(0, -1) : cx(0, 1);
            for (std::uint64_t r0 = 0; r0 < d; ++r0)
                for (std::uint64_t c = 0; c < d; ++c) {
                    cx v = m.at(int(r0), int(c));
                    if (r0 & ma) v *= ph;
                    if (c & ma) v *= std::conj(ph);
                    m.at(int(r0), int(c)) = v;
                }
            break;
        }
        case CliffordGate::Kind::CX: {
            const std::uint64_t mb = std::uint64_t(1) << (nq - 1 - (offset + g.b));
            for (std::uint64_t r0 = 0; r0 < d; ++r0) {
                if ((r0 & ma) && !(r0 & mb)) {
                    for (std::uint64_t c = 0; c < d; ++c) {
                        std::swap(m.at(int(r0), int(c)), m.at(int(r0 | mb), int(c)));
                    }
                }
            }
            for (std::uint64_t c = 0; c < d; ++c) {
                if ((c & ma) && !(c & mb)) {
                    for (std::uint64_t r0 = 0; r0 < d; ++r0) {
                        std::swap(m.at(int(r0), int(c)), m.at(int(r0), int(c | mb)));
                    }
                }
            }
            break;
        }
    }
}

}  // namespace

void CliffordCircuit::apply(DensityMatrix& rho, int offset) const {
    for (const auto& g : gates_) conjugate_gate_density(rho, g, offset, false);
}

void CliffordCircuit::apply_inverse(DensityMatrix& rho, int offset) const {
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        conjugate_gate_density(rho, *it, offset, true);
    }
}

namespace {

// Tableau-style update of P -> G P G^dagger in the i^k X^x Z^z convention:
//   H: swap x,z; sign flips on the XZ product.
//   S: z ^= x, picks up i per X site (S^dagger picks up -i).
//   CX: x_t ^= x_c, z_c ^= z_t, no phase.
void conjugate_gate_pauli(PauliString& p, const CliffordGate& g, bool dagger) {
    switch (g.kind) {
        case CliffordGate::Kind::H: {
            bool xv = p.x(g.a), zv = p.z(g.a);
            if (xv && zv) p.add_phase(2);
            p.set_x(g.a, zv);
            p.set_z(g.a, xv);
            break;
        }
        case CliffordGate::Kind::S: {
            if (p.x(g.a)) {
                p.add_phase(dagger ? 3 : 1);
                p.set_z(g.a, !p.z(g.a));
            }
            break;
        }
        case CliffordGate::Kind::CX: {
            if (p.x(g.a)) p.set_x(g.b, !p.x(g.b));
            if (p.z(g.b)) p.set_z(g.a, !p.z(g.a));
            break;
        }
    }
}

}  // namespace

PauliString CliffordCircuit::conjugate(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("conjugate: operator size mismatch");
    PauliString out = p;
    for (const auto& g : gates_) conjugate_gate_pauli(out, g, false);
    return out;
}

PauliString CliffordCircuit::conjugate_inverse(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("conjugate_inverse: operator size mismatch");
    PauliString out = p;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        conjugate_gate_pauli(out, *it, true);
    }
    return out;
}

ComplexMatrix CliffordCircuit::unitary() const {
    if (n_ > kMaxDensityQubits) {
        throw std::invalid_argument("CliffordCircuit::unitary: too many qubits for dense form");
    }
    const std::uint64_t d = std::uint64_t(1) << n_;
    ComplexMatrix u{int(d)};
    SubsystemLayout l = SubsystemLayout::single("q", n_);
    for (std::uint64_t c = 0; c < d; ++c) {
        StateVector col = StateVector::basis_state(l, c);
        apply(col);
        for (std::uint64_t r = 0; r < d; ++r) u.at(int(r), int(c)) = col.amplitudes()[r];
    }
    return u;
}

std::string CliffordCircuit::to_text() const {
    std::ostringstream os;
    os << "CLIFF n=" << n_ << "\n";
    for (const auto& g : gates_) {
        switch (g.kind) {
            case CliffordGate::Kind::H: os << "H " << g.a << "\n"; break;
            case CliffordGate::Kind::S: os << "S " << g.a << "\n"; break;
            case CliffordGate::Kind::CX: os << "CX " << g.a << " " << g.b << "\n"; break;
        }
    }
    return os.str();
}

CliffordCircuit sample_random_clifford(int n, Rng& rng) {
    CliffordCircuit circuit(n);
    const int gate_count = 4 * n * n;
    for (int g = 0; g < gate_count; ++g) {
        int kind = n == 1 ? int(rng.below(2)) : int(rng.below(3));
        switch (kind) {
            case 0: circuit.h(int(rng.below(std::uint64_t(n)))); break;
            case 1: circuit.s(int(rng.below(std::uint64_t(n)))); break;
            default: {
                int c = int(rng.below(std::uint64_t(n)));
                int t = int(rng.below(std::uint64_t(n - 1)));
                if (t >= c) ++t;
                circuit.cx(c, t);
            }
        }
    }
    return circuit;
}

CliffordCircuit CliffordCircuit::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string header;
    if (!std::getline(is, header) || header.rfind("CLIFF n=", 0) != 0) {
        throw std::invalid_argument("CliffordCircuit::from_text: missing CLIFF header");
    }
    int n = std::stoi(header.substr(8));
    CliffordCircuit c(n);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        if (op == "H") {
            int q;
            if (!(ls >> q)) throw std::invalid_argument("from_text: malformed H line");
            c.h(q);
        } else if (op == "S") {
            int q;
            if (!(ls >> q)) throw std::invalid_argument("from_text: malformed S line");
            c.s(q);
        } else if (op == "CX") {
            int a, b;
            if (!(ls >> a >> b)) throw std::invalid_argument("from_text: malformed CX line");
            c.cx(a, b);
        } else {
            throw std::invalid_argument("from_text: unknown gate '" + op + "'");
        }
    }
    return c;
}

}  // namespace qotp

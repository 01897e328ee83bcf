#include "qotp/states.hpp"

#include <cmath>
#include <stdexcept>

#include "qotp/eigen.hpp"

namespace qotp {

namespace {

constexpr double kNormTol = 1e-9;

std::uint64_t mask_for(int q, int nq) {
    return std::uint64_t(1) << (nq - 1 - q);
}

}  // namespace

StateVector::StateVector(SubsystemLayout layout, std::vector<cx> amplitudes)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
    int nq = layout_.total_qubits();
    if (nq > kMaxStateQubits) {
        throw std::invalid_argument("StateVector: register exceeds the 22-qubit cap");
    }
    if (amp_.size() != (std::size_t(1) << nq)) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^qubits");
    }
    double n = norm();
    if (std::abs(n - 1.0) > kNormTol) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    for (cx& a : amp_) a /= n;
}

StateVector StateVector::basis_state(SubsystemLayout layout, std::uint64_t index) {
    int nq = layout.total_qubits();
    if (nq > kMaxStateQubits) {
        throw std::invalid_argument("StateVector: register exceeds the 22-qubit cap");
    }
    std::vector<cx> amps(std::size_t(1) << nq, 0.0);
    if (index >= amps.size()) throw std::invalid_argument("basis_state: index out of range");
    amps[index] = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::basis_state(SubsystemLayout layout, const BitVec& bits) {
    int nq = layout.total_qubits();
    if (int(bits.size()) != nq) {
        throw std::invalid_argument("basis_state: bit count must match qubit count");
    }
    std::uint64_t index = 0;
    for (int q = 0; q < nq; ++q) {
        if (bits.get(q)) index |= mask_for(q, nq);
    }
    return basis_state(std::move(layout), index);
}

StateVector StateVector::random(SubsystemLayout layout, Rng& rng) {
    int nq = layout.total_qubits();
    if (nq > kMaxStateQubits) {
        throw std::invalid_argument("StateVector: register exceeds the 22-qubit cap");
    }
    std::vector<cx> amps(std::size_t(1) << nq);
    double n2 = 0.0;
    for (cx& a : amps) {
        a = cx(rng.gauss(), rng.gauss());
        n2 += std::norm(a);
    }
    double inv = 1.0 / std::sqrt(n2);
    for (cx& a : amps) a *= inv;
    return StateVector(std::move(layout), std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cx& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

cx StateVector::inner(const StateVector& o) const {
    if (amp_.size() != o.amp_.size()) throw std::invalid_argument("inner: dim mismatch");
    cx s = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * o.amp_[i];
    return s;
}

std::uint64_t StateVector::qubit_mask(int q) const {
    int nq = qubits();
    if (q < 0 || q >= nq) throw std::invalid_argument("qubit index out of range");
    return mask_for(q, nq);
}

void StateVector::apply_h(int q) {
    const std::uint64_t m = qubit_mask(q);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (i & m) continue;
        cx a0 = amp_[i], a1 = amp_[i | m];
        amp_[i] = r * (a0 + a1);
        amp_[i | m] = r * (a0 - a1);
    }
}

void StateVector::apply_s(int q) {
    const std::uint64_t m = qubit_mask(q);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (i & m) amp_[i] *= cx(0.0, 1.0);
    }
}

void StateVector::apply_sdg(int q) {
    const std::uint64_t m = qubit_mask(q);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (i & m) amp_[i] *= cx(0.0, -1.0);
    }
}

void StateVector::apply_x(int q) {
    const std::uint64_t m = qubit_mask(q);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (!(i & m)) std::swap(amp_[i], amp_[i | m]);
    }
}

void StateVector::apply_y(int q) {
    const std::uint64_t m = qubit_mask(q);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (!(i & m)) {
            cx a0 = amp_[i], a1 = amp_[i | m];
            amp_[i] = cx(0.0, -1.0) * a1;
            amp_[i | m] = cx(0.0, 1.0) * a0;
        }
    }
}

void StateVector::apply_z(int q) {
    const std::uint64_t m = qubit_mask(q);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (i & m) amp_[i] = -amp_[i];
    }
}

void StateVector::apply_cx(int c, int t) {
    if (c == t) throw std::invalid_argument("apply_cx: control equals target");
    const std::uint64_t mc = qubit_mask(c), mt = qubit_mask(t);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if ((i & mc) && !(i & mt)) std::swap(amp_[i], amp_[i | mt]);
    }
}

void StateVector::apply_cz(int c, int t) {
    if (c == t) throw std::invalid_argument("apply_cz: control equals target");
    const std::uint64_t mc = qubit_mask(c), mt = qubit_mask(t);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if ((i & mc) && (i & mt)) amp_[i] = -amp_[i];
    }
}

void StateVector::apply_swap(int a, int b) {
    if (a == b) return;
    const std::uint64_t ma = qubit_mask(a), mb = qubit_mask(b);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        bool ba = i & ma, bb = i & mb;
        if (ba && !bb) std::swap(amp_[i], amp_[(i & ~ma) | mb]);
    }
}

void StateVector::apply_unitary(const ComplexMatrix& u, const std::vector<int>& qs) {
    const int k = int(qs.size());
    if (u.dim() != (1 << k)) throw std::invalid_argument("apply_unitary: dim mismatch");
    std::vector<std::uint64_t> masks(k);
    std::uint64_t all = 0;
    for (int j = 0; j < k; ++j) {
        masks[j] = qubit_mask(qs[j]);
        if (all & masks[j]) throw std::invalid_argument("apply_unitary: repeated qubit");
        all |= masks[j];
    }
    const std::uint64_t sub = std::uint64_t(1) << k;
    std::vector<cx> in(sub), out(sub);
    for (std::uint64_t base = 0; base < amp_.size(); ++base) {
        if (base & all) continue;
        for (std::uint64_t g = 0; g < sub; ++g) {
            std::uint64_t idx = base;
            for (int j = 0; j < k; ++j) {
                if ((g >> (k - 1 - j)) & 1) idx |= masks[j];
            }
            in[g] = amp_[idx];
        }
        for (std::uint64_t r = 0; r < sub; ++r) {
            cx s = 0.0;
            for (std::uint64_t c = 0; c < sub; ++c) s += u.at(int(r), int(c)) * in[c];
            out[r] = s;
        }
        for (std::uint64_t g = 0; g < sub; ++g) {
            std::uint64_t idx = base;
            for (int j = 0; j < k; ++j) {
                if ((g >> (k - 1 - j)) & 1) idx |= masks[j];
            }
            amp_[idx] = out[g];
        }
    }
}

int StateVector::measure_qubit(int q, Rng& rng) {
    const std::uint64_t m = qubit_mask(q);
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if (i & m) p1 += std::norm(amp_[i]);
    }
    // Snap nearly deterministic outcomes so unitary round-off cannot flip them.
    if (p1 < 1e-12) p1 = 0.0;
    if (p1 > 1.0 - 1e-12) p1 = 1.0;
    const int outcome = rng.real() < p1 ? 1 : 0;
    const double p = outcome ? p1 : 1.0 - p1;
    const double inv = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        bool b = (i & m) != 0;
        if (b == (outcome != 0)) {
            amp_[i] *= inv;
        } else {
            amp_[i] = 0.0;
        }
    }
    return outcome;
}

double StateVector::project_onto(const std::vector<int>& qs, const BitVec& pattern) {
    if (qs.size() != pattern.size()) {
        throw std::invalid_argument("project_onto: qubit/pattern length mismatch");
    }
    std::uint64_t sel = 0, want = 0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        std::uint64_t m = qubit_mask(qs[j]);
        sel |= m;
        if (pattern.get(j)) want |= m;
    }
    double p = 0.0;
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if ((i & sel) == want) p += std::norm(amp_[i]);
    }
    if (p <= 0.0) return 0.0;
    const double inv = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if ((i & sel) == want) {
            amp_[i] *= inv;
        } else {
            amp_[i] = 0.0;
        }
    }
    return p;
}

StateVector StateVector::tensor(const StateVector& o) const {
    SubsystemLayout l = layout_.concat(o.layout_);
    std::vector<cx> amps(amp_.size() * o.amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i)
        for (std::size_t j = 0; j < o.amp_.size(); ++j)
            amps[i * o.amp_.size() + j] = amp_[i] * o.amp_[j];
    return StateVector(std::move(l), std::move(amps));
}

StateVector StateVector::relabeled(SubsystemLayout new_layout) const {
    if (new_layout.total_qubits() != qubits()) {
        throw std::invalid_argument("relabeled: qubit count mismatch");
    }
    return StateVector(std::move(new_layout), amp_);
}

DensityMatrix StateVector::to_density() const {
    int d = int(amp_.size());
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m.at(r, c) = amp_[r] * std::conj(amp_[c]);
    return DensityMatrix(layout_, std::move(m));
}

DensityMatrix StateVector::reduced_density(const std::vector<std::string>& keep_labels) const {
    return reduced_density_positions(layout_.qubit_positions(keep_labels),
                                     layout_.keep(keep_labels));
}

DensityMatrix StateVector::reduced_density_positions(const std::vector<int>& kept,
                                                     SubsystemLayout out_layout) const {
    const int nq = qubits();
    const int k = int(kept.size());
    if (out_layout.total_qubits() != k) {
        throw std::invalid_argument("reduced_density_positions: layout size mismatch");
    }
    std::vector<bool> is_kept(nq, false);
    for (int q : kept) {
        if (q < 0 || q >= nq || is_kept[q]) {
            throw std::invalid_argument("reduced_density_positions: bad qubit list");
        }
        is_kept[q] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < nq; ++q) {
        if (!is_kept[q]) traced.push_back(q);
    }
    const int t = int(traced.size());
    std::vector<std::uint64_t> kmask(k), tmask(t);
    for (int j = 0; j < k; ++j) kmask[j] = mask_for(kept[j], nq);
    for (int j = 0; j < t; ++j) tmask[j] = mask_for(traced[j], nq);

    auto compose = [&](std::uint64_t kb, std::uint64_t tb) {
        std::uint64_t idx = 0;
        for (int j = 0; j < k; ++j) {
            if ((kb >> (k - 1 - j)) & 1) idx |= kmask[j];
        }
        for (int j = 0; j < t; ++j) {
            if ((tb >> (t - 1 - j)) & 1) idx |= tmask[j];
        }
        return idx;
    };

    const std::uint64_t dk = std::uint64_t(1) << k;
    const std::uint64_t dt = std::uint64_t(1) << t;
    ComplexMatrix m{int(dk)};
    for (std::uint64_t r = 0; r < dk; ++r)
        for (std::uint64_t c = 0; c < dk; ++c) {
            cx s = 0.0;
            for (std::uint64_t tb = 0; tb < dt; ++tb) {
                s += amp_[compose(r, tb)] * std::conj(amp_[compose(c, tb)]);
            }
            m.at(int(r), int(c)) = s;
        }
    return DensityMatrix(std::move(out_layout), std::move(m));
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, ComplexMatrix mat)
    : layout_(std::move(layout)), mat_(std::move(mat)) {
    int nq = layout_.total_qubits();
    if (nq > kMaxDensityQubits) {
        throw std::invalid_argument("DensityMatrix: register exceeds the 11-qubit cap");
    }
    if (mat_.dim() != (1 << nq)) {
        throw std::invalid_argument("DensityMatrix: dim must be 2^qubits");
    }
    if (std::abs(mat_.trace() - cx(1.0)) > 1e-9) {
        throw std::invalid_argument("DensityMatrix: trace must be 1");
    }
    if (!mat_.is_hermitian(1e-9)) {
        throw std::invalid_argument("DensityMatrix: matrix must be Hermitian");
    }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    return psi.to_density();
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
    int d = 1 << layout.total_qubits();
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= cx(1.0 / d);
    return DensityMatrix(std::move(layout), std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    return eigh(mat_).eigenvalues.front();
}

void DensityMatrix::validate() const {
    if (min_eigenvalue() < -1e-9) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    const SubsystemLayout& full = rho.layout();
    const std::vector<int> kept = full.qubit_positions(keep);
    const int nq = full.total_qubits();
    const int k = int(kept.size());
    std::vector<bool> is_kept(nq, false);
    for (int q : kept) is_kept[q] = true;
    std::vector<int> traced;
    for (int q = 0; q < nq; ++q) {
        if (!is_kept[q]) traced.push_back(q);
    }
    const int t = int(traced.size());

    auto compose = [&](std::uint64_t kb, std::uint64_t tb) {
        std::uint64_t idx = 0;
        for (int j = 0; j < k; ++j) {
            if ((kb >> (k - 1 - j)) & 1) idx |= mask_for(kept[j], nq);
        }
        for (int j = 0; j < t; ++j) {
            if ((tb >> (t - 1 - j)) & 1) idx |= mask_for(traced[j], nq);
        }
        return idx;
    };

    const std::uint64_t dk = std::uint64_t(1) << k;
    const std::uint64_t dt = std::uint64_t(1) << t;
    ComplexMatrix m{int(dk)};
    for (std::uint64_t r = 0; r < dk; ++r)
        for (std::uint64_t c = 0; c < dk; ++c) {
            cx s = 0.0;
            for (std::uint64_t tb = 0; tb < dt; ++tb) {
                s += rho.mat().at(int(compose(r, tb)), int(compose(c, tb)));
            }
            m.at(int(r), int(c)) = s;
        }
    return DensityMatrix(full.keep(keep), std::move(m));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                const std::vector<std::string>& transpose_part) {
    const SubsystemLayout& full = rho.layout();
    const std::vector<int> flip = full.qubit_positions(transpose_part);
    const int nq = full.total_qubits();
    std::uint64_t fmask = 0;
    for (int q : flip) fmask |= mask_for(q, nq);

    const std::uint64_t d = std::uint64_t(1) << nq;
    ComplexMatrix out{int(d)};
    for (std::uint64_t r = 0; r < d; ++r)
        for (std::uint64_t c = 0; c < d; ++c) {
            std::uint64_t rr = (r & ~fmask) | (c & fmask);
            std::uint64_t cc = (c & ~fmask) | (r & fmask);
            out.at(int(r), int(c)) = rho.mat().at(int(rr), int(cc));
        }
    return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dim mismatch");
    ComplexMatrix diff = a.mat() - b.mat();
    EighResult e = eigh(diff);
    double s = 0.0;
    for (double v : e.eigenvalues) s += std::abs(v);
    return 0.5 * s;
}

double vn_entropy(const DensityMatrix& rho) {
    EighResult e = eigh(rho.mat());
    double s = 0.0;
    for (double v : e.eigenvalues) {
        if (v > 1e-15) s -= v * std::log2(v);
    }
    return s;
}

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
    if (std::int64_t(psi.dim()) != rho.dim()) {
        throw std::invalid_argument("fidelity_pure: dim mismatch");
    }
    cx s = 0.0;
    const auto& a = psi.amplitudes();
    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c) {
            s += std::conj(a[r]) * rho.mat().at(r, c) * a[c];
        }
    }
    double f = s.real();
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    return f;
}

}  // namespace qotp

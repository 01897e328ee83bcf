#include "qotp/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "qotp/eigen.hpp"

namespace qotp {

Ensemble::Ensemble(std::vector<double> p, std::vector<DensityMatrix> rho)
    : probs(std::move(p)), states(std::move(rho)) {
    if (probs.empty() || probs.size() != states.size()) {
        throw std::invalid_argument("Ensemble: need matching, nonempty probs and states");
    }
    double sum = 0.0;
    for (double v : probs) {
        if (v < 0.0) throw std::invalid_argument("Ensemble: negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("Ensemble: probabilities must sum to 1");
    }
    for (const auto& st : states) {
        if (st.dim() != states.front().dim()) {
            throw std::invalid_argument("Ensemble: states must share one dimension");
        }
    }
}

DensityMatrix Ensemble::average() const {
    ComplexMatrix acc(dim());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        ComplexMatrix term = states[i].mat();
        term *= cx(probs[i]);
        acc += term;
    }
    return DensityMatrix(states.front().layout(), std::move(acc));
}

Povm::Povm(std::vector<ComplexMatrix> elems) : elements(std::move(elems)) {
    if (elements.empty()) throw std::invalid_argument("Povm: need at least one element");
    const int d = elements.front().dim();
    ComplexMatrix sum(d);
    for (const auto& e : elements) {
        if (e.dim() != d) throw std::invalid_argument("Povm: element dimension mismatch");
        if (!e.is_hermitian(1e-9)) throw std::invalid_argument("Povm: element not Hermitian");
        if (eigh(e).eigenvalues.front() < -1e-9) {
            throw std::invalid_argument("Povm: element not positive semidefinite");
        }
        sum += e;
    }
    ComplexMatrix delta = sum - ComplexMatrix::identity(d);
    if (delta.max_abs() > 1e-9) {
        throw std::invalid_argument("Povm: elements must sum to the identity");
    }
}

Povm Povm::projective(const ComplexMatrix& basis) {
    if (!basis.is_unitary(1e-9)) throw std::invalid_argument("Povm::projective: basis not unitary");
    const int d = basis.dim();
    std::vector<ComplexMatrix> elems;
    elems.reserve(std::size_t(d));
    for (int k = 0; k < d; ++k) {
        ComplexMatrix p(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) p.at(r, c) = basis.at(r, k) * std::conj(basis.at(c, k));
        elems.push_back(std::move(p));
    }
    return Povm(std::move(elems));
}

double holevo(const Ensemble& e) {
    double chi = vn_entropy(e.average());
    for (std::size_t i = 0; i < e.probs.size(); ++i) chi -= e.probs[i] * vn_entropy(e.states[i]);
    return chi;
}

double mutual_info_measurement(const Ensemble& e, const Povm& m) {
    if (e.dim() != m.dim()) throw std::invalid_argument("mutual_info_measurement: dim mismatch");
    const std::size_t ni = e.probs.size();
    const std::size_t nv = m.elements.size();
    std::vector<double> joint(ni * nv, 0.0);
    std::vector<double> pv(nv, 0.0);
    for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t v = 0; v < nv; ++v) {
            cx tr = 0.0;
            const ComplexMatrix& mv = m.elements[v];
            const ComplexMatrix& rho = e.states[i].mat();
            for (int r = 0; r < rho.dim(); ++r)
                for (int c = 0; c < rho.dim(); ++c) tr += mv.at(r, c) * rho.at(c, r);
            double p = std::max(0.0, tr.real()) * e.probs[i];
            joint[i * nv + v] = p;
            pv[v] += p;
        }
    }
    double mi = 0.0;
    for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t v = 0; v < nv; ++v) {
            double p = joint[i * nv + v];
            if (p <= 1e-300) continue;
            double denom = e.probs[i] * pv[v];
            if (denom <= 1e-300) continue;
            mi += p * std::log2(p / denom);
        }
    }
    return mi;
}

double eve_product_distance(const DensityMatrix& joint) {
    const SubsystemLayout& l = joint.layout();
    if (!l.has("K") || !l.has("E")) {
        throw std::invalid_argument("eve_product_distance: layout needs labels K and E");
    }
    DensityMatrix rk = partial_trace(joint, {"K"});
    DensityMatrix re = partial_trace(joint, {"E"});
    DensityMatrix prod(joint.layout().keep({"K", "E"}), kron(rk.mat(), re.mat()));
    return trace_distance(joint, prod);
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const std::vector<std::string>& cut) {
    return eigh(partial_transpose(rho, cut)).eigenvalues.front();
}

bool entropy_separability_check(const DensityMatrix& rho, const std::vector<std::string>& cut) {
    return vn_entropy(rho) >= vn_entropy(partial_trace(rho, cut)) - 1e-8;
}

double leftover_hash_bound(double lambda_max, int rank_e, int t, double eps) {
    if (lambda_max <= 0.0 || lambda_max > 1.0) {
        throw std::invalid_argument("leftover_hash_bound: lambda_max must be in (0, 1]");
    }
    if (rank_e < 1) throw std::invalid_argument("leftover_hash_bound: rank must be >= 1");
    if (t < 1) throw std::invalid_argument("leftover_hash_bound: t must be >= 1");
    if (eps < 0.0) throw std::invalid_argument("leftover_hash_bound: eps must be >= 0");
    return std::exp2(0.5 * (std::log2(lambda_max) + std::log2(double(rank_e)) + t)) + 2.0 * eps;
}

double transpose_identity_residual(const ComplexMatrix& u) {
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("transpose_identity_residual: input is not unitary");
    const int d = u.dim();
    if (!is_power_of_two(d)) throw std::invalid_argument("transpose_identity_residual: dim must be a power of 2");
    int m = 0;
    while ((1 << m) < d) ++m;

    // |phi+> = sum_i |i>|i> / sqrt(d); push U through one side and U^T
    // through the other, each via the generic gate path.
    std::vector<cx> amps(std::size_t(d) * d, 0.0);
    const double inv = 1.0 / std::sqrt(double(d));
    for (int i = 0; i < d; ++i) amps[std::size_t(i) * d + i] = inv;
    StateVector phi(SubsystemLayout{{"L", m}, {"R", m}}, std::move(amps));

    std::vector<int> left_qubits, right_qubits;
    for (int q = 0; q < m; ++q) {
        left_qubits.push_back(q);
        right_qubits.push_back(m + q);
    }
    StateVector lhs = phi;
    lhs.apply_unitary(u, right_qubits);
    StateVector rhs = phi;
    rhs.apply_unitary(u.transpose(), left_qubits);

    double resid2 = 0.0;
    for (std::size_t i = 0; i < lhs.amplitudes().size(); ++i) {
        resid2 += std::norm(lhs.amplitudes()[i] - rhs.amplitudes()[i]);
    }
    return std::sqrt(resid2);
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
    ComplexMatrix g(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g.at(r, c) = cx(rng.gauss(), rng.gauss());
    // Gram-Schmidt on columns.
    for (int c = 0; c < dim; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cx overlap = 0.0;
            for (int r = 0; r < dim; ++r) overlap += std::conj(g.at(r, prev)) * g.at(r, c);
            for (int r = 0; r < dim; ++r) g.at(r, c) -= overlap * g.at(r, prev);
        }
        double nrm = 0.0;
        for (int r = 0; r < dim; ++r) nrm += std::norm(g.at(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < dim; ++r) g.at(r, c) /= nrm;
    }
    return g;
}

namespace {

// Separable candidate: sum_k w_k |a_k><a_k| (x) |b_k><b_k| with Bloch-angle
// parameterization and squared-weight simplex coordinates.
struct SeparableAnsatz {
    static constexpr int kComponents = 16;
    static constexpr int kParamsPerComponent = 5;  // theta_a, phi_a, theta_b, phi_b, raw_w

    std::vector<double> params;  // 80 entries

    static int param_count() { return kComponents * kParamsPerComponent; }

    ComplexMatrix build() const {
        ComplexMatrix sigma(4);
        double wsum = 0.0;
        for (int k = 0; k < kComponents; ++k) wsum += sq(params[std::size_t(k) * 5 + 4]);
        if (wsum <= 1e-30) wsum = 1.0;
        for (int k = 0; k < kComponents; ++k) {
            const double* p = &params[std::size_t(k) * 5];
            double w = sq(p[4]) / wsum;
            if (w <= 0.0) continue;
            cx a0 = std::cos(0.5 * p[0]);
            cx a1 = std::polar(std::sin(0.5 * p[0]), p[1]);
            cx b0 = std::cos(0.5 * p[2]);
            cx b1 = std::polar(std::sin(0.5 * p[2]), p[3]);
            cx av[4] = {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) sigma.at(r, c) += w * av[r] * std::conj(av[c]);
        }
        return sigma;
    }

    static double sq(double v) { return v * v; }
};

// Tr rho (log2 rho - log2 sigma); +inf-ish penalty when sigma lacks support.
double relative_entropy_bits(const DensityMatrix& rho, const ComplexMatrix& sigma) {
    EighResult es = eigh(sigma);
    double val = -vn_entropy(rho);
    for (int k = 0; k < 4; ++k) {
        double lam = es.eigenvalues[std::size_t(k)];
        cx expect = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                expect += std::conj(es.eigenvectors.at(r, k)) * rho.mat().at(r, c) *
                          es.eigenvectors.at(c, k);
        double w = std::max(0.0, expect.real());
        if (w < 1e-15) continue;
        if (lam < 1e-18) return 1e6;
        val -= w * std::log2(lam);
    }
    return val;
}

}  // namespace

double rel_entropy_ub(const DensityMatrix& rho, int restarts, int iters, std::uint64_t seed) {
    if (rho.qubits() != 2) {
        throw std::invalid_argument("rel_entropy_ub: only 2-qubit states are supported");
    }
    if (restarts < 1 || iters < 1) {
        throw std::invalid_argument("rel_entropy_ub: restarts and iters must be positive");
    }

    double best = 1e9;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, 0xE57A0000u + std::uint64_t(r)));
        SeparableAnsatz ansatz;
        ansatz.params.resize(std::size_t(SeparableAnsatz::param_count()));
        for (double& p : ansatz.params) p = rng.real() * 3.141592653589793;

        double current = relative_entropy_bits(rho, ansatz.build());
        double step = 0.3;
        for (int it = 0; it < iters && step > 1e-7; ++it) {
            bool improved = false;
            for (std::size_t j = 0; j < ansatz.params.size(); ++j) {
                const double saved = ansatz.params[j];
                for (double delta : {step, -step}) {
                    ansatz.params[j] = saved + delta;
                    double v = relative_entropy_bits(rho, ansatz.build());
                    if (v < current - 1e-12) {
                        current = v;
                        improved = true;
                        break;
                    }
                    ansatz.params[j] = saved;
                }
            }
            if (!improved) step *= 0.5;
        }
        if (current < best) best = current;
    }
    return std::max(0.0, best);
}

}  // namespace qotp

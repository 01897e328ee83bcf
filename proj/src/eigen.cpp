#include "qotp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qotp {

namespace {

double max_offdiag(const ComplexMatrix& a) {
    double m = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) m = std::max(m, std::abs(a.at(p, q)));
    return m;
}

}  // namespace

EighResult eigh(const ComplexMatrix& h) {
    if (!h.is_hermitian(1e-9 * std::max(1.0, h.max_abs()))) {
        throw std::invalid_argument("eigh: input is not Hermitian");
    }
    const int n = h.dim();
    ComplexMatrix a = h;
    // Symmetrize away the sub-tolerance asymmetry before iterating.
    for (int p = 0; p < n; ++p) {
        a.at(p, p) = a.at(p, p).real();
        for (int q = p + 1; q < n; ++q) {
            cx m = 0.5 * (a.at(p, q) + std::conj(a.at(q, p)));
            a.at(p, q) = m;
            a.at(q, p) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-13 * std::max(h.fro_norm(), 1e-300);
    const int max_sweeps = 100;
    bool converged = (n == 1) || max_offdiag(a) <= threshold;

    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cx apq = a.at(p, q);
                const double g = std::abs(apq);
                if (g <= threshold * 1e-2) continue;

                const double alpha = a.at(p, p).real();
                const double beta = a.at(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * g, alpha - beta);
                const double c = std::cos(theta);
                const double sr = std::sin(theta);
                const cx phase = apq / g;  // e^{i phi}
                const cx s = sr * phase;   // complex sine carrying the phase

                // Rows p,q of a <- U^dagger a.
                for (int k = 0; k < n; ++k) {
                    const cx apk = a.at(p, k);
                    const cx aqk = a.at(q, k);
                    a.at(p, k) = c * apk + s * aqk;
                    a.at(q, k) = -std::conj(s) * apk + c * aqk;
                }
                // Columns p,q of a <- a U, and accumulate v <- v U.
                for (int k = 0; k < n; ++k) {
                    const cx akp = a.at(k, p);
                    const cx akq = a.at(k, q);
                    a.at(k, p) = c * akp + std::conj(s) * akq;
                    a.at(k, q) = -s * akp + c * akq;

                    const cx vkp = v.at(k, p);
                    const cx vkq = v.at(k, q);
                    v.at(k, p) = c * vkp + std::conj(s) * vkq;
                    v.at(k, q) = -s * vkp + c * vkq;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();
            }
        }
        converged = max_offdiag(a) <= threshold;
    }
    if (!converged) throw std::runtime_error("eigh: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EighResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a.at(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors.at(r, k) = v.at(r, order[k]);
    }
    return out;
}

}  // namespace qotp

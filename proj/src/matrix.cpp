#include "qotp/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qotp {

bool is_power_of_two(int v) {
    return v >= 1 && (v & (v - 1)) == 0;
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(std::size_t(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be positive");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cx> entries) : dim_(dim), a_(std::move(entries)) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    if (a_.size() != std::size_t(dim) * dim) {
        throw std::invalid_argument("ComplexMatrix: entry count must be dim*dim");
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m.at(c, r) = at(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.entries()[i] = std::conj(a_[i]);
    return m;
}

cx ComplexMatrix::trace() const {
    cx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::fro_norm() const {
    double s = 0.0;
    for (const cx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    ComplexMatrix p = matmul(dagger(), *this);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            cx want = (r == c) ? 1.0 : 0.0;
            if (std::abs(p.at(r, c) - want) > tol) return false;
        }
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix::operator+=: dim mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix::operator-=: dim mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx scalar) {
    for (cx& v : a_) v *= scalar;
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dim mismatch");
    int n = a.dim();
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            cx v = a.at(r, k);
            if (v == cx(0.0)) continue;
            for (int c = 0; c < n; ++c) out.at(r, c) += v * b.at(k, c);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!is_power_of_two(a.dim()) || !is_power_of_two(b.dim())) {
        throw std::invalid_argument("kron: dimensions must be powers of two");
    }
    int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            cx v = a.at(ra, ca);
            if (v == cx(0.0)) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out.at(ra * db + rb, ca * db + cb) = v * b.at(rb, cb);
        }
    return out;
}

ComplexMatrix pauli_x_matrix() {
    return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
}

ComplexMatrix pauli_y_matrix() {
    return ComplexMatrix(2, {0.0, cx(0.0, -1.0), cx(0.0, 1.0), 0.0});
}

ComplexMatrix pauli_z_matrix() {
    return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
}

ComplexMatrix hadamard_matrix() {
    double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, {r, r, r, -r});
}

ComplexMatrix phase_s_matrix() {
    return ComplexMatrix(2, {1.0, 0.0, 0.0, cx(0.0, 1.0)});
}

}  // namespace qotp

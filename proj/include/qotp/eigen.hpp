#ifndef QOTP_EIGEN_HPP
#define QOTP_EIGEN_HPP

#include <vector>

#include "qotp/matrix.hpp"

namespace qotp {

struct EighResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Converges when the largest off-diagonal magnitude drops below
// 1e-13 * ||h||_F, capped at 100 sweeps.
//
// Throws std::invalid_argument if h is not Hermitian within 1e-9 and
// std::runtime_error if the sweep cap is hit before convergence.
EighResult eigh(const ComplexMatrix& h);

}  // namespace qotp

#endif

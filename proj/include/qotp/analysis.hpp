#ifndef QOTP_ANALYSIS_HPP
#define QOTP_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "qotp/states.hpp"

namespace qotp {

// Weighted family of equal-dimension states.
struct Ensemble {
    std::vector<double> probs;
    std::vector<DensityMatrix> states;

    Ensemble(std::vector<double> p, std::vector<DensityMatrix> rho);
    int dim() const { return states.front().dim(); }
    DensityMatrix average() const;
};

// Positive operator-valued measure; elements sum to the identity.
struct Povm {
    std::vector<ComplexMatrix> elements;

    explicit Povm(std::vector<ComplexMatrix> elems);
    int dim() const { return elements.front().dim(); }

    // Projective measurement onto the columns of a unitary.
    static Povm projective(const ComplexMatrix& basis);
};

// S(sum p_i rho_i) - sum p_i S(rho_i), in bits. Upper-bounds what any
// measurement can learn about the ensemble index.
double holevo(const Ensemble& e);

// Classical mutual information between ensemble index and measurement
// outcome, p(i, v) = p_i Tr(M_v rho_i). In bits.
double mutual_info_measurement(const Ensemble& e, const Povm& m);

// Trace distance between a joint state on labels (K, E) and the product of
// its marginals; zero iff the adversary register factorizes from the key.
double eve_product_distance(const DensityMatrix& joint);

// Smallest eigenvalue of the partial transpose across the cut. Negative
// values witness entanglement; in 2x2 systems nonnegativity decides
// separability outright.
double ppt_min_eigenvalue(const DensityMatrix& rho, const std::vector<std::string>& cut);

// Entropy witness: true iff S(rho) >= S(rho_cut) - 1e-8, which every
// separable state satisfies. False certifies entanglement.
bool entropy_separability_check(const DensityMatrix& rho, const std::vector<std::string>& cut);

// 2^{(log2 lambda_max + log2 rank_e + t)/2} + 2 eps: how far a hashed key can
// sit from product with the adversary, given the joint spectrum.
double leftover_hash_bound(double lambda_max, int rank_e, int t, double eps);

// Residual of the maximally-entangled-state transpose identity
// (I (x) U)|phi+> = (U^T (x) I)|phi+>; zero for every unitary, so any excess
// is numerical error. Throws if u is not unitary within 1e-9.
double transpose_identity_residual(const ComplexMatrix& u);

// Upper bound on the relative entropy of entanglement of a 2-qubit state:
// coordinate descent over mixtures of 16 parameterized product states,
// restarted from seeded random initializations.
double rel_entropy_ub(const DensityMatrix& rho, int restarts = 20, int iters = 500,
                      std::uint64_t seed = 0);

// Haar-like random unitary (Gaussian matrix + Gram-Schmidt).
ComplexMatrix random_unitary(int dim, Rng& rng);

}  // namespace qotp

#endif

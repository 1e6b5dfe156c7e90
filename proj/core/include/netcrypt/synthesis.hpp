#pragma once

#include <vector>

#include "netcrypt/fixedpoint.hpp"
#include "netcrypt/rational.hpp"

namespace netcrypt {

// Exact-rational plant data. A is the full (possibly coupled) state matrix;
// B and C carry the per-entity input/output channels; per-entity dimensions
// partition the lumped vectors.
struct PlantMatrices {
    RMat A;  // n_x x n_x
    RMat B;  // n_x x n_u
    RMat C;  // n_y x n_x
    mpq_class gamma1 = 1;  // output resolution scaling
    mpq_class gamma2 = 1;  // echo-channel resolution scaling
    std::vector<unsigned> state_dims;   // s_i per entity, sum = n_x
    std::vector<unsigned> input_dims;   // p_i per entity, sum = n_u
    std::vector<unsigned> output_dims;  // q_i per entity, sum = n_y

    unsigned N() const { return static_cast<unsigned>(state_dims.size()); }
    std::size_t nx() const { return A.rows(); }
    std::size_t nu() const { return B.cols(); }
    std::size_t ny() const { return C.rows(); }
    void validate() const;
};

// Integer controller gains. phi drives u^a from the echo outputs y^b,
// varphi drives the observer state from y^a, varphi_o from y^b.
struct ControllerGains {
    mpq_class gamma1 = 1;
    mpq_class gamma2 = 1;
    RMat phi;       // n_u x n_zeta, integer entries
    RMat varphi;    // n_zeta x n_y, integer entries
    RMat varphi_o;  // n_zeta x n_zeta, integer entries
    void validate() const;
};

struct StabilityBounds {
    double M = 0;      // decay envelope gain, >= 1
    double rho = 0;    // decay rate, in (0, 1)
    double sigma = 0;  // ||B_c|| * d
    double beta = 0;
    double R_o = 0;    // admissible initial-condition radius
    unsigned d = 0;    // dimension of the quantization-error vector
};

// Induced 2-norm (largest singular value) on the double image.
double induced_norm(const RMat& m);
double spectral_radius(const RMat& m);
// ||A^k|| on the double image.
double power_norm(const RMat& m, unsigned k);

// Turn rational stabilizing/observer gains (K, L) into integer gain
// matrices with gamma factors absorbing the denominators:
//   phi = K/gamma2, varphi = -L/gamma1, varphi_o = (A + BK + LC)/gamma2,
// with gamma2 = 1/lcm(denominators of K and A+BK+LC), gamma1 = 1/lcm(L).
// Throws when the resulting closed loop is not Schur.
ControllerGains integerize(const RMat& K, const RMat& L, const PlantMatrices& plant);

// A_c = [[A, gamma2 B phi], [gamma1 varphi C, gamma2 varphi_o]],
// B_c = [[0, B phi], [varphi, varphi_o]]; both exact rationals.
struct ClosedLoop {
    RMat A_c;
    RMat B_c;
};
ClosedLoop build_closed_loop(const PlantMatrices& plant, const ControllerGains& gains);

// Certified (M, rho) with ||A_c^k|| <= M rho^k for all k: rho is the
// spectral radius plus a margin, and the power ratios are scanned until a
// sub-unit ratio certifies the tail. eps <= 0 selects the default margin
// (1 - spectral radius)/10.
struct DecayEnvelope {
    double M;
    double rho;
};
DecayEnvelope decay_envelope(const RMat& A_c, unsigned k_max = 2000, double eps = 0.0);

// Admissible-region computation; throws when R_o <= 0 (word
// length too small for any admissible initial condition).
StabilityBounds operating_region(const DecayEnvelope& env, const ControllerGains& gains,
                                 const PlantMatrices& plant, GridParams grid);

// max over the kappa rows (phi) and the varkappa rows ([varphi_o varphi])
// of 2^n * (row absolute sum): the Paillier modulus must exceed this.
mpz_class required_paillier_bound(const ControllerGains& gains, unsigned n);

// Convenience pole placement for single-input systems (Ackermann, exact
// rationals). desired_poly holds the desired characteristic polynomial
// coefficients [a_{nx-1}, ..., a_0] of z^nx + a_{nx-1} z^{nx-1} + ... + a_0.
// Returns K with A + B K having that characteristic polynomial.
RMat ackermann_gain(const RMat& A, const RMat& B_col, const std::vector<mpq_class>& desired_poly);

}  // namespace netcrypt

#include "netcrypt/synthesis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <numeric>

namespace netcrypt {

namespace {

Eigen::MatrixXd to_eigen(const RMat& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).get_d();
    return e;
}

mpz_class row_abs_sum(const RMat& m, std::size_t row) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(row, j).get_num());
    return s;
}

}  // namespace

void PlantMatrices::validate() const {
    auto sum = [](const std::vector<unsigned>& v) {
        return std::accumulate(v.begin(), v.end(), 0u);
    };
    if (N() == 0) throw ConfigError("plant: at least one entity required");
    if (input_dims.size() != N() || output_dims.size() != N())
        throw ConfigError("plant: per-entity dimension lists must agree on N");
    if (A.rows() != A.cols() || A.rows() != sum(state_dims))
        throw ConfigError("plant: A dimensions inconsistent with state_dims");
    if (B.rows() != A.rows() || B.cols() != sum(input_dims))
        throw ConfigError("plant: B dimensions inconsistent");
    if (C.cols() != A.rows() || C.rows() != sum(output_dims))
        throw ConfigError("plant: C dimensions inconsistent");
    if (gamma1 <= 0 || gamma2 <= 0) throw ConfigError("plant: gamma parameters must be positive");
}

void ControllerGains::validate() const {
    if (gamma1 <= 0 || gamma2 <= 0) throw ConfigError("gains: gamma parameters must be positive");
    if (!phi.is_integer() || !varphi.is_integer() || !varphi_o.is_integer())
        throw ConfigError("gains: phi, varphi, varphi_o must be integer matrices");
    if (varphi_o.rows() != varphi_o.cols() || varphi.rows() != varphi_o.rows() ||
        phi.cols() != varphi_o.rows())
        throw ConfigError("gains: observer-state dimensions inconsistent");
}

double induced_norm(const RMat& m) {
    return to_eigen(m).jacobiSvd().singularValues()(0);
}

double spectral_radius(const RMat& m) {
    return to_eigen(m).eigenvalues().cwiseAbs().maxCoeff();
}

double power_norm(const RMat& m, unsigned k) {
    Eigen::MatrixXd a = to_eigen(m);
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (unsigned i = 0; i < k; ++i) p = p * a;
    return p.jacobiSvd().singularValues()(0);
}

ControllerGains integerize(const RMat& K, const RMat& L, const PlantMatrices& plant) {
    plant.validate();
    RMat acl = plant.A + plant.B * K + L * plant.C;

    mpz_class den2 = lcm(K.lcm_of_denominators(), acl.lcm_of_denominators());
    mpz_class den1 = L.lcm_of_denominators();

    ControllerGains g;
    g.gamma2 = mpq_class(1, den2);
    g.gamma1 = mpq_class(1, den1);
    g.phi = K * mpq_class(den2);
    g.varphi = L * mpq_class(-den1);
    g.varphi_o = acl * mpq_class(den2);
    g.validate();

    ClosedLoop cl = build_closed_loop(plant, g);
    if (spectral_radius(cl.A_c) >= 1.0)
        throw Error("integerize: supplied (K, L) do not stabilize (A_c not Schur)");
    return g;
}

ClosedLoop build_closed_loop(const PlantMatrices& plant, const ControllerGains& gains) {
    plant.validate();
    gains.validate();
    if (gains.phi.rows() != plant.nu() || gains.phi.cols() != plant.nx() ||
        gains.varphi.cols() != plant.ny() || gains.varphi_o.rows() != plant.nx())
        throw ConfigError("gains/plant dimension mismatch");

    RMat b_phi = plant.B * gains.phi;
    ClosedLoop cl;
    cl.A_c = RMat::from_blocks(plant.A, b_phi * gains.gamma2,
                               (gains.varphi * plant.C) * gains.gamma1,
                               gains.varphi_o * gains.gamma2);
    cl.B_c = RMat::from_blocks(RMat::zero(plant.nx(), plant.ny()), b_phi, gains.varphi,
                               gains.varphi_o);
    return cl;
}

DecayEnvelope decay_envelope(const RMat& A_c, unsigned k_max, double eps) {
    double sr = spectral_radius(A_c);
    if (sr >= 1.0) throw Error("decay_envelope: matrix is not Schur");
    if (eps <= 0.0) eps = (1.0 - sr) / 10.0;
    double rho = sr + eps;
    if (rho >= 1.0) throw Error("decay_envelope: margin pushes rho past 1");

    // Scan ||A_c^k|| / rho^k until a sub-unit ratio appears. Once
    // r_{k*} <= 1, submultiplicativity gives r_{qk*+s} <= r_{k*}^q r_s,
    // so M = max over the scanned prefix bounds every k.
    Eigen::MatrixXd a = to_eigen(A_c);
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    double m = 1.0;
    double rho_k = 1.0;
    for (unsigned k = 1; k <= k_max; ++k) {
        p = p * a;
        rho_k *= rho;
        double ratio = p.jacobiSvd().singularValues()(0) / rho_k;
        if (ratio > m) m = ratio;
        if (ratio <= 1.0) return {m, rho};
    }
    throw Error("decay_envelope: could not certify the envelope within k_max powers");
}

StabilityBounds operating_region(const DecayEnvelope& env, const ControllerGains& gains,
                                 const PlantMatrices& plant, GridParams grid) {
    grid.validate();
    ClosedLoop cl = build_closed_loop(plant, gains);

    StabilityBounds b;
    b.M = env.M;
    b.rho = env.rho;
    b.d = static_cast<unsigned>(plant.ny() + plant.nx());
    b.sigma = induced_norm(cl.B_c) * b.d;

    const double g1 = gains.gamma1.get_d();
    const double g2 = gains.gamma2.get_d();
    const double two_pow_1mn = std::ldexp(1.0, 1 - static_cast<int>(grid.n));

    double factor = std::min(1.0, 1.0 / g2);
    unsigned in_off = 0, out_off = 0, st_off = 0;
    for (unsigned i = 0; i < plant.N(); ++i) {
        RMat phi_i = gains.phi.block(in_off, 0, plant.input_dims[i], gains.phi.cols());
        double nphi = induced_norm(phi_i);
        if (nphi > 0) factor = std::min(factor, (1.0 - nphi * two_pow_1mn) / (g2 * nphi));
        RMat c_i = plant.C.block(out_off, st_off, plant.output_dims[i], plant.state_dims[i]);
        double nc = induced_norm(c_i);
        if (nc > 0) factor = std::min(factor, 1.0 / (g1 * nc));
        in_off += plant.input_dims[i];
        out_off += plant.output_dims[i];
        st_off += plant.state_dims[i];
    }

    b.beta = std::ldexp(1.0, static_cast<int>(grid.n - grid.m) - 1) * factor;
    b.R_o = b.beta / b.M - b.sigma * std::ldexp(1.0, -static_cast<int>(grid.m)) / (1.0 - b.rho);
    if (b.R_o <= 0)
        throw ConfigError(
            "operating_region: R_o <= 0; word length n too small for any admissible initial "
            "condition (increase n or reduce m)");
    return b;
}

mpz_class required_paillier_bound(const ControllerGains& gains, unsigned n) {
    mpz_class max_sum = 0;
    for (std::size_t i = 0; i < gains.phi.rows(); ++i)
        max_sum = std::max(max_sum, row_abs_sum(gains.phi, i));
    for (std::size_t i = 0; i < gains.varphi_o.rows(); ++i)
        max_sum = std::max(max_sum,
                           mpz_class(row_abs_sum(gains.varphi_o, i) + row_abs_sum(gains.varphi, i)));
    return max_sum << n;
}

RMat ackermann_gain(const RMat& A, const RMat& B_col, const std::vector<mpq_class>& desired_poly) {
    const std::size_t n = A.rows();
    if (A.cols() != n || B_col.rows() != n || B_col.cols() != 1 || desired_poly.size() != n)
        throw Error("ackermann_gain: dimension mismatch (single-input only)");

    RMat ctrl(n, n);
    RMat col = B_col;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) ctrl(i, j) = col(i, 0);
        col = A * col;
    }

    // p(A) = A^n + a_{n-1} A^{n-1} + ... + a_0 I
    RMat pa = RMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) pa = pa * A;
    RMat apow = RMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        pa = pa + apow * desired_poly[n - 1 - i];
        apow = apow * A;
    }

    RMat last_row(1, n);
    last_row(0, n - 1) = 1;
    return (last_row * ctrl.inverse() * pa) * mpq_class(-1);
}

}  // namespace netcrypt

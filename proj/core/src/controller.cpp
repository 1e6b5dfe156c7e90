#include "netcrypt/controller.hpp"

namespace netcrypt {

namespace {

GridParams grid_of(std::span<const FixedPointValue> values) {
    if (values.empty()) throw Error("controller: empty signal vector");
    return values.front().grid();
}

// Raw-domain combination without the grid range check, for range_guard.
mpz_class raw_combine(const RMat& coeffs, std::size_t row,
                      std::span<const FixedPointValue> values) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < coeffs.cols(); ++j)
        acc += coeffs(row, j).get_num() * values[j].raw();
    return acc;
}

std::vector<DualCiphertext> concat(std::span<const DualCiphertext> a,
                                   std::span<const DualCiphertext> b) {
    std::vector<DualCiphertext> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// [varphi_o | varphi], the coefficient rows of the zeta update.
RMat hcat(const RMat& left, const RMat& right) {
    if (left.rows() != right.rows()) throw Error("hcat: row mismatch");
    RMat r(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) r(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) r(i, left.cols() + j) = right(i, j);
    }
    return r;
}

}  // namespace

std::vector<FixedPointValue> int_combine(const RMat& coeffs,
                                         std::span<const FixedPointValue> values) {
    if (coeffs.cols() != values.size()) throw Error("int_combine: dimension mismatch");
    if (!coeffs.is_integer()) throw Error("int_combine: coefficients must be integers");
    GridParams grid = grid_of(values);
    std::vector<FixedPointValue> out;
    out.reserve(coeffs.rows());
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        out.push_back(FixedPointValue::from_raw(raw_combine(coeffs, i, values), grid));
    return out;
}

PlainStepResult plain_step(const PlainControllerState& state,
                           std::span<const FixedPointValue> ya_q,
                           std::span<const FixedPointValue> yb_q, const ControllerGains& gains) {
    gains.validate();
    PlainStepResult r;
    r.ua = int_combine(gains.phi, yb_q);
    r.ub = state.zeta;
    auto zo = int_combine(gains.varphi_o, yb_q);
    auto zy = int_combine(gains.varphi, ya_q);
    r.next.zeta.reserve(zo.size());
    for (std::size_t i = 0; i < zo.size(); ++i) r.next.zeta.push_back(zo[i] + zy[i]);
    return r;
}

PaillierCiphertext dual_power(const DualCiphertext& c, const mpz_class& a,
                              const PaillierPublicKey& pk) {
    if (a == 0) return {mpz_class(1), pk.key_id};
    if (a > 0) return paillier_scale(pk, c.plus, a);
    return paillier_scale(pk, c.minus, -a);
}

PaillierCiphertext hom_combine(const RMat& coeffs, std::size_t row,
                               std::span<const DualCiphertext> inputs,
                               const PaillierPublicKey& pk, bool negate) {
    if (coeffs.cols() != inputs.size()) throw Error("hom_combine: dimension mismatch");
    PaillierCiphertext acc{mpz_class(1), pk.key_id};
    for (std::size_t j = 0; j < coeffs.cols(); ++j) {
        mpz_class a = coeffs(row, j).get_num();
        if (negate) a = -a;
        if (a == 0) continue;
        acc = paillier_add(pk, acc, dual_power(inputs[j], a, pk));
    }
    return acc;
}

EncryptedStepResult encrypted_stabilizer_step(const EncryptedControllerState& state,
                                              std::span<const DualCiphertext> ya,
                                              std::span<const DualCiphertext> yb,
                                              const ControllerGains& gains,
                                              const PaillierPublicKey& pk) {
    gains.validate();
    EncryptedStepResult r;
    r.va.reserve(gains.phi.rows());
    for (std::size_t i = 0; i < gains.phi.rows(); ++i)
        r.va.push_back(hom_combine(gains.phi, i, yb, pk));

    r.vb.reserve(state.z.size());
    for (const auto& zi : state.z) r.vb.push_back(zi.plus);

    // zeta+ = varphi_o y^b + varphi y^a, evaluated once per sign.
    if (yb.empty()) throw Error("encrypted_stabilizer_step: empty input");
    GridParams grid = yb.front().grid;
    auto inputs = concat(yb, ya);
    RMat coeffs = hcat(gains.varphi_o, gains.varphi);
    r.next.z.reserve(coeffs.rows());
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        r.next.z.push_back({hom_combine(coeffs, i, inputs, pk, false),
                            hom_combine(coeffs, i, inputs, pk, true), grid});
    return r;
}

GeneralStepResult encrypted_general_step(const EncryptedControllerState& state,
                                         std::span<const DualCiphertext> inputs, const RMat& phi,
                                         const RMat& varphi, const PaillierPublicKey& pk) {
    if (!phi.is_integer() || !varphi.is_integer())
        throw Error("encrypted_general_step: coefficients must be integers");
    auto all = concat(state.z, inputs);
    if (phi.cols() != all.size() || varphi.cols() != all.size())
        throw Error("encrypted_general_step: dimension mismatch");
    GridParams grid = all.empty() ? GridParams{} : all.front().grid;

    GeneralStepResult r;
    r.v.reserve(phi.rows());
    for (std::size_t i = 0; i < phi.rows(); ++i) r.v.push_back(hom_combine(phi, i, all, pk));
    r.next.z.reserve(varphi.rows());
    for (std::size_t i = 0; i < varphi.rows(); ++i)
        r.next.z.push_back({hom_combine(varphi, i, all, pk, false),
                            hom_combine(varphi, i, all, pk, true), grid});
    return r;
}

RangeReport range_guard(std::span<const FixedPointValue> zeta,
                        std::span<const FixedPointValue> ya_q,
                        std::span<const FixedPointValue> yb_q, const ControllerGains& gains) {
    RangeReport report;
    GridParams grid = grid_of(zeta);
    auto check = [&](const RMat& coeffs, std::span<const FixedPointValue> values,
                     const std::string& label) {
        for (std::size_t i = 0; i < coeffs.rows(); ++i) {
            mpz_class raw = raw_combine(coeffs, i, values);
            if (raw < grid.raw_min() || raw > grid.raw_max()) {
                report.ok = false;
                report.breaches.push_back({label, i});
            }
        }
    };
    check(gains.phi, yb_q, "u^a");
    // zeta+ rows: combined [varphi_o varphi] over (y^b, y^a)
    std::vector<FixedPointValue> both(yb_q.begin(), yb_q.end());
    both.insert(both.end(), ya_q.begin(), ya_q.end());
    check(hcat(gains.varphi_o, gains.varphi), both, "zeta+");
    return report;
}

}  // namespace netcrypt

#pragma once

#include <utility>

#include "netcrypt/synthesis.hpp"

namespace netcrypt {

struct PlantState {
    RVec x;
    unsigned long k = 0;
};

struct PlantOutputs {
    RVec ya;  // gamma1 * C * x, pre-quantization
    RVec yb;  // gamma2 * u^b, the controller-state echo channel
};

// Extension point for nonlinear dynamics: the simulator treats the maps
// opaquely. The linear plant below is the only one with stability claims.
class PlantModel {
public:
    virtual ~PlantModel() = default;
    virtual RVec transition(const RVec& x, const RVec& u) const = 0;
    virtual RVec measure(const RVec& x, const RVec& u) const = 0;
};

class LinearPlant final : public PlantModel {
public:
    explicit LinearPlant(PlantMatrices m) : m_(std::move(m)) { m_.validate(); }

    RVec transition(const RVec& x, const RVec& u) const override {
        return m_.A * x + m_.B * u;
    }
    RVec measure(const RVec& x, const RVec& /*u*/) const override {
        return m_.gamma1 * (m_.C * x);
    }

    const PlantMatrices& matrices() const { return m_; }

private:
    PlantMatrices m_;
};

// One exact-rational step: x(k+1) = A x + B u^a, outputs y^a = gamma1 C x(k),
// y^b = gamma2 u^b(k).
std::pair<PlantState, PlantOutputs> plant_step(const PlantState& state, const RVec& ua,
                                               const RVec& ub, const PlantMatrices& m);

}  // namespace netcrypt

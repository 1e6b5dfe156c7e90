#include "netcrypt/plant.hpp"

namespace netcrypt {

std::pair<PlantState, PlantOutputs> plant_step(const PlantState& state, const RVec& ua,
                                               const RVec& ub, const PlantMatrices& m) {
    if (state.x.size() != m.nx() || ua.size() != m.nu())
        throw Error("plant_step: dimension mismatch");
    PlantOutputs out{m.gamma1 * (m.C * state.x), m.gamma2 * ub};
    PlantState next{m.A * state.x + m.B * ua, state.k + 1};
    return {std::move(next), std::move(out)};
}

}  // namespace netcrypt

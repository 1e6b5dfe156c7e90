#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netcrypt/plant.hpp"

using namespace netcrypt;

namespace {

mpq_class q(long num, long den = 1) {
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

PlantMatrices demo_plant() {
    PlantMatrices p;
    p.A = RMat::from_rows({{1, 1}, {0, 1}});
    p.B = RMat::from_rows({{q(1, 2), 0}, {1, 1}});
    p.C = RMat::identity(2);
    p.gamma1 = q(1, 10);
    p.gamma2 = q(1, 10);
    p.state_dims = {1, 1};
    p.input_dims = {1, 1};
    p.output_dims = {1, 1};
    return p;
}

}  // namespace

TEST_CASE("plant step is exact rational arithmetic") {
    PlantMatrices p = demo_plant();
    PlantState s{{q(10), q(20)}, 0};
    RVec ua{q(1), q(-2)};
    RVec ub{q(12), q(23)};

    auto [next, out] = plant_step(s, ua, ub, p);
    // x+ = A x + B ua = (10 + 20 + 1/2, 20 + 1 - 2)
    CHECK(next.x == RVec{q(61, 2), q(19)});
    CHECK(next.k == 1);
    // ya = gamma1 C x, yb = gamma2 ub
    CHECK(out.ya == RVec{q(1), q(2)});
    CHECK(out.yb == RVec{q(6, 5), q(23, 10)});
    CHECK_THROWS_AS(plant_step(s, RVec{q(1)}, ub, p), Error);
}

TEST_CASE("linear plant model agrees with plant_step") {
    PlantMatrices p = demo_plant();
    LinearPlant model(p);
    RVec x{q(3), q(-4)};
    RVec u{q(1, 2), q(1)};
    PlantState s{x, 7};
    auto [next, out] = plant_step(s, u, u, p);
    CHECK(model.transition(x, u) == next.x);
    CHECK(model.measure(x, u) == out.ya);
}

TEST_CASE("plant validation rejects inconsistent shapes") {
    PlantMatrices p = demo_plant();
    p.state_dims = {2, 1};
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p = demo_plant();
    p.gamma1 = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p = demo_plant();
    p.B = RMat::from_rows({{1}, {1}, {1}});
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

#include <benchmark/benchmark.h>

#include "netcrypt/codec.hpp"
#include "netcrypt/controller.hpp"

using namespace netcrypt;

namespace {

struct CryptoFixture {
    Rng rng{12345};
    PaillierKeypair pk = paillier_keygen(64, rng);
    RsaKeypair rk = rsa_keygen(256, rng);
    GridParams grid{24, 6};
};

CryptoFixture& fixture() {
    static CryptoFixture f;
    return f;
}

}  // namespace

static void BM_PaillierEncrypt(benchmark::State& state) {
    auto& f = fixture();
    mpz_class m = 123456;
    for (auto _ : state)
        benchmark::DoNotOptimize(paillier_encrypt(f.pk.pub, m, f.rng));
}
BENCHMARK(BM_PaillierEncrypt);

static void BM_PaillierDecrypt(benchmark::State& state) {
    auto& f = fixture();
    auto c = paillier_encrypt(f.pk.pub, mpz_class(123456), f.rng);
    for (auto _ : state) benchmark::DoNotOptimize(paillier_decrypt(f.pk.priv, c));
}
BENCHMARK(BM_PaillierDecrypt);

static void BM_PaillierAdd(benchmark::State& state) {
    auto& f = fixture();
    auto a = paillier_encrypt(f.pk.pub, mpz_class(111), f.rng);
    auto b = paillier_encrypt(f.pk.pub, mpz_class(222), f.rng);
    for (auto _ : state) benchmark::DoNotOptimize(paillier_add(f.pk.pub, a, b));
}
BENCHMARK(BM_PaillierAdd);

static void BM_PaillierScale(benchmark::State& state) {
    auto& f = fixture();
    auto a = paillier_encrypt(f.pk.pub, mpz_class(111), f.rng);
    mpz_class k = 65;
    for (auto _ : state) benchmark::DoNotOptimize(paillier_scale(f.pk.pub, a, k));
}
BENCHMARK(BM_PaillierScale);

static void BM_RsaEncrypt(benchmark::State& state) {
    auto& f = fixture();
    mpz_class m = mpz_class("123456789123456789");
    for (auto _ : state) benchmark::DoNotOptimize(rsa_encrypt(f.rk.pub, m));
}
BENCHMARK(BM_RsaEncrypt);

static void BM_RsaDecrypt(benchmark::State& state) {
    auto& f = fixture();
    mpz_class c = rsa_encrypt(f.rk.pub, mpz_class("123456789123456789"));
    for (auto _ : state) benchmark::DoNotOptimize(rsa_decrypt(f.rk, c));
}
BENCHMARK(BM_RsaDecrypt);

static void BM_EncryptedStabilizerStep(benchmark::State& state) {
    auto& f = fixture();
    ControllerGains gains;
    gains.gamma1 = mpq_class(1, 10);
    gains.gamma2 = mpq_class(1, 10);
    gains.phi = RMat::from_rows({{20, -10}, {-65, -10}});
    gains.varphi = RMat::from_rows({{-10, -12}, {10, 20}});
    gains.varphi_o = RMat::from_rows({{30, 17}, {-55, -30}});

    std::vector<FixedPointValue> zeta{
        FixedPointValue::quantize(mpq_class(12), f.grid),
        FixedPointValue::quantize(mpq_class(23), f.grid)};
    std::vector<FixedPointValue> y{
        FixedPointValue::quantize(mpq_class(1), f.grid),
        FixedPointValue::quantize(mpq_class(2), f.grid)};
    EncryptedControllerState st{inner_encrypt(zeta, f.pk.pub, f.rng)};
    auto ya = inner_encrypt(y, f.pk.pub, f.rng);
    auto yb = inner_encrypt(y, f.pk.pub, f.rng);

    for (auto _ : state)
        benchmark::DoNotOptimize(encrypted_stabilizer_step(st, ya, yb, gains, f.pk.pub));
}
BENCHMARK(BM_EncryptedStabilizerStep);

BENCHMARK_MAIN();

#include "hlrs/rng.hpp"

#include "hlrs/specfun.hpp"

namespace hlrs::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::uint32_t mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi) {
    const std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
    *hi = std::uint32_t(p >> 32);
    return std::uint32_t(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, hi1;
        const std::uint32_t lo0 = mulhilo(kPhiloxM0, ctr[0], &hi0);
        const std::uint32_t lo1 = mulhilo(kPhiloxM1, ctr[2], &hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double uniform01(std::uint64_t seed, Stream stream, std::uint64_t entity, std::uint64_t draw) {
    const std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(entity), std::uint32_t(entity >> 32),
        std::uint32_t(draw), std::uint32_t(draw >> 32)};
    const std::array<std::uint32_t, 2> key = {
        std::uint32_t(seed), std::uint32_t(seed >> 32) ^ std::uint32_t(stream)};
    const auto out = philox4x32(ctr, key);
    const std::uint64_t bits = (std::uint64_t(out[0]) << 32) | out[1];
    return double(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;  // strictly inside (0,1)
}

double normal(std::uint64_t seed, Stream stream, std::uint64_t entity, std::uint64_t draw) {
    return specfun::inverse_normal_cdf(uniform01(seed, stream, entity, draw));
}

}  // namespace hlrs::rng

#pragma once

// Counter-based random streams (Philox4x32-10). A draw is a pure function of
// (seed, stream, entity, draw): per-path generation can run on any number of
// workers and still reproduce bit-exactly. Gaussian and mixing randomness
// live on disjoint streams so the beta = 1 ensembles reduce bit-exactly to
// the Gaussian ones.

#include <array>
#include <cstdint>

namespace hlrs::rng {

enum class Stream : std::uint32_t {
    gaussian = 0x67617573u,  // "gaus"
    mixing = 0x6d697869u,    // "mixi"
};

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// uniform in the open interval (0,1)
double uniform01(std::uint64_t seed, Stream stream, std::uint64_t entity, std::uint64_t draw);

// standard normal via the inverse CDF
double normal(std::uint64_t seed, Stream stream, std::uint64_t entity, std::uint64_t draw);

}  // namespace hlrs::rng

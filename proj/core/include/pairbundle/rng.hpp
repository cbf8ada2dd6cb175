#pragma once

#include "pairbundle/core.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace pb {

using Rng = std::mt19937_64;

// Counter-based stream derivation: splitmix64(seed ^ fnv1a(name) ^ splitmix64(index)).
// Every trial owns its stream, so results do not depend on scheduling.
std::uint64_t fnv1a(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name, std::uint64_t index);
Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t index);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

double uniform(Rng& r, double lo = 0.0, double hi = 1.0);
// Uniform on the closed disc of radius rad.
cd random_in_disc(Rng& r, double rad);
// Uniform on the max-norm polydisc of radius rad.
Mat2 random_polydisc(Rng& r, double rad);
SymMat2 random_sym_polydisc(Rng& r, double rad);
// Haar-distributed unitary.
Mat2 random_unitary(Rng& r);
// U diag(s1, s2) V with s1/s2 log-uniform in [1, max_cond] and overall scale in [e^-1, e].
Mat2 random_invertible(Rng& r, double max_cond = 1e3);
GroupElement random_group_element(Rng& r, double max_cond = 1e3);

}  // namespace pb

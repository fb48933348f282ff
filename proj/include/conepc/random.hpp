#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "conepc/linalg.hpp"

namespace conepc {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Independent stream derived from one seed and a stream name.
Rng make_rng(std::uint64_t seed, std::string_view stream);

/// Seed from CONEPREDICTOR_SEED when set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

Vector gaussian_vector(Rng& rng, Eigen::Index n);
Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
double uniform(Rng& rng, double lo, double hi);
/// Haar-distributed orthogonal matrix.
Matrix random_orthogonal(Rng& rng, Eigen::Index n);

}  // namespace conepc

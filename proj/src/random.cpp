#include "conepc/random.hpp"

#include <cstdlib>
#include <string>

namespace conepc {

Rng make_rng(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : stream) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("CONEPREDICTOR_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoull(env);
  } catch (...) {
    return fallback;
  }
}

Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  return m;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix random_orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, n));
  Matrix q = qr.householderQ();
  Vector d = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < n; ++j)
    if (d(j) < 0) q.col(j) *= -1.0;
  return q;
}

}  // namespace conepc

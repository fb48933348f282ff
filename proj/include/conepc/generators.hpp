#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conepc/dual_geometry.hpp"

namespace conepc {

/// Names: parabola2d, disc2d, sharp_lp(m,n), sharp_sdp(n), soc_test(n),
/// hankel_poly(n). Every returned problem carries its known optimum.
ConicProblem generate_example(const std::string& name, const std::vector<int>& params, std::uint64_t seed);

ConicProblem make_parabola2d();
ConicProblem make_disc2d();
ConicProblem make_sharp_lp(int m, int n, std::uint64_t seed);
ConicProblem make_sharp_sdp(int n, std::uint64_t seed);
ConicProblem make_soc_test(int n, std::uint64_t seed);
ConicProblem make_hankel_poly(int n);

}  // namespace conepc

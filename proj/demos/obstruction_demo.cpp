// Walkthrough: glue a corner graph onto its Euclidean shell and measure how
// much any retraction onto the Euclidean part must stretch.

#include <cstdio>

#include "metriclab/obstruction.hpp"

using namespace metriclab;

int main() {
  for (int n = 2; n <= 4; ++n) {
    auto assembly = build_x_n(n, {2}, default_xn_sample(n, {2}));
    auto inst = make_retraction_instance(assembly, 0.0);
    auto res = retraction_lower_bound(inst);
    std::printf(
        "X_%d over the k=2 shell: %zu points (%zu anchored, %zu free), "
        "lambda_min = %.6f%s\n",
        n, assembly.space.size(), inst.anchors().size(), inst.free_points().size(),
        res.lambda_min, res.converged ? "" : " (unconverged)");
  }
  std::puts("the lower bound grows with the ambient dimension: the glued shells"
            " get harder to flatten");
  return 0;
}

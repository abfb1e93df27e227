// Walkthrough: build the smallest corner graph, take its path metric, and
// move mass across it optimally. Prints the coupling, the short potential,
// and the duality certificate.

#include <cstdio>

#include "metriclab/gnk.hpp"
#include "metriclab/transport.hpp"

using namespace metriclab;

int main() {
  auto g = build_gnk(2, 1);
  auto space = make_space(gnk_metric(g));
  std::printf("G_{2,1}: %zu vertices, diameter %g\n", space->size(),
              space->diameter());

  // all mass on the inner corner (1,1) vs. an even split over the outer shell
  DiscreteMeasure mu = DiscreteMeasure::dirac(space, g.find_vertex({1, 1}));
  Vec w(space->size(), 0.0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (!g.is_inner(i)) w[i] = 0.25;
  DiscreteMeasure nu(space, w);

  auto res = kantorovich(mu, nu);
  std::printf("kantorovich(mu, nu) = %.6f, duality gap %.2e\n", res.value,
              res.duality_gap);
  for (std::size_t i = 0; i < space->size(); ++i)
    for (std::size_t j = 0; j < space->size(); ++j)
      if (res.plan.coupling[i][j] > 0)
        std::printf("  move %.2f: %s -> %s  (cost %g each)\n",
                    res.plan.coupling[i][j], space->labels()[i].c_str(),
                    space->labels()[j].c_str(), space->dist(i, j));
  std::printf("potential values (short test function):\n");
  for (std::size_t i = 0; i < space->size(); ++i)
    std::printf("  phi(%s) = %.4f\n", space->labels()[i].c_str(),
                res.potential.phi[i]);
  return 0;
}

// Colours a long odd cycle and a random bipartite cubic graph, printing palette and
// exceptional fraction for each.

#include <iostream>

#include "mec/mec.hpp"

int main(int argc, char** argv) {
  using namespace mec;
  const int N = argc > 1 ? std::stoi(argv[1]) : 1001;

  auto cyc = rotation_cycle(N);
  auto a = edge_color(cyc, ColorMode::General);
  std::cout << "cycle N=" << N << ": " << a.palette_used << " colours (bound " << a.palette_bound
            << "), exceptional fraction " << a.exceptional_vertex_fraction()
            << ", proper=" << is_proper(cyc.graph, a.colors) << "\n";

  auto cubic = random_regular(1000, 3, true, 7);
  auto b = edge_color(cubic, ColorMode::Bipartite);
  std::cout << "bipartite cubic n=1000: " << b.palette_used << " colours (bound " << b.palette_bound
            << "), exceptional fraction " << b.exceptional_vertex_fraction()
            << ", proper=" << is_proper(cubic.graph, b.colors) << "\n";
  return 0;
}

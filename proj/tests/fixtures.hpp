#pragma once

// Shared hand-built diagrams for the test suites.

#include "knotcalc/diagram.hpp"

namespace knotcalc::fixtures {

// The two-crossing example from the combinatorial-description figure:
// V = {x=0, y=1}, edges [x,x,3,4], [x,y,1,1], [y,y,2,3], [x,y,2,4],
// outer face marked on the four-edge class.
inline Diagram figure_example() {
  Diagram d;
  d.adj[0] = {};
  d.adj[1] = {};
  d.link(0, 3, 0, 4);
  d.link(0, 1, 1, 1);
  d.link(1, 2, 1, 3);
  d.link(0, 2, 1, 4);
  d.outer = Port{0, 4};  // directed (x,x,4,3) lies on the unbounded face
  return d;
}

// Single kink: one crossing, edges [x,x,1,2] and [x,x,3,4]; the bigon face
// {(x,2),(x,4)} is unbounded.
inline Diagram single_kink() {
  Diagram d;
  d.adj[0] = {};
  d.link(0, 1, 0, 2);
  d.link(0, 3, 0, 4);
  d.outer = Port{0, 2};
  return d;
}

}  // namespace knotcalc::fixtures

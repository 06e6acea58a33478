#pragma once

// The Reidemeister move calculus.  Removal moves are identified by the
// crossing set they delete, insertion moves by directed edges plus the
// sign / winding / order data; see the .moves grammar in io.hpp.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "knotcalc/canonical.hpp"
#include "knotcalc/diagram.hpp"

namespace knotcalc {

enum class MoveType { IMinus, IIMinus, III, IPlus, IIPlus };

inline const char* move_type_name(MoveType t) {
  switch (t) {
    case MoveType::IMinus: return "I-";
    case MoveType::IIMinus: return "II-";
    case MoveType::III: return "III";
    case MoveType::IPlus: return "I+";
    case MoveType::IIPlus: return "II+";
  }
  return "?";
}

struct Move {
  MoveType type = MoveType::IMinus;
  std::array<CrossingId, 3> x{0, 0, 0};  // removal crossings (sorted prefix)
  Port eps{};                            // I+/II+ first directed edge
  Port phi{};                            // II+ second directed edge
  bool on_u = false;                     // insertion on the crossing-free U
  int sign = +1;                         // I+ sign; on-U II+ variant
  int winding = +1;                      // II+ winding (normalized + if irrelevant)
  int order = 1;                         // II+ order (normalized 1 if eps != phi)
  std::array<CrossingId, 2> pin{0, 0};   // fixed labels for created crossings
  bool has_pin = false;

  static Move i_minus(CrossingId a) {
    Move m; m.type = MoveType::IMinus; m.x = {a, 0, 0}; return m;
  }
  static Move ii_minus(CrossingId a, CrossingId b) {
    Move m; m.type = MoveType::IIMinus;
    m.x = {std::min(a, b), std::max(a, b), 0};
    return m;
  }
  static Move iii(CrossingId a, CrossingId b, CrossingId c) {
    Move m; m.type = MoveType::III; m.x = {a, b, c};
    std::sort(m.x.begin(), m.x.end());
    return m;
  }
  static Move i_plus(Port e, int sign) {
    Move m; m.type = MoveType::IPlus; m.eps = e; m.sign = sign; return m;
  }
  static Move i_plus_on_u(int sign) {
    Move m; m.type = MoveType::IPlus; m.on_u = true; m.sign = sign; return m;
  }
  static Move ii_plus(Port e, Port f, int winding, int order) {
    Move m; m.type = MoveType::IIPlus; m.eps = e; m.phi = f;
    m.winding = winding; m.order = (e == f) ? order : 1;
    return m;
  }
  static Move ii_plus_on_u(int sign) {
    Move m; m.type = MoveType::IIPlus; m.on_u = true; m.sign = sign; return m;
  }

  Move pinned(CrossingId a, CrossingId b = 0) const {
    Move m = *this; m.pin = {a, b}; m.has_pin = true; return m;
  }

  // identity ignores pins
  auto key() const {
    return std::make_tuple(static_cast<int>(type), x[0], x[1], x[2], eps, phi,
                           on_u, sign, winding, order);
  }
  friend bool operator==(const Move& a, const Move& b) { return a.key() == b.key(); }
  friend bool operator!=(const Move& a, const Move& b) { return !(a == b); }
  friend bool operator<(const Move& a, const Move& b) { return a.key() < b.key(); }
};

inline int weight(const Move& m) {
  switch (m.type) {
    case MoveType::IIMinus: return 0;
    case MoveType::IMinus: return 1;
    case MoveType::III: return 2;
    case MoveType::IPlus: return 3;
    case MoveType::IIPlus: return 4;
  }
  return 0;
}

inline int crossing_delta(MoveType t) {
  switch (t) {
    case MoveType::IMinus: return -1;
    case MoveType::IIMinus: return -2;
    case MoveType::III: return 0;
    case MoveType::IPlus: return +1;
    case MoveType::IIPlus: return +2;
  }
  return 0;
}

enum class Infeasible {
  None,            // feasible
  AbsentReference, // move mentions a crossing/edge not in the diagram
  Geometric        // referenced objects exist but the local pattern fails
};

namespace detail {

// Monogon face at crossing x: directed loop edge (x,x,a,a+1).  Returns the
// leaving ports of all such monogons.
inline std::vector<Port> monogon_ports(const Diagram& d, CrossingId x) {
  std::vector<Port> out;
  if (!d.has_crossing(x)) return out;
  for (int a = 1; a <= 4; ++a)
    if (d.adj.at(x)[a - 1] == Port{x, slot_next(a)}) out.push_back(Port{x, a});
  return out;
}

// Bigon face whose two directed edges run between x and y with the
// over/over + under/under pattern.  Returns the leaving port at x.
inline std::optional<Port> bigon_port(const Diagram& d, CrossingId x, CrossingId y) {
  if (!d.has_crossing(x) || !d.has_crossing(y)) return std::nullopt;
  for (int a = 1; a <= 4; ++a) {
    Port p{x, a};
    Port q = d.other_end(p);
    if (q.v != y) continue;
    Port p2 = d.face_next(p);          // second boundary edge, leaves y
    if (p2.v != y) continue;
    Port q2 = d.other_end(p2);
    if (q2.v != x) continue;
    if (d.face_next(p2) != p) continue;  // face has exactly these two edges
    bool e1_over = slot_is_over(a) && slot_is_over(q.slot);
    bool e1_under = !slot_is_over(a) && !slot_is_over(q.slot);
    bool e2_over = slot_is_over(p2.slot) && slot_is_over(q2.slot);
    bool e2_under = !slot_is_over(p2.slot) && !slot_is_over(q2.slot);
    if ((e1_over && e2_under) || (e1_under && e2_over)) return p;
  }
  return std::nullopt;
}

// Triangle face visiting exactly the crossings {x,y,z} with one over/over,
// one mixed and one under/under edge.  Returns the leaving ports of the
// face cycle.
inline std::optional<std::array<Port, 3>> triangle_ports(const Diagram& d,
                                                         CrossingId x, CrossingId y,
                                                         CrossingId z) {
  std::set<CrossingId> want{x, y, z};
  if (want.size() != 3) return std::nullopt;
  for (CrossingId v : want)
    if (!d.has_crossing(v)) return std::nullopt;
  for (int a = 1; a <= 4; ++a) {
    Port p1{x, a};
    Port p2 = d.face_next(p1);
    Port p3 = d.face_next(p2);
    if (d.face_next(p3) != p1) continue;
    std::set<CrossingId> got{p1.v, p2.v, p3.v};
    if (got != want) continue;
    // classify the three edges by entry parities at both endpoints
    int over = 0, under = 0, mixed = 0;
    std::array<Port, 3> ps{p1, p2, p3};
    for (const Port& p : ps) {
      Port q = d.other_end(p);
      bool o1 = slot_is_over(p.slot), o2 = slot_is_over(q.slot);
      if (o1 && o2) ++over;
      else if (!o1 && !o2) ++under;
      else ++mixed;
    }
    if (over == 1 && under == 1 && mixed == 1) return ps;
  }
  return std::nullopt;
}

}  // namespace detail

inline Infeasible feasibility(const Diagram& d, const Move& m) {
  switch (m.type) {
    case MoveType::IMinus: {
      if (!d.has_crossing(m.x[0])) return Infeasible::AbsentReference;
      for (Port p : detail::monogon_ports(d, m.x[0]))
        if (!d.is_outer_face_port(p)) return Infeasible::None;
      return Infeasible::Geometric;
    }
    case MoveType::IIMinus: {
      if (m.x[0] == m.x[1]) return Infeasible::Geometric;
      if (!d.has_crossing(m.x[0]) || !d.has_crossing(m.x[1]))
        return Infeasible::AbsentReference;
      auto p = detail::bigon_port(d, m.x[0], m.x[1]);
      if (p && !d.is_outer_face_port(*p)) return Infeasible::None;
      return Infeasible::Geometric;
    }
    case MoveType::III: {
      if (m.x[0] == m.x[1] || m.x[1] == m.x[2]) return Infeasible::Geometric;
      for (int i = 0; i < 3; ++i)
        if (!d.has_crossing(m.x[i])) return Infeasible::AbsentReference;
      auto t = detail::triangle_ports(d, m.x[0], m.x[1], m.x[2]);
      if (t && !d.is_outer_face_port((*t)[0])) return Infeasible::None;
      return Infeasible::Geometric;
    }
    case MoveType::IPlus: {
      if (d.is_unknot_diagram_U()) return m.on_u ? Infeasible::None : Infeasible::AbsentReference;
      if (m.on_u) return Infeasible::AbsentReference;
      if (!d.has_crossing(m.eps.v) || m.eps.slot < 1 || m.eps.slot > 4)
        return Infeasible::AbsentReference;
      return Infeasible::None;
    }
    case MoveType::IIPlus: {
      if (d.is_unknot_diagram_U()) return m.on_u ? Infeasible::None : Infeasible::AbsentReference;
      if (m.on_u) return Infeasible::AbsentReference;
      if (!d.has_crossing(m.eps.v) || !d.has_crossing(m.phi.v))
        return Infeasible::AbsentReference;
      if (m.eps.slot < 1 || m.eps.slot > 4 || m.phi.slot < 1 || m.phi.slot > 4)
        return Infeasible::AbsentReference;
      if (!d.same_face(m.eps, m.phi)) return Infeasible::Geometric;
      return Infeasible::None;
    }
  }
  return Infeasible::Geometric;
}

inline bool is_feasible(const Diagram& d, const Move& m) {
  return feasibility(d, m) == Infeasible::None;
}

// Normalizes the irrelevant components of a II+ move against a diagram:
// order collapses to 1 when eps != phi, winding to + when the shared face
// is bounded.  Other move types are already canonical.
inline Move normalized(const Diagram& d, Move m) {
  if (m.type == MoveType::IIPlus && !m.on_u) {
    if (m.eps != m.phi) m.order = 1;
    if (!d.is_outer_face_port(m.eps)) m.winding = +1;
  }
  if (m.type == MoveType::IIPlus && m.on_u) m.order = 1;
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration

// Calls `emit` for every feasible move, deterministically ordered by type
// (I-, II-, III, I+, II+) and then by the move's canonical fields.  Streaming
// so that O(n^2) moves on large diagrams never have to be materialized.
inline void enumerate_moves(const Diagram& d, const std::function<void(const Move&)>& emit) {
  if (d.is_unknot_diagram_U()) {
    emit(Move::i_plus_on_u(+1));
    emit(Move::i_plus_on_u(-1));
    emit(Move::ii_plus_on_u(+1));
    emit(Move::ii_plus_on_u(-1));
    return;
  }
  auto faces = compute_faces(d);
  std::vector<bool> is_outer(faces.size(), false);
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (const Port& p : faces[i].boundary)
      if (p == *d.outer) is_outer[i] = true;

  std::set<Move> removals;  // dedups the double-loop I- case
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (is_outer[i]) continue;
    const auto& b = faces[i].boundary;
    if (b.size() == 1) {
      removals.insert(Move::i_minus(b[0].v));
    } else if (b.size() == 2) {
      CrossingId x = b[0].v, y = b[1].v;
      if (x == y) continue;
      Move m = Move::ii_minus(x, y);
      if (is_feasible(d, m)) removals.insert(m);
    } else if (b.size() == 3) {
      CrossingId x = b[0].v, y = b[1].v, z = b[2].v;
      if (x == y || y == z || x == z) continue;
      Move m = Move::iii(x, y, z);
      if (is_feasible(d, m)) removals.insert(m);
    }
  }
  for (const Move& m : removals) emit(m);

  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s)
      for (int sign : {+1, -1}) emit(Move::i_plus(Port{v, s}, sign));

  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& b = faces[i].boundary;
    for (const Port& e : b)
      for (const Port& f : b) {
        int windings = is_outer[i] ? 2 : 1;
        for (int wi = 0; wi < windings; ++wi) {
          int w = wi == 0 ? +1 : -1;
          if (e == f) {
            emit(Move::ii_plus(e, f, w, 1));
            emit(Move::ii_plus(e, f, w, 2));
          } else {
            emit(Move::ii_plus(e, f, w, 1));
          }
        }
      }
  }
}

inline std::vector<Move> enumerate_moves(const Diagram& d) {
  std::vector<Move> out;
  enumerate_moves(d, [&out](const Move& m) { out.push_back(m); });
  return out;
}

inline std::size_t count_moves(const Diagram& d) {
  std::size_t n = 0;
  enumerate_moves(d, [&n](const Move&) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------
// Application

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Shared surgery for I- and II-: delete the crossings in X and re-splice the
// curve between surviving passages of the knot walk.
inline Diagram remove_crossings(const Diagram& d, const std::set<CrossingId>& xs) {
  auto walk = knot_walk(d);
  if (!walk) throw MoveError("removal surgery on a non-knot rotation system");
  // stations: (crossing, in-slot) at surviving crossings, in walk order
  std::vector<Port> stations;
  for (const Port& p : *walk) {
    Port q = d.other_end(p);
    if (!xs.count(q.v)) stations.push_back(q);
  }
  Diagram nd;
  if (stations.empty()) return nd;  // all crossings consumed: U
  for (const auto& [v, slots] : d.adj)
    if (!xs.count(v)) nd.adj[v];  // create entries
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const Port& a = stations[i];
    const Port& b = stations[(i + 1) % stations.size()];
    nd.link(a.v, slot_opposite(a.slot), b.v, b.slot);
  }

  // outer marker: first directed edge of the old outer cycle leaving a
  // surviving crossing keeps the unbounded region on its right
  Port p = *d.outer;
  Port start = p;
  do {
    if (!xs.count(p.v)) { nd.outer = p; return nd; }
    p = d.face_next(p);
  } while (p != start);
  // outer face touched removed crossings only: forced tiny diagrams only,
  // every such case collapses to U
  if (!nd.adj.empty())
    throw MoveError("outer anchor lost in removal surgery");
  return nd;
}

inline CrossingId alloc_label(const Diagram& d, const Move& m, int which) {
  if (m.has_pin && m.pin[which] != 0) return m.pin[which];
  CrossingId base = d.fresh_label();
  return base + static_cast<CrossingId>(which);
}

// I+ kink on the right-hand side of eps, derived from the rectilinear
// prototype: first passage enters slot a, loop [c,c,opp(a),a+3], exit a+1.
inline Diagram apply_i_plus(const Diagram& d, const Move& m) {
  Diagram nd = d;
  CrossingId c = alloc_label(d, m, 0);
  int a = m.sign > 0 ? 3 : 2;
  int loop1 = slot_opposite(a);
  int loop2 = slot_next(slot_next(slot_next(a)));  // a+3
  int out = slot_next(a);
  if (d.is_unknot_diagram_U()) {
    nd.adj[c];
    nd.link(c, loop1, c, loop2);
    nd.link(c, out, c, a);  // rest of the circle
    nd.outer = Port{c, out};
    return nd;
  }
  Port from = m.eps;
  Port to = d.other_end(from);
  nd.adj[c];
  nd.link(from.v, from.slot, c, a);
  nd.link(c, loop1, c, loop2);
  nd.link(c, out, to.v, to.slot);
  // all old ports persist and keep their right-hand regions; marker stays
  return nd;
}

inline Diagram apply_ii_plus(const Diagram& d, const Move& mv) {
  Move m = normalized(d, mv);
  Diagram nd;
  CrossingId cA = alloc_label(d, m, 0);
  CrossingId cB = alloc_label(d, m, 1);
  if (cA == cB) cB = cA + 1;

  if (d.is_unknot_diagram_U()) {
    // finger pulled across the circle; sign +: through the unbounded side,
    // sign -: through the bounded disk.  Tables from the plotted prototypes.
    nd.adj[cA]; nd.adj[cB];
    nd.link(cA, 3, cB, 3);  // finger tip
    nd.link(cB, 1, cB, 2);  // base loop
    nd.link(cB, 4, cA, 2);  // middle piece of the poked strand
    nd.link(cA, 4, cA, 1);  // rest of the circle
    nd.outer = m.sign > 0 ? Port{cB, 1} : Port{cA, 4};
    return nd;
  }

  nd = d;
  nd.adj[cA]; nd.adj[cB];
  Port old_outer = *d.outer;

  if (m.eps != m.phi) {
    Port v1 = m.eps;                 // eps: (v1,n1) -> (v2,n2)
    Port v2e = d.other_end(m.eps);
    Port w1 = m.phi;                 // phi: (w1,m1) -> (w2,m2)
    Port w2e = d.other_end(m.phi);
    // finger from eps pokes over phi; cA is created next to v1's side
    nd.link(v1.v, v1.slot, cA, 1);
    nd.link(cA, 3, cB, 3);                 // tip
    nd.link(cB, 1, v2e.v, v2e.slot);
    nd.link(w1.v, w1.slot, cA, 2);
    nd.link(cA, 4, cB, 2);                 // phi middle
    nd.link(cB, 4, w2e.v, w2e.slot);
  } else {
    Port v1 = m.eps;
    Port v2e = d.other_end(m.eps);
    if (m.order == 1) {
      // base precedes the poke along eps
      nd.link(v1.v, v1.slot, cA, 1);
      nd.link(cA, 3, cB, 3);   // tip
      nd.link(cB, 1, cB, 2);   // base loop
      nd.link(cB, 4, cA, 2);   // middle
      nd.link(cA, 4, v2e.v, v2e.slot);
    } else {
      // poke precedes the base
      nd.link(v1.v, v1.slot, cA, 2);
      nd.link(cA, 4, cB, 2);   // middle
      nd.link(cB, 4, cA, 1);   // base loop
      nd.link(cA, 3, cB, 3);   // tip
      nd.link(cB, 1, v2e.v, v2e.slot);
    }
  }

  // outer-face bookkeeping: if the shared face was the outer one, the finger
  // splits it in two and the winding selects which piece is unbounded.
  if (d.is_outer_face_port(m.eps)) {
    // candidate pieces are the new faces containing old outer-cycle ports
    Port first_face;
    bool have_first = false;
    Port chosen{};
    bool done = false;
    Port p = old_outer;
    Port start = p;
    do {
      if (!have_first) {
        first_face = p;
        have_first = true;
        if (m.winding > 0) { chosen = p; done = true; }
      } else if (!nd.same_face(p, first_face)) {
        if (m.winding < 0) { chosen = p; done = true; }
      }
      if (done) break;
      p = d.face_next(p);
    } while (p != start);
    if (!done) chosen = first_face;  // split produced one piece with old ports
    nd.outer = chosen;
  } else {
    nd.outer = old_outer;
  }
  return nd;
}

inline Diagram apply_iii(const Diagram& d, const Move& m) {
  auto tri = detail::triangle_ports(d, m.x[0], m.x[1], m.x[2]);
  if (!tri) throw MoveError("III surgery without a feasible triangle");
  // boundary cycle: e_i leaves (c_i, s_i) and arrives (c_{i+1}, t_{i+1})
  std::array<Port, 3> leave = *tri;
  std::array<Port, 3> arrive;
  for (int i = 0; i < 3; ++i) arrive[i] = d.other_end(leave[i]);

  // ports around the triangle: inner = on the face, outer = opposite
  struct Rewire { Port from, to; };
  std::vector<Rewire> rho;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    // outer port beyond leave[i] re-attaches at the inner arrive port;
    // outer port beyond arrive[i] re-attaches at the inner leave port
    rho.push_back({Port{leave[i].v, slot_opposite(leave[i].slot)}, arrive[i]});
    rho.push_back({Port{arrive[i].v, slot_opposite(arrive[i].slot)}, leave[i]});
    (void)j;
  }
  auto rewrite = [&rho](Port p) {
    for (const auto& r : rho)
      if (r.from == p) return r.to;
    return p;
  };

  Diagram nd = d;
  // re-route the six outer edges
  for (const auto& r : rho) {
    Port partner = d.other_end(r.from);
    nd.link(r.to.v, r.to.slot, rewrite(partner).v, rewrite(partner).slot);
  }
  // new triangle edges occupy the old outer ports
  for (int i = 0; i < 3; ++i) {
    nd.link(leave[i].v, slot_opposite(leave[i].slot),
            arrive[i].v, slot_opposite(arrive[i].slot));
  }

  // outer marker: prefer an old outer-cycle port away from the triangle
  std::set<CrossingId> tric{m.x[0], m.x[1], m.x[2]};
  Port p = *d.outer;
  Port start = p;
  do {
    if (!tric.count(p.v)) { nd.outer = p; return nd; }
    p = d.face_next(p);
  } while (p != start);
  // outer touches only the triangle: map the marker like the edges moved
  Port mk = *d.outer;
  Port image = mk;
  bool mapped = false;
  for (int i = 0; i < 3; ++i) {
    if (mk == leave[i]) { image = Port{leave[i].v, slot_opposite(leave[i].slot)}; mapped = true; }
    else if (mk == Port{arrive[i].v, slot_prev(arrive[i].slot)}) {
      // reverse of a triangle edge keeps its strand; flip to the new side
      image = Port{arrive[i].v, slot_opposite(Port{arrive[i].v, slot_prev(arrive[i].slot)}.slot)};
      mapped = true;
    }
  }
  if (!mapped) image = rewrite(mk);
  nd.outer = image;
  return nd;
}

}  // namespace detail

// Returns D(m).  Throws MoveError when m is infeasible in d.
inline Diagram apply_move(const Diagram& d, const Move& mv) {
  Move m = normalized(d, mv);
  m.pin = mv.pin;
  m.has_pin = mv.has_pin;
  Infeasible why = feasibility(d, m);
  if (why != Infeasible::None) {
    std::ostringstream os;
    os << "infeasible " << move_type_name(m.type) << " move ("
       << (why == Infeasible::AbsentReference ? "absent reference" : "pattern mismatch")
       << ")";
    throw MoveError(os.str());
  }
  switch (m.type) {
    case MoveType::IMinus:
      return detail::remove_crossings(d, {m.x[0]});
    case MoveType::IIMinus:
      return detail::remove_crossings(d, {m.x[0], m.x[1]});
    case MoveType::III:
      return detail::apply_iii(d, m);
    case MoveType::IPlus:
      return detail::apply_i_plus(d, m);
    case MoveType::IIPlus:
      return detail::apply_ii_plus(d, m);
  }
  throw MoveError("unknown move type");
}

// Crossings created by an insertion move, in pin order.
inline std::array<CrossingId, 2> created_labels(const Diagram& d, const Move& m) {
  std::array<CrossingId, 2> out{0, 0};
  if (m.type == MoveType::IPlus) {
    out[0] = detail::alloc_label(d, m, 0);
  } else if (m.type == MoveType::IIPlus) {
    out[0] = detail::alloc_label(d, m, 0);
    out[1] = detail::alloc_label(d, m, 1);
    if (out[0] == out[1]) out[1] = out[0] + 1;
  }
  return out;
}

struct SequenceError : std::runtime_error {
  std::size_t index;
  SequenceError(std::size_t i, const std::string& what)
      : std::runtime_error(what), index(i) {}
};

// Left fold of apply_move; reports the index of the first infeasible step.
inline Diagram apply_sequence(const Diagram& d, const std::vector<Move>& ms) {
  Diagram cur = d;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    try {
      cur = apply_move(cur, ms[i]);
    } catch (const MoveError& e) {
      std::ostringstream os;
      os << "step " << i << ": " << e.what();
      throw SequenceError(i, os.str());
    }
  }
  return cur;
}

// Defect 2*len - n of an untangling; checks Lemma 1 (defect equals the sum
// of the move weights) as a runtime self-test.
inline int sequence_defect(const Diagram& d, const std::vector<Move>& ms) {
  Diagram end = apply_sequence(d, ms);
  if (!end.is_unknot_diagram_U())
    throw MoveError("sequence does not untangle the diagram");
  int def = 2 * static_cast<int>(ms.size()) - static_cast<int>(d.crossing_count());
  int wsum = 0;
  for (const Move& m : ms) wsum += weight(m);
  if (def != wsum)
    throw std::logic_error("defect identity 2l - n = sum of weights violated");
  return def;
}

}  // namespace knotcalc

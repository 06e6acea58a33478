#pragma once

// Knot diagrams as rotation systems: every crossing carries four strand
// slots numbered 1..4 clockwise, slots 1 and 3 belong to the overpass
// strand, 2 and 4 to the underpass.  An edge [v1,v2,n1,n2] joins slot n1
// of v1 to slot n2 of v2; the unique crossing-free diagram U is the empty
// rotation system.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace knotcalc {

using CrossingId = std::uint32_t;

inline int slot_next(int s) { return s == 4 ? 1 : s + 1; }      // clockwise
inline int slot_prev(int s) { return s == 1 ? 4 : s - 1; }
inline int slot_opposite(int s) { return s <= 2 ? s + 2 : s - 2; }
inline bool slot_is_over(int s) { return s == 1 || s == 3; }

// One endpoint of an edge: crossing plus the slot used there.  A Port also
// names a directed edge (the one leaving `v` via `slot`).
struct Port {
  CrossingId v = 0;
  int slot = 0;

  friend bool operator==(const Port& a, const Port& b) {
    return a.v == b.v && a.slot == b.slot;
  }
  friend bool operator!=(const Port& a, const Port& b) { return !(a == b); }
  friend bool operator<(const Port& a, const Port& b) {
    return a.v != b.v ? a.v < b.v : a.slot < b.slot;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Port& p) {
  return os << '(' << p.v << ',' << p.slot << ')';
}

// Undirected edge in the paper's 4-tuple form, normalized.
struct Edge {
  CrossingId v1, v2;
  int n1, n2;

  Edge(CrossingId a, int sa, CrossingId b, int sb) {
    if (Port{a, sa} < Port{b, sb} || (Port{a, sa} == Port{b, sb})) {
      v1 = a; n1 = sa; v2 = b; n2 = sb;
    } else {
      v1 = b; n1 = sb; v2 = a; n2 = sa;
    }
  }
  friend bool operator==(const Edge& x, const Edge& y) {
    return x.v1 == y.v1 && x.v2 == y.v2 && x.n1 == y.n1 && x.n2 == y.n2;
  }
  friend bool operator<(const Edge& x, const Edge& y) {
    if (x.v1 != y.v1) return x.v1 < y.v1;
    if (x.n1 != y.n1) return x.n1 < y.n1;
    if (x.v2 != y.v2) return x.v2 < y.v2;
    return x.n2 < y.n2;
  }
};

// A face is the cyclic list of directed edges (leaving ports) with the face
// on their right-hand side, rotated so the minimal port comes first.
struct Face {
  std::vector<Port> boundary;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::ostringstream os;
    if (ok()) { os << "ok\n"; return os.str(); }
    for (const auto& v : violations) os << v.code << ": " << v.message << '\n';
    return os.str();
  }
};

class Diagram {
 public:
  // slot pairing: adj(v)[s-1] = the port at the far end of the edge using
  // slot s of v.  Empty map encodes U.
  std::map<CrossingId, std::array<Port, 4>> adj;
  std::optional<Port> outer;  // directed edge whose face class is unbounded

  bool is_unknot_diagram_U() const { return adj.empty(); }
  std::size_t crossing_count() const { return adj.size(); }

  bool has_crossing(CrossingId v) const { return adj.count(v) != 0; }

  Port other_end(const Port& p) const { return adj.at(p.v)[p.slot - 1]; }

  // Successor of a directed edge along its face: enter w via slot t, the
  // face continues along the directed edge leaving w via slot t-1 (mod 4).
  Port face_next(const Port& p) const {
    Port q = other_end(p);
    return Port{q.v, slot_prev(q.slot)};
  }

  CrossingId fresh_label() const {
    return adj.empty() ? 0 : adj.rbegin()->first + 1;
  }

  void link(CrossingId a, int sa, CrossingId b, int sb) {
    adj[a][sa - 1] = Port{b, sb};
    adj[b][sb - 1] = Port{a, sa};
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    for (const auto& [v, slots] : adj)
      for (int s = 1; s <= 4; ++s) {
        Port here{v, s};
        Port there = slots[s - 1];
        if (here < there || here == there) es.emplace_back(v, s, there.v, there.slot);
      }
    std::sort(es.begin(), es.end());
    return es;
  }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    if (a.adj != b.adj) return false;
    if (a.outer.has_value() != b.outer.has_value()) return false;
    if (!a.outer) return true;
    // outer markers may name different directed edges of the same face
    return a.same_face(*a.outer, *b.outer);
  }

  // True iff the two directed edges belong to the same face class.
  bool same_face(Port a, Port b) const {
    Port p = a;
    do {
      if (p == b) return true;
      p = face_next(p);
    } while (p != a);
    return false;
  }

  bool is_outer_face_port(Port p) const { return outer && same_face(p, *outer); }
};

// Face classes of the successor rule.  Requires slot coverage (every port
// paired); U yields the single implicit face with empty boundary.
inline std::vector<Face> compute_faces(const Diagram& d) {
  std::vector<Face> faces;
  if (d.is_unknot_diagram_U()) {
    faces.push_back(Face{});
    return faces;
  }
  std::map<Port, bool> seen;
  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s) seen[Port{v, s}] = false;
  for (auto& [start, used] : seen) {
    if (used) continue;
    Face f;
    Port p = start;
    do {
      f.boundary.push_back(p);
      seen[p] = true;
      p = d.face_next(p);
    } while (p != start);
    faces.push_back(std::move(f));
  }
  return faces;
}

// Walks the underlying closed curve: leave (v,s), arrive (w,t), continue
// through w via the opposite slot t+2.  Returns the cyclic port sequence,
// length 2n for a knot.  Returns nullopt when the walk closes early, i.e.
// the rotation system describes a link with several components.
inline std::optional<std::vector<Port>> knot_walk(const Diagram& d) {
  std::vector<Port> cycle;
  if (d.is_unknot_diagram_U()) return cycle;
  Port start{d.adj.begin()->first, 1};
  Port p = start;
  std::size_t limit = 2 * d.crossing_count();
  do {
    cycle.push_back(p);
    Port q = d.other_end(p);
    p = Port{q.v, slot_opposite(q.slot)};
    if (cycle.size() > limit) return std::nullopt;
  } while (p != start);
  if (cycle.size() != limit) return std::nullopt;
  return cycle;
}

inline ValidationReport validate(const Diagram& d) {
  ValidationReport r;
  auto fail = [&r](const char* code, std::string msg) {
    r.violations.push_back(Violation{code, std::move(msg)});
  };

  if (d.is_unknot_diagram_U()) {
    if (d.outer) fail("u-outer", "U must not carry an outer-face marker");
    return r;
  }

  // slot coverage: the pairing must be an involution over all 4n ports
  bool pairing_ok = true;
  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s) {
      Port q = slots[s - 1];
      if (q.slot < 1 || q.slot > 4 || !d.has_crossing(q.v)) {
        std::ostringstream os;
        os << "slot " << Port{v, s} << " points at invalid port " << q;
        fail("slot-coverage", os.str());
        pairing_ok = false;
        continue;
      }
      if (Port{v, s} == q) {
        std::ostringstream os;
        os << "slot " << Port{v, s} << " paired with itself";
        fail("slot-coverage", os.str());
        pairing_ok = false;
        continue;
      }
      Port back = d.adj.at(q.v)[q.slot - 1];
      if (back != Port{v, s}) {
        std::ostringstream os;
        os << "pairing not symmetric at " << Port{v, s};
        fail("slot-coverage", os.str());
        pairing_ok = false;
      }
    }
  if (!pairing_ok) return r;  // nothing below is meaningful

  std::size_t n = d.crossing_count();
  // |edges| = 2n is implied by the involution; keep the count as a check
  if (d.edges().size() != 2 * n) {
    std::ostringstream os;
    os << "expected " << 2 * n << " edges, found " << d.edges().size();
    fail("edge-count", os.str());
  }

  auto walk = knot_walk(d);
  if (!walk) {
    fail("knot-walk", "underlying curve is not a single closed cycle (link, not knot)");
  }

  auto faces = compute_faces(d);
  if (faces.size() != n + 2) {
    std::ostringstream os;
    os << "expected " << n + 2 << " faces (sphere Euler formula), found " << faces.size();
    fail("euler", os.str());
  }

  if (!d.outer) {
    fail("outer-missing", "diagram with crossings needs an outer-face marker");
  } else if (!d.has_crossing(d.outer->v) || d.outer->slot < 1 || d.outer->slot > 4) {
    fail("outer-invalid", "outer marker names a port outside the diagram");
  }
  return r;
}

}  // namespace knotcalc

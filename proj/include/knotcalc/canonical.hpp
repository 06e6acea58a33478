#pragma once

// Canonical labeling of diagrams, used for isomorphism tests and as memo
// keys in the solvers.  A relabeling may permute crossing names and rotate
// each crossing's slots by 2 (which preserves the clockwise order and the
// over/under parity); the outer-face choice is part of the identity.

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "knotcalc/diagram.hpp"

namespace knotcalc {

using CanonicalKey = std::string;

namespace detail {

struct Labeling {
  std::map<CrossingId, int> label;       // crossing -> 0..n-1
  std::map<CrossingId, int> align;       // slot rotation, 0 or 2
  std::vector<CrossingId> order;         // inverse of label
};

inline int canon_slot(int true_slot, int align) {
  int c = true_slot - align;
  if (c <= 0) c += 4;
  return c;
}
inline int true_slot(int canon, int align) {
  int t = canon + align;
  if (t > 4) t -= 4;
  return t;
}

// Deterministic traversal seeded at a directed edge; aligns every crossing
// so that its first entry slot becomes 1 (overpass) or 2 (underpass).
inline Labeling relabel_from(const Diagram& d, Port seed) {
  Labeling lab;
  auto enter = [&lab](CrossingId v, int entry_slot) {
    lab.label[v] = static_cast<int>(lab.order.size());
    lab.align[v] = slot_is_over(entry_slot) ? entry_slot - 1 : entry_slot - 2;
    lab.order.push_back(v);
  };
  enter(seed.v, seed.slot);
  for (std::size_t i = 0; i < lab.order.size(); ++i) {
    CrossingId v = lab.order[i];
    int al = lab.align.at(v);
    for (int c = 1; c <= 4; ++c) {
      Port q = d.adj.at(v)[true_slot(c, al) - 1];
      if (!lab.label.count(q.v)) enter(q.v, q.slot);
    }
  }
  return lab;
}

inline std::vector<std::uint32_t> encode(const Diagram& d, const Labeling& lab) {
  std::vector<std::uint32_t> enc;
  enc.reserve(8 * lab.order.size() + 2);
  for (CrossingId v : lab.order) {
    int al = lab.align.at(v);
    for (int c = 1; c <= 4; ++c) {
      Port q = d.adj.at(v)[true_slot(c, al) - 1];
      enc.push_back(static_cast<std::uint32_t>(lab.label.at(q.v)));
      enc.push_back(static_cast<std::uint32_t>(canon_slot(q.slot, lab.align.at(q.v))));
    }
  }
  // outer face: minimal relabeled directed edge of the marked face class
  std::uint32_t best_v = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t best_s = 0;
  Port p = *d.outer;
  Port start = p;
  do {
    std::uint32_t lv = static_cast<std::uint32_t>(lab.label.at(p.v));
    std::uint32_t ls = static_cast<std::uint32_t>(canon_slot(p.slot, lab.align.at(p.v)));
    if (lv < best_v || (lv == best_v && ls < best_s)) { best_v = lv; best_s = ls; }
    p = d.face_next(p);
  } while (p != start);
  enc.push_back(best_v);
  enc.push_back(best_s);
  return enc;
}

inline std::string pack(const std::vector<std::uint32_t>& enc) {
  std::string s;
  s.reserve(enc.size() * 4);
  for (std::uint32_t x : enc) {
    s.push_back(static_cast<char>(x >> 24));
    s.push_back(static_cast<char>(x >> 16));
    s.push_back(static_cast<char>(x >> 8));
    s.push_back(static_cast<char>(x));
  }
  return s;
}

}  // namespace detail

// Lexicographically minimal encoding over all 4n seed directed edges.
inline CanonicalKey canonical_form(const Diagram& d) {
  if (d.is_unknot_diagram_U()) return "U";
  std::vector<std::uint32_t> best;
  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s) {
      auto lab = detail::relabel_from(d, Port{v, s});
      auto enc = detail::encode(d, lab);
      if (best.empty() || enc < best) best = std::move(enc);
    }
  return detail::pack(best);
}

// Canonical key of the pair (diagram, crossing subset).  Two pairs agree
// iff some isomorphism maps one subset onto the other.
inline CanonicalKey canonical_form_with_set(const Diagram& d,
                                            const std::set<CrossingId>& subset) {
  if (d.is_unknot_diagram_U()) return "U";
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> best_img;
  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s) {
      auto lab = detail::relabel_from(d, Port{v, s});
      auto enc = detail::encode(d, lab);
      if (!best.empty() && enc > best) continue;
      std::vector<std::uint32_t> img;
      for (CrossingId x : subset)
        img.push_back(static_cast<std::uint32_t>(lab.label.at(x)));
      std::sort(img.begin(), img.end());
      if (best.empty() || enc < best || img < best_img) {
        best = std::move(enc);
        best_img = std::move(img);
      }
    }
  std::string key = detail::pack(best);
  key.push_back('|');
  key += detail::pack(best_img);
  return key;
}

inline bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.crossing_count() != b.crossing_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace knotcalc

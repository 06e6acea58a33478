#pragma once

// Text formats.
//
//   .knot   line 1  `diagram v1`
//           line 2  `crossings <n>`
//           2n lines `edge <v1> <s1> <v2> <s2>`   (n >= 1, v in 0..n-1)
//           1 line   `outer <v> <s>`              (n >= 1)
//
//   .moves  one move per line:
//           `I- <x>` | `II- <x> <y>` | `III <x> <y> <z>`
//           `I+ <v> <s> <+|->` | `II+ <v1> <s1> <v2> <s2> <+|-> <1|2>`
//           on U: `I+ U <+|->` and `II+ U U <+|-> 1`
//
// '#' starts a comment; tokens are whitespace separated.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcalc/diagram.hpp"
#include "knotcalc/moves.hpp"

namespace knotcalc {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

namespace detail {

inline std::vector<std::vector<std::string>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    lines.push_back(std::move(toks));  // keep empties so line numbers match
  }
  return lines;
}

inline long parse_int(const std::string& s, int line, long lo, long hi, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (...) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + s + "'");
  }
  if (pos != s.size() || v < lo || v > hi)
    throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

inline Diagram parse_diagram(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  std::size_t li = 0;
  auto next_line = [&]() -> std::pair<int, const std::vector<std::string>*> {
    while (li < lines.size() && lines[li].empty()) ++li;
    if (li >= lines.size()) throw ParseError(static_cast<int>(lines.size()), "unexpected end of file");
    ++li;
    return {static_cast<int>(li), &lines[li - 1]};
  };

  auto [l1, header] = next_line();
  if (header->size() != 2 || (*header)[0] != "diagram" || (*header)[1] != "v1")
    throw ParseError(l1, "expected header 'diagram v1'");
  auto [l2, cl] = next_line();
  if (cl->size() != 2 || (*cl)[0] != "crossings")
    throw ParseError(l2, "expected 'crossings <n>'");
  long n = detail::parse_int((*cl)[1], l2, 0, 1000000, "crossing count");

  Diagram d;
  if (n == 0) {
    while (li < lines.size()) {
      if (!lines[li].empty()) throw ParseError(static_cast<int>(li + 1), "U carries no further lines");
      ++li;
    }
    return d;
  }
  for (long v = 0; v < n; ++v) d.adj[static_cast<CrossingId>(v)] = {};

  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n), std::vector<bool>(4, false));
  for (long e = 0; e < 2 * n; ++e) {
    auto [ln, toks] = next_line();
    if (toks->size() != 5 || (*toks)[0] != "edge")
      throw ParseError(ln, "expected 'edge <v1> <s1> <v2> <s2>'");
    long v1 = detail::parse_int((*toks)[1], ln, 0, n - 1, "crossing id");
    long s1 = detail::parse_int((*toks)[2], ln, 1, 4, "slot");
    long v2 = detail::parse_int((*toks)[3], ln, 0, n - 1, "crossing id");
    long s2 = detail::parse_int((*toks)[4], ln, 1, 4, "slot");
    if (v1 == v2 && s1 == s2) throw ParseError(ln, "edge joins a slot to itself");
    if (seen[v1][s1 - 1] || seen[v2][s2 - 1])
      throw ParseError(ln, "slot used by more than one edge");
    seen[v1][s1 - 1] = true;
    seen[v2][s2 - 1] = true;
    d.link(static_cast<CrossingId>(v1), static_cast<int>(s1),
           static_cast<CrossingId>(v2), static_cast<int>(s2));
  }
  auto [lo, ot] = next_line();
  if (ot->size() != 3 || (*ot)[0] != "outer")
    throw ParseError(lo, "expected 'outer <v> <s>'");
  long ov = detail::parse_int((*ot)[1], lo, 0, n - 1, "crossing id");
  long os = detail::parse_int((*ot)[2], lo, 1, 4, "slot");
  d.outer = Port{static_cast<CrossingId>(ov), static_cast<int>(os)};
  while (li < lines.size()) {
    if (!lines[li].empty()) throw ParseError(static_cast<int>(li + 1), "trailing content");
    ++li;
  }
  return d;
}

// Serializes with crossings compacted to 0..n-1 (order preserving) and
// edges sorted, so equal diagrams (up to that relabeling) print identically.
inline std::string serialize_diagram(const Diagram& d) {
  std::ostringstream os;
  os << "diagram v1\n";
  os << "crossings " << d.crossing_count() << "\n";
  if (d.is_unknot_diagram_U()) return os.str();
  std::map<CrossingId, CrossingId> compact;
  for (const auto& [v, slots] : d.adj)
    compact[v] = static_cast<CrossingId>(compact.size());
  std::vector<Edge> es;
  for (const auto& [v, slots] : d.adj)
    for (int s = 1; s <= 4; ++s) {
      Port q = slots[s - 1];
      Edge e(compact.at(v), s, compact.at(q.v), q.slot);
      if (Port{e.v1, e.n1} == Port{compact.at(v), s}) es.push_back(e);
    }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  for (const Edge& e : es)
    os << "edge " << e.v1 << ' ' << e.n1 << ' ' << e.v2 << ' ' << e.n2 << "\n";
  // canonical outer representative: minimal compacted port of the class
  Port best{0, 0};
  bool have = false;
  Port p = *d.outer;
  Port start = p;
  do {
    Port c{compact.at(p.v), p.slot};
    if (!have || c < best) { best = c; have = true; }
    p = d.face_next(p);
  } while (p != start);
  os << "outer " << best.v << ' ' << best.slot << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// .moves

inline std::string serialize_move(const Move& m) {
  std::ostringstream os;
  switch (m.type) {
    case MoveType::IMinus:
      os << "I- " << m.x[0];
      break;
    case MoveType::IIMinus:
      os << "II- " << m.x[0] << ' ' << m.x[1];
      break;
    case MoveType::III:
      os << "III " << m.x[0] << ' ' << m.x[1] << ' ' << m.x[2];
      break;
    case MoveType::IPlus:
      if (m.on_u)
        os << "I+ U " << (m.sign > 0 ? '+' : '-');
      else
        os << "I+ " << m.eps.v << ' ' << m.eps.slot << ' ' << (m.sign > 0 ? '+' : '-');
      break;
    case MoveType::IIPlus:
      if (m.on_u)
        os << "II+ U U " << (m.sign > 0 ? '+' : '-') << " 1";
      else
        os << "II+ " << m.eps.v << ' ' << m.eps.slot << ' ' << m.phi.v << ' '
           << m.phi.slot << ' ' << (m.winding > 0 ? '+' : '-') << ' ' << m.order;
      break;
  }
  return os.str();
}

inline std::string serialize_moves(const std::vector<Move>& ms) {
  std::string out;
  for (const Move& m : ms) {
    out += serialize_move(m);
    out += '\n';
  }
  return out;
}

inline int parse_sign(const std::string& s, int line) {
  if (s == "+") return +1;
  if (s == "-") return -1;
  throw ParseError(line, "expected '+' or '-', got '" + s + "'");
}

inline std::vector<Move> parse_moves(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  std::vector<Move> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& t = lines[i];
    int ln = static_cast<int>(i + 1);
    if (t.empty()) continue;
    const std::string& w = t[0];
    auto want = [&](std::size_t k) {
      if (t.size() != k) throw ParseError(ln, "wrong token count for '" + w + "' move");
    };
    auto id = [&](const std::string& s) {
      return static_cast<CrossingId>(detail::parse_int(s, ln, 0, 0xffffffffL, "crossing id"));
    };
    auto slot = [&](const std::string& s) {
      return static_cast<int>(detail::parse_int(s, ln, 1, 4, "slot"));
    };
    if (w == "I-") {
      want(2);
      out.push_back(Move::i_minus(id(t[1])));
    } else if (w == "II-") {
      want(3);
      out.push_back(Move::ii_minus(id(t[1]), id(t[2])));
    } else if (w == "III") {
      want(4);
      out.push_back(Move::iii(id(t[1]), id(t[2]), id(t[3])));
    } else if (w == "I+") {
      if (t.size() == 3 && t[1] == "U") {
        out.push_back(Move::i_plus_on_u(parse_sign(t[2], ln)));
      } else {
        want(4);
        out.push_back(Move::i_plus(Port{id(t[1]), slot(t[2])}, parse_sign(t[3], ln)));
      }
    } else if (w == "II+") {
      if (t.size() == 5 && t[1] == "U" && t[2] == "U") {
        if (t[4] != "1") throw ParseError(ln, "II+ on U requires order 1");
        out.push_back(Move::ii_plus_on_u(parse_sign(t[3], ln)));
      } else {
        want(7);
        int ord = static_cast<int>(detail::parse_int(t[6], ln, 1, 2, "order"));
        out.push_back(Move::ii_plus(Port{id(t[1]), slot(t[2])}, Port{id(t[3]), slot(t[4])},
                                    parse_sign(t[5], ln), ord));
      }
    } else {
      throw ParseError(ln, "unknown move '" + w + "'");
    }
  }
  return out;
}

}  // namespace knotcalc

#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bowditch/fraction.hpp"
#include "bowditch/words.hpp"

namespace bowditch {

// Complementary regions of the Farey tree are identified with their slopes.
using Region = Slope;

// Unordered Farey-neighbor pair, stored sorted.
struct Edge {
  Region x, y;

  Edge(Region a, Region b) {
    if (!farey_neighbors(a, b)) throw std::invalid_argument("not Farey neighbors: " + to_string(a) + ", " + to_string(b));
    if (b < a) std::swap(a, b);
    x = a;
    y = b;
  }

  bool contains(const Region& r) const { return r == x || r == y; }
  Region other(const Region& r) const {
    if (r == x) return y;
    if (r == y) return x;
    throw std::invalid_argument("region not on edge");
  }

  friend bool operator==(const Edge& a, const Edge& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

// Triple of pairwise-neighboring regions, stored sorted.
struct Vertex {
  std::array<Region, 3> r;

  Vertex(Region a, Region b, Region c) {
    r = {a, b, c};
    std::sort(r.begin(), r.end());
    if (!farey_neighbors(r[0], r[1]) || !farey_neighbors(r[0], r[2]) || !farey_neighbors(r[1], r[2]))
      throw std::invalid_argument("not a Farey vertex");
  }

  bool contains(const Region& s) const { return s == r[0] || s == r[1] || s == r[2]; }

  friend bool operator==(const Vertex& a, const Vertex& b) { return a.r == b.r; }
  friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
  friend bool operator<(const Vertex& a, const Vertex& b) { return a.r < b.r; }
};

struct OrientedEdge {
  Edge edge;
  Vertex head;

  OrientedEdge(Edge e, Vertex h) : edge(e), head(h) {
    if (!h.contains(e.x) || !h.contains(e.y)) throw std::invalid_argument("head not an endpoint of edge");
  }

  friend bool operator==(const OrientedEdge& a, const OrientedEdge& b) {
    return a.edge == b.edge && a.head == b.head;
  }
  friend bool operator<(const OrientedEdge& a, const OrientedEdge& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.head < b.head;
  }
};

// The two regions completing an edge to its endpoint vertices: the mediant
// (vector sum) and the vector difference, both sign-normalized.
inline std::pair<Region, Region> completions(const Edge& e) {
  Region sum = normalize_slope(e.x.p + e.y.p, e.x.q + e.y.q);
  Region diff = normalize_slope(e.x.p - e.y.p, e.x.q - e.y.q);
  return {sum, diff};
}

inline std::pair<Vertex, Vertex> vertices_of(const Edge& e) {
  auto [s, d] = completions(e);
  return {Vertex(e.x, e.y, s), Vertex(e.x, e.y, d)};
}

inline Region other_completion(const Edge& e, const Region& known) {
  auto [s, d] = completions(e);
  if (known == s) return d;
  if (known == d) return s;
  throw std::invalid_argument("region is not a completion of edge");
}

inline Vertex other_vertex(const Edge& e, const Vertex& v) {
  auto [v1, v2] = vertices_of(e);
  if (v == v1) return v2;
  if (v == v2) return v1;
  throw std::invalid_argument("vertex not an endpoint of edge");
}

inline std::array<Edge, 3> edges_at(const Vertex& v) {
  return {Edge(v.r[0], v.r[1]), Edge(v.r[0], v.r[2]), Edge(v.r[1], v.r[2])};
}

// Distinguished oriented edge between the regions of slopes infinity and 0,
// oriented toward the vertex shared with the slope -1 region.
inline OrientedEdge base_edge() {
  Edge e0(slope_infinity(), slope_zero());
  return OrientedEdge(e0, Vertex(slope_infinity(), slope_zero(), Slope{-1, 1}));
}

// Stern-Brocot parents: the unique Farey-neighbor pair whose mediant-type
// combination is s. Returned ordered by decreasing slope value. The two base
// regions (infinity and 0) have no parents.
inline std::pair<Region, Region> parents(const Region& s) {
  if (s == slope_infinity() || s == slope_zero())
    throw std::invalid_argument("base region has no parents: " + to_string(s));
  long long p = s.p < 0 ? -s.p : s.p;
  long long q = s.q;
  // Walk the positive Stern-Brocot tree for p/q; mirror at the end.
  long long lp = 0, lq = 1, rp = 1, rq = 0;
  while (true) {
    long long mp = lp + rp, mq = lq + rq;
    if (mp == p && mq == q) {
      Region big{rp, rq}, small{lp, lq};
      if (s.p < 0) {
        // Mirror p -> -p and swap roles so the first entry stays the larger slope.
        big = normalize_slope(-lp, lq);
        small = normalize_slope(-rp, rq);
        if (slope_value_less(big, small)) std::swap(big, small);
        return {big, small};
      }
      return {big, small};
    }
    if (static_cast<__int128>(p) * mq < static_cast<__int128>(mp) * q) {
      rp = mp;
      rq = mq;
    } else {
      lp = mp;
      lq = mq;
    }
  }
}

// Stern-Brocot depth: 0 for the base regions, 1 for slopes +-1, and so on.
inline int depth(const Region& s) {
  if (s == slope_infinity() || s == slope_zero()) return 0;
  long long p = s.p < 0 ? -s.p : s.p;
  long long q = s.q;
  long long lp = 0, lq = 1, rp = 1, rq = 0;
  int d = 1;
  while (true) {
    long long mp = lp + rp, mq = lq + rq;
    if (mp == p && mq == q) return d;
    if (static_cast<__int128>(p) * mq < static_cast<__int128>(mp) * q) {
      rp = mp;
      rq = mq;
    } else {
      lp = mp;
      lq = mq;
    }
    ++d;
  }
}

// The primitive-class word of a region. Base cases P(inf)=a, P(0)=b; the word
// of a positive slope is the concatenation of its parents' words ordered by
// decreasing slope; negative slopes take the b -> b^-1 mirror of |s|.
inline Word primitive_word(const Region& s) {
  if (s == slope_infinity()) return Word("a");
  if (s == slope_zero()) return Word("b");
  long long p = s.p < 0 ? -s.p : s.p;
  long long q = s.q;
  long long lp = 0, lq = 1, rp = 1, rq = 0;
  std::string lw = "b", rw = "a";
  std::string word;
  while (true) {
    long long mp = lp + rp, mq = lq + rq;
    std::string mw = rw + lw;  // decreasing-slope concatenation
    if (mp == p && mq == q) {
      word = mw;
      break;
    }
    if (static_cast<__int128>(p) * mq < static_cast<__int128>(mp) * q) {
      rp = mp;
      rq = mq;
      rw = mw;
    } else {
      lp = mp;
      lq = mq;
      lw = mw;
    }
  }
  if (s.p < 0)
    for (char& c : word) {
      if (c == 'b') c = 'B';
      else if (c == 'B') c = 'b';
    }
  return Word::from_reduced(word);
}

// The basis partner Y_X: the parent with the smaller |p|+q (lex tie-break);
// the two base regions pair with each other.
inline Region basis_partner(const Region& s) {
  if (s == slope_infinity()) return slope_zero();
  if (s == slope_zero()) return slope_infinity();
  auto [u, v] = parents(s);
  if (u.size() != v.size()) return u.size() < v.size() ? u : v;
  return u < v ? u : v;
}

// The indexed neighbor family of the edge {X, Y}: Y_n has slope
// (n p_X + p_Y) / (n q_X + q_Y), sign-normalized. Y_0 = Y.
inline Region neighbors_of(const Region& x, const Region& y, long long n) {
  if (!farey_neighbors(x, y)) throw std::invalid_argument("neighbors_of: not an edge");
  return normalize_slope(n * x.p + y.p, n * x.q + y.q);
}

// Integer coordinates of region r in the unimodular basis (v_X, v_Y) of edge
// e: alpha * v_X + beta * v_Y = v_r up to overall sign.
inline std::pair<long long, long long> edge_coordinates(const Edge& e, const Region& r) {
  long long det = slope_det(e.x, e.y);
  long long alpha = (e.y.q * r.p - e.y.p * r.q) / det;
  long long beta = (-e.x.q * r.p + e.x.p * r.q) / det;
  return {alpha, beta};
}

// F_e(X): 1 on the edge regions, additive under the parent recursion away
// from e. For the base edge this is the cyclically reduced word length of
// P(X). Computed as |alpha| + |beta| in the edge's unimodular coordinates.
inline long long word_length_F(const Edge& e, const Region& r) {
  auto [alpha, beta] = edge_coordinates(e, r);
  return std::llabs(alpha) + std::llabs(beta);
}

inline long long word_length_F(const OrientedEdge& oe, const Region& r) {
  return word_length_F(oe.edge, r);
}

enum class EdgeSide { on_edge, head_side, tail_side };

// Which side of the oriented edge a region lies on. Regions off the edge have
// both coordinates of one sign (mediant side) or mixed signs (difference
// side); the head vertex identifies which of those is the head side.
inline EdgeSide region_side(const OrientedEdge& oe, const Region& r) {
  if (oe.edge.contains(r)) return EdgeSide::on_edge;
  auto [alpha, beta] = edge_coordinates(oe.edge, r);
  bool same_sign = (alpha > 0 && beta > 0) || (alpha < 0 && beta < 0);
  auto [sum, diff] = completions(oe.edge);
  bool head_is_sum = oe.head.contains(sum);
  // alpha or beta can be 0 only on the edge itself.
  return (same_sign == head_is_sum) ? EdgeSide::head_side : EdgeSide::tail_side;
}

// Parity tri-coloring: adjacent regions always differ, the three regions at a
// vertex get the three distinct colors.
inline int tricolor(const Region& s) {
  int pp = static_cast<int>(((s.p % 2) + 2) % 2);
  int qq = static_cast<int>(s.q % 2);
  if (pp == 1 && qq == 0) return 1;
  if (pp == 0 && qq == 1) return 2;
  return 3;
}

// --- vertex navigation -----------------------------------------------------

// The region of v that is the mediant-type child of the other two.
inline Region youngest_region(const Vertex& v) {
  for (int i = 0; i < 3; ++i) {
    const Region& c = v.r[i];
    if (c == slope_infinity() || c == slope_zero()) continue;
    auto [u, w] = parents(c);
    const Region& o1 = v.r[(i + 1) % 3];
    const Region& o2 = v.r[(i + 2) % 3];
    if ((u == o1 && w == o2) || (u == o2 && w == o1)) return c;
  }
  throw std::logic_error("vertex without a youngest region");
}

inline Vertex root_vertex() {
  return Vertex(slope_infinity(), slope_zero(), Slope{1, 1});
}

// Parent vertex: across the edge formed by the two older regions.
inline Vertex vertex_parent(const Vertex& v) {
  Region c = youngest_region(v);
  Region a = (v.r[0] == c) ? v.r[1] : v.r[0];
  Region b = (v.r[2] == c) ? v.r[1] : v.r[2];
  return other_vertex(Edge(a, b), v);
}

inline int vertex_depth(const Vertex& v) {
  Vertex root = root_vertex();
  Vertex cur = v;
  int d = 0;
  while (!(cur == root)) {
    cur = vertex_parent(cur);
    ++d;
  }
  return d;
}

// Vertex path u -> w in the tree, inclusive of both ends.
inline std::vector<Vertex> vertex_path(const Vertex& u, const Vertex& w) {
  std::vector<Vertex> up{u}, down{w};
  int du = vertex_depth(u), dw = vertex_depth(w);
  Vertex cu = u, cw = w;
  while (du > dw) {
    cu = vertex_parent(cu);
    up.push_back(cu);
    --du;
  }
  while (dw > du) {
    cw = vertex_parent(cw);
    down.push_back(cw);
    --dw;
  }
  while (!(cu == cw)) {
    cu = vertex_parent(cu);
    up.push_back(cu);
    cw = vertex_parent(cw);
    down.push_back(cw);
  }
  up.insert(up.end(), down.rbegin() + 1, down.rend());
  return up;
}

inline int vertex_dist(const Vertex& u, const Vertex& w) {
  return static_cast<int>(vertex_path(u, w).size()) - 1;
}

// The edge shared by two adjacent vertices.
inline Edge edge_between(const Vertex& u, const Vertex& w) {
  std::vector<Region> shared;
  for (const Region& r : u.r)
    if (w.contains(r)) shared.push_back(r);
  if (shared.size() != 2) throw std::invalid_argument("vertices not adjacent");
  return Edge(shared[0], shared[1]);
}

// Midpoint distance between edges, following the tree metric: equal edges are
// at distance 0, edges sharing a vertex at distance 1.
inline int edge_dist(const Edge& e, const Edge& f) {
  if (e == f) return 0;
  auto [e1, e2] = vertices_of(e);
  auto [f1, f2] = vertices_of(f);
  int best = vertex_dist(e1, f1);
  best = std::min(best, vertex_dist(e1, f2));
  best = std::min(best, vertex_dist(e2, f1));
  best = std::min(best, vertex_dist(e2, f2));
  return best + 1;
}

// A finite connected set of edges of the Farey tree.
struct Subtree {
  std::set<Edge> edges;

  std::set<Vertex> vertex_set() const {
    std::set<Vertex> vs;
    for (const Edge& e : edges) {
      auto [v1, v2] = vertices_of(e);
      vs.insert(v1);
      vs.insert(v2);
    }
    return vs;
  }

  bool touches(const Vertex& v) const {
    for (const Edge& e : edges) {
      auto [v1, v2] = vertices_of(e);
      if (v == v1 || v == v2) return true;
    }
    return false;
  }
};

// Smallest connected subtree containing all input edges.
inline Subtree span(const std::vector<Edge>& input) {
  if (input.empty()) throw std::invalid_argument("span: empty edge set");
  Subtree t;
  t.edges.insert(input.front());
  for (std::size_t i = 1; i < input.size(); ++i) {
    const Edge& e = input[i];
    if (t.edges.count(e)) continue;
    // Shortest vertex path from an endpoint of e into the current tree.
    auto [a1, a2] = vertices_of(e);
    std::vector<Vertex> best;
    for (const Vertex& from : {a1, a2})
      for (const Vertex& to : t.vertex_set()) {
        auto path = vertex_path(from, to);
        if (best.empty() || path.size() < best.size()) best = std::move(path);
      }
    t.edges.insert(e);
    for (std::size_t k = 0; k + 1 < best.size(); ++k)
      t.edges.insert(edge_between(best[k], best[k + 1]));
  }
  return t;
}

// Oriented edges meeting the subtree exactly at their head.
inline std::vector<OrientedEdge> circular_set(const Subtree& t) {
  std::vector<OrientedEdge> out;
  std::set<OrientedEdge> seen;
  for (const Vertex& v : t.vertex_set()) {
    for (const Edge& e : edges_at(v)) {
      if (t.edges.count(e)) continue;
      // The far endpoint must not touch the tree.
      Vertex far = other_vertex(e, v);
      if (t.touches(far)) continue;
      OrientedEdge oe(e, v);
      if (seen.insert(oe).second) out.push_back(oe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical conjugacy-inversion representative of a primitive word, together
// with its slope. A word is primitive exactly when its class matches the
// Farey word of its slope.
struct PrimitiveClass {
  Word canonical;
  Slope slope_value;
};

inline std::optional<PrimitiveClass> canonical_class(const Word& w) {
  if (w.identity()) throw std::invalid_argument("canonical_class: identity input");
  std::optional<Slope> s = slope(w);
  if (!s) return std::nullopt;
  std::string cw = canonical_cyclic(w);
  if (cw != canonical_cyclic(primitive_word(*s))) return std::nullopt;
  return PrimitiveClass{Word::from_reduced(cw), *s};
}

// Visits every region of Stern-Brocot depth <= maxdepth (both signs plus the
// base regions).
template <class Fn>
void for_each_region_to_depth(int maxdepth, Fn&& fn) {
  fn(slope_infinity());
  fn(slope_zero());
  if (maxdepth < 1) return;
  struct Item {
    long long lp, lq, rp, rq;
    int d;
  };
  for (int sign : {+1, -1}) {
    std::vector<Item> stack{{0, 1, 1, 0, 1}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      long long mp = it.lp + it.rp, mq = it.lq + it.rq;
      fn(normalize_slope(sign * mp, mq));
      if (it.d < maxdepth) {
        stack.push_back({it.lp, it.lq, mp, mq, it.d + 1});
        stack.push_back({mp, mq, it.rp, it.rq, it.d + 1});
      }
    }
  }
}

}  // namespace bowditch

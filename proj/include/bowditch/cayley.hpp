#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "bowditch/numeric.hpp"
#include "bowditch/space_params.hpp"
#include "bowditch/words.hpp"

namespace bowditch {

// The rank-2 Cayley tree with delta = 0; everything is exact word arithmetic.
// An isometry records the generator images of the acting endomorphism plus
// the image word that actually acts.
struct CayleyIsometry {
  Word image_a, image_b;
  Word acting;
};

struct CayleyPoint {
  Word v;
};

// An eventually periodic end: the ray root * period^inf. The period is
// cyclically reduced and nonempty.
struct CayleyEnd {
  Word root;
  Word period;
};

class CayleyBackend {
 public:
  using Isometry = CayleyIsometry;
  using Point = CayleyPoint;
  using Boundary = CayleyEnd;
  static constexpr bool has_trace_engine = false;

  SpaceParams params;

  CayleyBackend() : params(cayley_params()) {}
  explicit CayleyBackend(SpaceParams p) : params(std::move(p)) {}

  static Isometry identity() { return {Word("a"), Word("b"), Word()}; }

  Isometry compose(const Isometry& g, const Isometry& h) const {
    return {g.image_a, g.image_b, concat(g.acting, h.acting)};
  }

  Isometry invert(const Isometry& g) const {
    return {g.image_a, g.image_b, inverse(g.acting)};
  }

  Point apply(const Isometry& g, const Point& p) const { return {concat(g.acting, p.v)}; }

  Boundary apply_boundary(const Isometry& g, const Boundary& xi) const {
    return {concat(g.acting, xi.root), xi.period};
  }

  Real stable_norm(const Isometry& g) const { return Real(cyclic_length(g.acting)); }

  bool is_hyperbolic(const Isometry& g) const { return cyclic_length(g.acting) > 0; }

  std::pair<Boundary, Boundary> fixed_points(const Isometry& g) const {
    if (!is_hyperbolic(g)) throw std::domain_error("fixed_points: word acts elliptically");
    Word core = cyclic_reduce(g.acting);
    Word u = cyclic_conjugator(g.acting);
    return {Boundary{u, core}, Boundary{u, inverse(core)}};
  }

  // First n letters of the reduced infinite word root * period^inf. Stream
  // letters never cancel each other (the period is cyclically reduced), so
  // only the root can be eaten; appending ceil((n + 2|root|)/|period|) + 2
  // periods pins the first n letters.
  static std::string ray_letters(const Word& root, const Word& period, std::size_t n) {
    if (period.identity()) throw std::invalid_argument("end with empty period");
    std::string s = root.letters();
    std::size_t copies = (n + 2 * root.length()) / period.length() + 2;
    for (std::size_t k = 0; k < copies; ++k)
      for (char c : period.letters()) {
        if (!s.empty() && s.back() == letter_inverse(c))
          s.pop_back();
        else
          s.push_back(c);
      }
    if (s.size() < n) throw std::logic_error("ray shorter than requested");
    return s.substr(0, n);
  }

  bool boundary_eq(const Boundary& u, const Boundary& v) const {
    std::size_t n = std::max(u.root.length(), v.root.length()) +
                    2 * (u.period.length() + v.period.length()) + 4;
    return ray_letters(u.root, u.period, n) == ray_letters(v.root, v.period, n);
  }

  // 0 for equal ends, 1 otherwise; keeps the chord/tolerance interface of the
  // Mobius backends while staying exact.
  Real boundary_chord(const Boundary& u, const Boundary& v) const {
    return boundary_eq(u, v) ? Real(0) : Real(1);
  }

  Real dist(const Point& p, const Point& q) const {
    return Real(static_cast<long long>(concat(inverse(p.v), q.v).length()));
  }

  static Point base_point() { return {Word()}; }

  // Letters of the geodesic ray from a vertex toward an end.
  static std::string path_letters(const Word& from, const Boundary& xi, std::size_t n) {
    Word shifted_root = concat(inverse(from), xi.root);
    return ray_letters(shifted_root, xi.period, n);
  }

  Point point_on_ray(const Point& base, const Boundary& xi, const Real& t) const {
    long long n = static_cast<long long>(t);
    if (n < 0) n = 0;
    std::string pre = path_letters(base.v, xi, static_cast<std::size_t>(n));
    return {concat(base.v, Word::from_reduced(pre))};
  }

  Real busemann(const Boundary& xi, const Point& base, const Point& x, const Real& t) const {
    Real tf = floor(t);
    return dist(point_on_ray(base, xi, tf), x) - tf;
  }

  Real busemann_cutoff(const Point& base, const Point& x) const {
    return dist(base, x) + 10;
  }

  // Divergence point of the rays from x toward the two ends; in a tree this
  // is the nearest-point projection onto the geodesic (xi, eta).
  Point project_to_geodesic(const Point& p, const Boundary& xi, const Boundary& eta) const {
    if (boundary_eq(xi, eta)) throw std::invalid_argument("projection needs distinct endpoints");
    std::size_t n = 8;
    while (true) {
      std::string r1 = path_letters(p.v, xi, n);
      std::string r2 = path_letters(p.v, eta, n);
      std::size_t j = 0;
      while (j < n && r1[j] == r2[j]) ++j;
      if (j < n)
        return {concat(p.v, Word::from_reduced(r1.substr(0, j)))};
      n *= 2;
    }
  }

  Point project_to_ray(const Point& p, const Point& base, const Boundary& xi) const {
    Word to_p = concat(inverse(base.v), p.v);
    std::size_t n = to_p.length();
    std::string ray = n ? path_letters(base.v, xi, n) : std::string();
    std::size_t j = 0;
    while (j < n && to_p.letters()[j] == ray[j]) ++j;
    return {concat(base.v, Word::from_reduced(to_p.letters().substr(0, j)))};
  }

  // Vertex of the axis closest to the identity vertex.
  Point axis_basepoint(const Isometry& g) const {
    auto [att, rep] = fixed_points(g);
    Word u = cyclic_conjugator(g.acting);
    Point best{u};
    for (const Boundary* end : {&att, &rep}) {
      std::string s = u.letters();
      std::size_t len = s.size();
      std::size_t probe = 1;
      while (true) {
        std::string pre = path_letters(u, *end, probe);
        std::string cand = s;
        for (char c : pre.substr(probe - 1)) {
          if (!cand.empty() && cand.back() == letter_inverse(c))
            cand.pop_back();
          else
            cand.push_back(c);
        }
        if (cand.size() >= len) break;  // walking away from the identity now
        len = cand.size();
        s = cand;
        ++probe;
      }
      if (s.size() < best.v.length()) best = Point{Word::from_reduced(s)};
    }
    return best;
  }

  std::string describe_boundary(const Boundary& b) const {
    return "(" + (b.root.identity() ? std::string("e") : b.root.letters()) + ")(" +
           b.period.letters() + ")^inf";
  }
};

}  // namespace bowditch

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "bowditch/log_complex.hpp"
#include "bowditch/numeric.hpp"
#include "bowditch/space_params.hpp"

namespace bowditch {

// Upper half-plane model of H^2 acted on by PSL(2,R) via determinant-one real
// matrices.
struct PlaneIsometry {
  Real a, b, c, d;
};

struct PlanePoint {
  Real x, y;  // y > 0
};

struct PlaneBoundary {
  bool inf = false;
  Real v = 0;  // real coordinate when finite
};

class PlaneBackend {
 public:
  using Isometry = PlaneIsometry;
  using Point = PlanePoint;
  using Boundary = PlaneBoundary;
  static constexpr bool has_trace_engine = true;

  SpaceParams params;

  PlaneBackend() : params(plane_params()) {}
  explicit PlaneBackend(SpaceParams p) : params(std::move(p)) {}

  static Isometry identity() { return {1, 0, 0, 1}; }

  // Scales to determinant one; rejects non-orientation-preserving input.
  Isometry normalized(Isometry g) const {
    Real det = g.a * g.d - g.b * g.c;
    if (det <= 0) throw std::invalid_argument("plane isometry needs positive determinant");
    Real s = sqrt(det);
    return {g.a / s, g.b / s, g.c / s, g.d / s};
  }

  // Renormalization is skipped once entries are large enough that the
  // determinant formula cancels catastrophically; products of det-1 matrices
  // stay det-1 to working precision, and the action and trace are relatively
  // accurate without it.
  Isometry compose(const Isometry& g, const Isometry& h) const {
    Isometry m{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
               g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    Real scale = std::max(std::max(abs(m.a), abs(m.b)), std::max(abs(m.c), abs(m.d)));
    if (scale < ldexp(Real(1), 64)) return normalized(m);
    return m;
  }

  Isometry invert(const Isometry& g) const { return {g.d, -g.b, -g.c, g.a}; }

  Point apply(const Isometry& g, const Point& p) const {
    Real cx_d = g.c * p.x + g.d;
    Real den = cx_d * cx_d + g.c * g.c * p.y * p.y;
    Real nx = (g.a * p.x + g.b) * cx_d + g.a * g.c * p.y * p.y;
    return {nx / den, p.y / den};
  }

  Boundary apply_boundary(const Isometry& g, const Boundary& xi) const {
    if (xi.inf) {
      if (g.c == 0) return {true, 0};
      return {false, g.a / g.c};
    }
    Real den = g.c * xi.v + g.d;
    if (den == 0) return {true, 0};
    return {false, (g.a * xi.v + g.b) / den};
  }

  Real trace(const Isometry& g) const { return g.a + g.d; }
  LogComplex trace_lc(const Isometry& g) const { return lc_from_real(trace(g)); }

  Real stable_norm(const Isometry& g) const {
    return 2 * acosh_clamped(abs(trace(g)) / 2);
  }

  Real stable_norm_from_trace(const LogComplex& tr) const {
    return stable_norm_plane_from_trace(tr);
  }

  bool is_hyperbolic(const Isometry& g) const {
    return stable_norm(g) > params.hyperbolicity_eps;
  }

  // Attracting and repelling fixed points on R union {inf}: the roots of
  // c z^2 + (d - a) z - b = 0, classified by the derivative modulus.
  std::pair<Boundary, Boundary> fixed_points(const Isometry& g) const {
    if (!is_hyperbolic(g)) throw std::domain_error("fixed_points: isometry is not hyperbolic");
    if (g.c == 0) {
      Boundary at_inf{true, 0};
      Boundary fin{false, g.b / (g.d - g.a)};
      if (abs(g.a) > abs(g.d)) return {at_inf, fin};
      return {fin, at_inf};
    }
    Real tr = trace(g);
    Real s = sqrt(tr * tr - 4);
    Real r1 = (g.a - g.d + s) / (2 * g.c);
    Real r2 = (g.a - g.d - s) / (2 * g.c);
    // Multiplier at the fixed point r is 1/(c r + d)^2.
    bool r1_attracting = abs(g.c * r1 + g.d) > 1;
    if (r1_attracting) return {{false, r1}, {false, r2}};
    return {{false, r2}, {false, r1}};
  }

  // Chordal (stereographic) distance on the circle boundary.
  Real boundary_chord(const Boundary& u, const Boundary& v) const {
    if (u.inf && v.inf) return Real(0);
    if (u.inf) return 2 / sqrt(1 + v.v * v.v);
    if (v.inf) return 2 / sqrt(1 + u.v * u.v);
    return 2 * abs(u.v - v.v) / (sqrt(1 + u.v * u.v) * sqrt(1 + v.v * v.v));
  }

  bool boundary_eq(const Boundary& u, const Boundary& v) const {
    return boundary_chord(u, v) <= params.boundary_tolerance;
  }

  Real dist(const Point& p, const Point& q) const {
    Real dx = p.x - q.x, dy = p.y - q.y;
    return acosh_clamped(1 + (dx * dx + dy * dy) / (2 * p.y * q.y));
  }

  static Point base_point() { return {0, 1}; }

  // Mobius map sending xi to 0 and eta to infinity, orientation preserving.
  Isometry to_zero_infinity(const Boundary& xi, const Boundary& eta) const {
    if (xi.inf && eta.inf) throw std::invalid_argument("coinciding boundary points");
    if (xi.inf) return normalized({0, -1, 1, -eta.v});
    if (eta.inf) return {1, -xi.v, 0, 1};
    if (xi.v > eta.v) return normalized({1, -xi.v, 1, -eta.v});
    return normalized({-1, xi.v, 1, -eta.v});
  }

  // Mobius map sending xi to infinity.
  Isometry to_infinity(const Boundary& xi) const {
    if (xi.inf) return identity();
    return {0, -1, 1, -xi.v};
  }

  Point project_to_geodesic(const Point& p, const Boundary& xi, const Boundary& eta) const {
    if (boundary_chord(xi, eta) == 0) throw std::invalid_argument("projection needs distinct endpoints");
    Isometry t = to_zero_infinity(xi, eta);
    Point q = apply(t, p);
    Point proj{0, sqrt(q.x * q.x + q.y * q.y)};
    return apply(invert(t), proj);
  }

  // Nearest point of the ray [base, xi) to p.
  Point project_to_ray(const Point& p, const Point& base, const Boundary& xi) const {
    Isometry t = to_infinity(xi);
    Point u = apply(t, base);
    Point w = apply(t, p);
    Real dx = w.x - u.x;
    Real h = sqrt(dx * dx + w.y * w.y);
    if (h < u.y) h = u.y;
    return apply(invert(t), Point{u.x, h});
  }

  // Unit-speed ray from base toward xi, evaluated at t >= 0.
  Point point_on_ray(const Point& base, const Boundary& xi, const Real& t) const {
    Isometry tr = to_infinity(xi);
    Point u = apply(tr, base);
    return apply(invert(tr), Point{u.x, u.y * exp(t)});
  }

  // Busemann partial value d(l(t), x) - t along the ray from base toward xi.
  Real busemann(const Boundary& xi, const Point& base, const Point& x, const Real& t) const {
    return dist(point_on_ray(base, xi, t), x) - t;
  }

  Real busemann_cutoff(const Point& base, const Point& x) const {
    return dist(base, x) + 40 * params.delta + 10;
  }

  Point axis_basepoint(const Isometry& g) const {
    auto [att, rep] = fixed_points(g);
    return project_to_geodesic(base_point(), att, rep);
  }

  std::string describe_boundary(const Boundary& b) const {
    return b.inf ? std::string("inf") : dec30(b.v);
  }
};

}  // namespace bowditch

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "bowditch/log_complex.hpp"
#include "bowditch/numeric.hpp"
#include "bowditch/space_params.hpp"

namespace bowditch {

// Upper half-space model of H^3 acted on by SL(2,C).
struct Space3Isometry {
  Cplx a, b, c, d;
};

struct Space3Point {
  Cplx z;
  Real t;  // height > 0
};

struct Space3Boundary {
  bool inf = false;
  Cplx v = Cplx(0);
};

class Space3Backend {
 public:
  using Isometry = Space3Isometry;
  using Point = Space3Point;
  using Boundary = Space3Boundary;
  static constexpr bool has_trace_engine = true;

  SpaceParams params;

  Space3Backend() : params(space3_params()) {}
  explicit Space3Backend(SpaceParams p) : params(std::move(p)) {}

  static Isometry identity() { return {Cplx(1), Cplx(0), Cplx(0), Cplx(1)}; }

  Isometry normalized(Isometry g) const {
    Cplx det = g.a * g.d - g.b * g.c;
    if (abs(det) == 0) throw std::invalid_argument("singular matrix");
    Cplx s = sqrt(det);
    return {g.a / s, g.b / s, g.c / s, g.d / s};
  }

  // Same large-entry guard as the plane backend: renormalize only while the
  // determinant is numerically meaningful.
  Isometry compose(const Isometry& g, const Isometry& h) const {
    Isometry m{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
               g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    Real scale = std::max(std::max(abs(m.a), abs(m.b)), std::max(abs(m.c), abs(m.d)));
    if (scale < ldexp(Real(1), 64)) return normalized(m);
    return m;
  }

  Isometry invert(const Isometry& g) const { return {g.d, -g.b, -g.c, g.a}; }

  Point apply(const Isometry& g, const Point& p) const {
    Cplx cz_d = g.c * p.z + g.d;
    Real n1 = abs(cz_d);
    Real nc = abs(g.c);
    Real den = n1 * n1 + nc * nc * p.t * p.t;
    Cplx nz = (g.a * p.z + g.b) * conj(cz_d) + g.a * conj(g.c) * p.t * p.t;
    return {nz / den, p.t / den};
  }

  Boundary apply_boundary(const Isometry& g, const Boundary& xi) const {
    if (xi.inf) {
      if (abs(g.c) == 0) return {true, Cplx(0)};
      return {false, g.a / g.c};
    }
    Cplx den = g.c * xi.v + g.d;
    if (abs(den) == 0) return {true, Cplx(0)};
    return {false, (g.a * xi.v + g.b) / den};
  }

  Cplx trace(const Isometry& g) const { return g.a + g.d; }
  LogComplex trace_lc(const Isometry& g) const { return lc_from_complex(trace(g)); }

  // 2 |Re arccosh(tr/2)| with the principal branch of nonnegative real part.
  Real stable_norm(const Isometry& g) const {
    return 2 * abs(acosh_principal(trace(g) / 2).real());
  }

  Real stable_norm_from_trace(const LogComplex& tr) const {
    return stable_norm_space3_from_trace(tr);
  }

  bool is_hyperbolic(const Isometry& g) const {
    return stable_norm(g) > params.hyperbolicity_eps;
  }

  std::pair<Boundary, Boundary> fixed_points(const Isometry& g) const {
    if (!is_hyperbolic(g)) throw std::domain_error("fixed_points: isometry is not loxodromic");
    if (abs(g.c) == 0) {
      Boundary at_inf{true, Cplx(0)};
      Boundary fin{false, g.b / (g.d - g.a)};
      if (abs(g.a) > abs(g.d)) return {at_inf, fin};
      return {fin, at_inf};
    }
    Cplx tr = trace(g);
    Cplx s = sqrt(tr * tr - 4);
    Cplx r1 = (g.a - g.d + s) / (2 * g.c);
    Cplx r2 = (g.a - g.d - s) / (2 * g.c);
    bool r1_attracting = abs(g.c * r1 + g.d) > 1;
    if (r1_attracting) return {{false, r1}, {false, r2}};
    return {{false, r2}, {false, r1}};
  }

  // Chordal distance on the Riemann sphere.
  Real boundary_chord(const Boundary& u, const Boundary& v) const {
    if (u.inf && v.inf) return Real(0);
    if (u.inf) return 2 / sqrt(1 + abs(v.v) * abs(v.v));
    if (v.inf) return 2 / sqrt(1 + abs(u.v) * abs(u.v));
    Real au = abs(u.v), av = abs(v.v);
    return 2 * abs(u.v - v.v) / (sqrt(1 + au * au) * sqrt(1 + av * av));
  }

  bool boundary_eq(const Boundary& u, const Boundary& v) const {
    return boundary_chord(u, v) <= params.boundary_tolerance;
  }

  Real dist(const Point& p, const Point& q) const {
    Real dz = abs(p.z - q.z);
    Real dt = p.t - q.t;
    return acosh_clamped(1 + (dz * dz + dt * dt) / (2 * p.t * q.t));
  }

  static Point base_point() { return {Cplx(0), Real(1)}; }

  Isometry to_zero_infinity(const Boundary& xi, const Boundary& eta) const {
    if (xi.inf && eta.inf) throw std::invalid_argument("coinciding boundary points");
    if (xi.inf) return normalized({Cplx(0), Cplx(-1), Cplx(1), -eta.v});
    if (eta.inf) return {Cplx(1), -xi.v, Cplx(0), Cplx(1)};
    return normalized({Cplx(1), -xi.v, Cplx(1), -eta.v});
  }

  Isometry to_infinity(const Boundary& xi) const {
    if (xi.inf) return identity();
    return {Cplx(0), Cplx(-1), Cplx(1), -xi.v};
  }

  Point project_to_geodesic(const Point& p, const Boundary& xi, const Boundary& eta) const {
    if (boundary_chord(xi, eta) == 0) throw std::invalid_argument("projection needs distinct endpoints");
    Isometry t = to_zero_infinity(xi, eta);
    Point q = apply(t, p);
    Real az = abs(q.z);
    Point proj{Cplx(0), sqrt(az * az + q.t * q.t)};
    return apply(invert(t), proj);
  }

  Point project_to_ray(const Point& p, const Point& base, const Boundary& xi) const {
    Isometry t = to_infinity(xi);
    Point u = apply(t, base);
    Point w = apply(t, p);
    Real dz = abs(w.z - u.z);
    Real h = sqrt(dz * dz + w.t * w.t);
    if (h < u.t) h = u.t;
    return apply(invert(t), Point{u.z, h});
  }

  Point point_on_ray(const Point& base, const Boundary& xi, const Real& t) const {
    Isometry tr = to_infinity(xi);
    Point u = apply(tr, base);
    return apply(invert(tr), Point{u.z, u.t * exp(t)});
  }

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
    if (b.inf) return "inf";
    return dec30(b.v.real()) + "+" + dec30(b.v.imag()) + "i";
  }
};

}  // namespace bowditch

#pragma once

#include <map>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "bowditch/cayley.hpp"
#include "bowditch/farey.hpp"
#include "bowditch/log_complex.hpp"
#include "bowditch/plane.hpp"
#include "bowditch/space3.hpp"
#include "bowditch/words.hpp"

namespace bowditch {

namespace detail {

// Unnormalized 2x2 product in a wider scalar type for the cancellation
// fallback path.
template <class S>
struct Mat4 {
  S a, b, c, d;
};

template <class S>
Mat4<S> mat_mul(const Mat4<S>& g, const Mat4<S>& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
          g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

template <class S>
Mat4<S> mat_inv(const Mat4<S>& g) {
  return {g.d, -g.b, -g.c, g.a};
}

inline Mat4<Real512> widen(const PlaneIsometry& g) {
  return {Real512(g.a), Real512(g.b), Real512(g.c), Real512(g.d)};
}

inline Mat4<Cplx512> widen(const Space3Isometry& g) {
  auto up = [](const Cplx& z) { return Cplx512(Real512(z.real()), Real512(z.imag())); };
  return {up(g.a), up(g.b), up(g.c), up(g.d)};
}

inline LogComplex trace_to_lc(const Mat4<Real512>& g) {
  Real512 t = g.a + g.d;
  if (t == 0) return lc_zero();
  return {Real(log(abs(t))), t > 0 ? Real(0) : real_pi(), false};
}

inline LogComplex trace_to_lc(const Mat4<Cplx512>& g) {
  Cplx512 t = g.a + g.d;
  Real512 m = abs(t);
  if (m == 0) return lc_zero();
  return {Real(log(m)), Real(atan2(t.imag(), t.real())), false};
}

inline PlaneIsometry mul_raw(const PlaneIsometry& g, const PlaneIsometry& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
          g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

inline Space3Isometry mul_raw(const Space3Isometry& g, const Space3Isometry& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
          g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

inline CayleyIsometry mul_raw(const CayleyIsometry& g, const CayleyIsometry& h) {
  return {g.image_a, g.image_b, concat(g.acting, h.acting)};
}

}  // namespace detail

// A representation of F2 into the backend's isometry group, with append-only
// caches for region images, traces and lengths, keyed by slope.
template <class B>
class Representation {
 public:
  using Iso = typename B::Isometry;

  Representation(B be, Iso image_a, Iso image_b)
      : backend_(std::move(be)), a_(std::move(image_a)), b_(std::move(image_b)) {
    b_inv_ = backend_.invert(b_);
    if constexpr (B::has_trace_engine) {
      trace_cache_[slope_infinity()] = backend_.trace_lc(a_);
      trace_cache_[slope_zero()] = backend_.trace_lc(b_);
      trace_cache_[Slope{1, 1}] = backend_.trace_lc(backend_.compose(a_, b_));
      trace_cache_[Slope{-1, 1}] = backend_.trace_lc(backend_.compose(a_, b_inv_));
    }
  }

  const B& backend() const { return backend_; }
  const SpaceParams& params() const { return backend_.params; }
  const Iso& gen_a() const { return a_; }
  const Iso& gen_b() const { return b_; }

  Iso image_of_word(const Word& w) const {
    Iso out = backend_.identity();
    Iso a_inv = backend_.invert(a_);
    for (char c : w.letters()) {
      switch (c) {
        case 'a': out = detail::mul_raw(out, a_); break;
        case 'A': out = detail::mul_raw(out, a_inv); break;
        case 'b': out = detail::mul_raw(out, b_); break;
        case 'B': out = detail::mul_raw(out, b_inv_); break;
      }
    }
    return out;
  }

  // Image of the primitive word of a region, built by composing cached parent
  // images along the Stern-Brocot construction (one product per region).
  const Iso& region_image(const Region& s) {
    auto it = image_cache_.find(s);
    if (it != image_cache_.end()) return it->second;
    Iso value = backend_.identity();
    if (s == slope_infinity()) {
      value = a_;
    } else if (s == slope_zero()) {
      value = b_;
    } else if (s.p > 0) {
      auto [u, v] = parents(s);  // decreasing slope = concatenation order
      value = detail::mul_raw(region_image(u), region_image(v));
    } else {
      // Mirrored construction: factors are the mirrored positive-side parents,
      // with b^-1 standing in for the slope-0 region.
      auto [pu, pv] = parents(make_slope(-s.p, s.q));
      auto mirror = [](const Slope& t) {
        return t.infinite() ? t : normalize_slope(-t.p, t.q);
      };
      Slope f1 = mirror(pu), f2 = mirror(pv);
      Iso m1 = (f1 == slope_zero()) ? b_inv_ : region_image(f1);
      Iso m2 = (f2 == slope_zero()) ? b_inv_ : region_image(f2);
      value = detail::mul_raw(m1, m2);
    }
    return image_cache_.emplace(s, std::move(value)).first->second;
  }

  // Fricke recursion over the Farey structure:
  // tr(X) = tr(X') tr(Y') - tr(W) for parents {X', Y'} and the opposite
  // completion W of their edge.
  LogComplex region_trace(const Region& s) {
    static_assert(B::has_trace_engine);
    auto it = trace_cache_.find(s);
    if (it != trace_cache_.end()) return it->second;
    auto [u, v] = parents(s);
    Region w = other_completion(Edge(u, v), s);
    LogComplex value =
        fricke_step(region_trace(u), region_trace(v), region_trace(w), params().cancel_eps());
    trace_cache_.emplace(s, value);
    return value;
  }

  // l_rho(X) = l_S(rho(P(X))). Mobius backends go through the log-domain
  // trace recursion with a direct matrix route below word length 50 and a
  // widened-precision matrix fallback when the engine flags cancellation.
  Real region_length(const Region& s) {
    auto it = length_cache_.find(s);
    if (it != length_cache_.end()) return it->second;
    Real value;
    if constexpr (B::has_trace_engine) {
      if (s.size() < 50) {
        value = backend_.stable_norm(region_image(s));
      } else {
        LogComplex t = region_trace(s);
        if (t.flagged) {
          t = widened_trace(s);
          trace_cache_[s] = t;
          ++fallbacks_;
        }
        value = backend_.stable_norm_from_trace(t);
      }
    } else {
      value = backend_.stable_norm(region_image(s));
    }
    length_cache_.emplace(s, value);
    ++length_evals_;
    return value;
  }

  bool region_hyperbolic(const Region& s) {
    if constexpr (B::has_trace_engine)
      return region_length(s) > params().hyperbolicity_eps;
    else
      return region_length(s) > 0;
  }

  Iso power(const Iso& g, long long n) const {
    if (n < 0) return power(backend_.invert(g), -n);
    Iso acc = backend_.identity();
    Iso base = g;
    while (n > 0) {
      if (n & 1) acc = backend_.compose(acc, base);
      base = backend_.compose(base, base);
      n >>= 1;
    }
    return acc;
  }

  long long length_evaluations() const { return length_evals_; }
  long long precision_fallbacks() const { return fallbacks_; }

 private:
  LogComplex widened_trace(const Region& s) {
    Word w = primitive_word(s);
    auto a512 = detail::widen(a_);
    auto b512 = detail::widen(b_);
    auto a512i = detail::mat_inv(a512);
    auto b512i = detail::mat_inv(b512);
    auto m = a512;  // overwritten below
    bool first = true;
    for (char c : w.letters()) {
      auto let = (c == 'a') ? a512 : (c == 'A') ? a512i : (c == 'b') ? b512 : b512i;
      m = first ? let : detail::mat_mul(m, let);
      first = false;
    }
    return detail::trace_to_lc(m);
  }

  B backend_;
  Iso a_, b_, b_inv_;
  std::map<Slope, Iso> image_cache_;
  std::map<Slope, LogComplex> trace_cache_;
  std::map<Slope, Real> length_cache_;
  long long length_evals_ = 0;
  long long fallbacks_ = 0;
};

using PlaneRepresentation = Representation<PlaneBackend>;
using Space3Representation = Representation<Space3Backend>;
using CayleyRepresentation = Representation<CayleyBackend>;

}  // namespace bowditch

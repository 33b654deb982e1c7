#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "bowditch/farey.hpp"
#include "bowditch/representation.hpp"

namespace bowditch {

struct PrimitiveClassInfo {
  Slope slope;
  Word word;  // the class representative P(slope)
};

struct ScanEntry {
  Slope slope;
  Word word;
  Real length;
};

struct ScanReport {
  long long max_word_length = 0;
  Real K = 0;
  std::vector<ScanEntry> sublevel;        // sorted by (length, slope)
  std::vector<Slope> non_hyperbolic;
  Real fitted_C = 0;                      // min over hyperbolic classes of |gamma| / l_S
  std::vector<std::string> violations;
};

// All primitive classes with cyclically reduced length <= max_len, generated
// by the Farey traversal pruned by F_{e0} <= max_len. Sorted by (length,
// slope) so merges are deterministic.
inline std::vector<PrimitiveClassInfo> enumerate_primitives(long long max_len) {
  if (max_len < 1) throw std::invalid_argument("enumerate_primitives: need L >= 1");
  std::vector<Slope> slopes{slope_infinity(), slope_zero()};
  struct Frame {
    long long lp, lq, rp, rq;
  };
  for (int sign : {+1, -1}) {
    std::vector<Frame> stack{{0, 1, 1, 0}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      long long mp = f.lp + f.rp, mq = f.lq + f.rq;
      if (mp + mq > max_len) continue;
      slopes.push_back(normalize_slope(sign * mp, mq));
      stack.push_back({f.lp, f.lq, mp, mq});
      stack.push_back({mp, mq, f.rp, f.rq});
    }
  }
  std::sort(slopes.begin(), slopes.end(), [](const Slope& a, const Slope& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<PrimitiveClassInfo> out;
  out.reserve(slopes.size());
  for (const Slope& s : slopes) out.push_back({s, primitive_word(s)});
  return out;
}

// Evaluates l_S over every class with |gamma| <= max_len and reports the
// K-sublevel set, the non-hyperbolic classes, and the fitted linear-growth
// constant.
template <class B>
ScanReport bq_scan(Representation<B>& rep, long long max_len, const Real& K) {
  ScanReport report;
  report.max_word_length = max_len;
  report.K = K;
  bool have_c = false;
  for (const PrimitiveClassInfo& cls : enumerate_primitives(max_len)) {
    Real l = rep.region_length(cls.slope);
    if (!rep.region_hyperbolic(cls.slope)) {
      report.non_hyperbolic.push_back(cls.slope);
    } else {
      Real ratio = Real(cls.slope.size()) / l;
      if (!have_c || ratio < report.fitted_C) {
        report.fitted_C = ratio;
        have_c = true;
      }
    }
    if (l <= K) report.sublevel.push_back({cls.slope, cls.word, l});
  }
  std::sort(report.sublevel.begin(), report.sublevel.end(),
            [](const ScanEntry& a, const ScanEntry& b) {
              if (a.length != b.length) return a.length < b.length;
              return a.slope < b.slope;
            });
  return report;
}

// (1/n) d(x0, g^n x0) from the axis basepoint; within 20 delta / n of the
// stable norm.
template <class B>
Real stable_norm_estimate(const B& backend, const typename B::Isometry& g, long long n) {
  if (n < 1) throw std::invalid_argument("stable_norm_estimate: need n >= 1");
  typename B::Point x0 =
      backend.is_hyperbolic(g) ? backend.axis_basepoint(g) : backend.base_point();
  typename B::Isometry acc = backend.identity();
  typename B::Isometry base = g;
  long long m = n;
  while (m > 0) {
    if (m & 1) acc = backend.compose(acc, base);
    base = backend.compose(base, base);
    m >>= 1;
  }
  return backend.dist(x0, backend.apply(acc, x0)) / Real(n);
}

// max(l_S(AB), l_S(AB^-1)) - (l_S(A) + l_S(B) - C); nonnegative when
// C = 432 delta and the preconditions hold.
template <class B>
Real product_inequality_margin(const B& backend, const typename B::Isometry& a,
                               const typename B::Isometry& b, const Real& C) {
  if (!backend.is_hyperbolic(a) || !backend.is_hyperbolic(b))
    throw std::invalid_argument("product_inequality_margin: both isometries must be hyperbolic");
  Real la = backend.stable_norm(a);
  Real lb = backend.stable_norm(b);
  if (la <= C || lb <= C)
    throw std::invalid_argument("product_inequality_margin: stable norms must exceed C");
  auto [ap, am] = backend.fixed_points(a);
  auto [bp, bm] = backend.fixed_points(b);
  for (const auto* x : {&ap, &am})
    for (const auto* y : {&bp, &bm})
      if (backend.boundary_eq(*x, *y))
        throw std::invalid_argument("product_inequality_margin: fixed-point sets intersect");
  Real lab = backend.stable_norm(backend.compose(a, b));
  Real lab_inv = backend.stable_norm(backend.compose(a, backend.invert(b)));
  return std::max(lab, lab_inv) - (la + lb - C);
}

// Relative residuals of the edge and vertex trace relations.
struct TraceResiduals {
  Real edge;
  Real vertex;
};

inline TraceResiduals trace_identity_check(const Space3Backend& backend, const Space3Isometry& a,
                                           const Space3Isometry& b) {
  Cplx ta = backend.trace(a);
  Cplx tb = backend.trace(b);
  Cplx tab = backend.trace(backend.compose(a, b));
  Cplx tab_inv = backend.trace(backend.compose(a, backend.invert(b)));
  Cplx comm = backend.trace(backend.compose(
      backend.compose(a, b), backend.compose(backend.invert(a), backend.invert(b))));
  TraceResiduals r;
  Real scale1 = std::max(Real(1), abs(ta * tb));
  r.edge = abs(tab + tab_inv - ta * tb) / scale1;
  Real scale2 = std::max(Real(1), abs(ta * tb * tab));
  r.vertex = abs(ta * ta + tb * tb + tab * tab - ta * tb * tab - comm - 2) / scale2;
  return r;
}

}  // namespace bowditch

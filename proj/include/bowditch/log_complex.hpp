#pragma once

#include <limits>
#include <stdexcept>

#include "bowditch/numeric.hpp"

namespace bowditch {

// A complex number exp(lm + i*arg) held in log-magnitude/argument form, so
// products, Fricke steps and trace chains stay representable far past the
// float range (magnitudes like e^500 and beyond). `flagged` marks a value
// whose computation hit catastrophic cancellation; callers fall back to a
// higher-precision matrix route.
struct LogComplex {
  Real lm;            // log|z|; -inf encodes z = 0
  Real arg;           // in (-pi, pi]
  bool flagged = false;

  bool zero() const { return lm == -std::numeric_limits<Real>::infinity(); }
};

inline LogComplex lc_zero() {
  return {-std::numeric_limits<Real>::infinity(), Real(0), false};
}

inline LogComplex lc_one() { return {Real(0), Real(0), false}; }

inline LogComplex lc_from_real(const Real& v) {
  if (v == 0) return lc_zero();
  return {log(abs(v)), v > 0 ? Real(0) : real_pi(), false};
}

inline LogComplex lc_from_complex(const Cplx& z) {
  Real m = abs(z);
  if (m == 0) return lc_zero();
  return {log(m), atan2(z.imag(), z.real()), false};
}

// Exponentiates back to rectangular form; only valid while exp(lm) is in
// range, which callers guarantee by checking lm first.
inline Cplx lc_to_complex(const LogComplex& z) {
  if (z.zero()) return Cplx(0);
  Real m = exp(z.lm);
  return Cplx(m * cos(z.arg), m * sin(z.arg));
}

inline LogComplex lc_neg(const LogComplex& z) {
  if (z.zero()) return z;
  LogComplex r = z;
  r.arg = wrap_angle(z.arg + real_pi());
  return r;
}

inline LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
  if (a.zero() || b.zero()) {
    LogComplex r = lc_zero();
    r.flagged = a.flagged || b.flagged;
    return r;
  }
  return {a.lm + b.lm, wrap_angle(a.arg + b.arg), a.flagged || b.flagged};
}

inline LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
  if (b.zero()) throw std::domain_error("log-domain division by zero");
  if (a.zero()) return a;
  return {a.lm - b.lm, wrap_angle(a.arg - b.arg), a.flagged || b.flagged};
}

inline LogComplex lc_sqrt(const LogComplex& z) {
  if (z.zero()) return z;
  return {z.lm / 2, z.arg / 2, z.flagged};
}

// Default cancellation threshold 2^-(precision_bits/4) for precision_bits=256.
inline Real default_cancel_eps() {
  static const Real v = ldexp(Real(1), -64);
  return v;
}

// z = a + b in log domain. Cancellation is flagged when the log-magnitudes
// agree within cancel_eps and the arguments nearly oppose.
inline LogComplex lc_add(const LogComplex& a, const LogComplex& b,
                         const Real& cancel_eps = default_cancel_eps()) {
  bool fl = a.flagged || b.flagged;
  if (a.zero()) {
    LogComplex r = b;
    r.flagged = fl;
    return r;
  }
  if (b.zero()) {
    LogComplex r = a;
    r.flagged = fl;
    return r;
  }
  const LogComplex& big = (a.lm >= b.lm) ? a : b;
  const LogComplex& small = (a.lm >= b.lm) ? b : a;
  Real d = small.lm - big.lm;  // <= 0
  // Summand below the 256-bit noise floor of the larger term.
  if (d < -280 * log(Real(2))) return {big.lm, big.arg, fl};
  Real dphi = wrap_angle(small.arg - big.arg);
  if (-d <= cancel_eps && abs(wrap_angle(dphi - real_pi())) <= cancel_eps) fl = true;
  Cplx w = exp(Cplx(d, Real(0))) * Cplx(cos(dphi), sin(dphi));
  Cplx s = Cplx(1) + w;
  Real m = abs(s);
  if (m == 0) {
    LogComplex r = lc_zero();
    r.flagged = true;
    return r;
  }
  return {big.lm + log(m), wrap_angle(big.arg + atan2(s.imag(), s.real())), fl};
}

inline LogComplex lc_sub(const LogComplex& a, const LogComplex& b,
                         const Real& cancel_eps = default_cancel_eps()) {
  return lc_add(a, lc_neg(b), cancel_eps);
}

// Farey-edge Fricke step: tr(uv) = tr(u) tr(v) - tr(uv^-1).
inline LogComplex fricke_step(const LogComplex& tr_u, const LogComplex& tr_v,
                              const LogComplex& tr_uv_inv,
                              const Real& cancel_eps = default_cancel_eps()) {
  return lc_sub(lc_mul(tr_u, tr_v), tr_uv_inv, cancel_eps);
}

// Rolling engine for the linear recurrence tr(A^{n+1}B) = tr(A) tr(A^n B) -
// tr(A^{n-1}B); starts from consecutive chain traces.
struct TraceChain {
  LogComplex tr_a;
  LogComplex prev;  // tr(A^{n-1} B)
  LogComplex cur;   // tr(A^n B)
  Real cancel_eps;

  TraceChain(LogComplex a, LogComplex t_prev, LogComplex t_cur,
             Real eps = default_cancel_eps())
      : tr_a(a), prev(t_prev), cur(t_cur), cancel_eps(eps) {}

  // Advances one step and returns tr(A^{n+1} B).
  LogComplex step() {
    LogComplex next = lc_sub(lc_mul(tr_a, cur), prev, cancel_eps);
    prev = cur;
    cur = next;
    return next;
  }
};

// Stable norm of a plane (PSL(2,R)) isometry from its trace:
// 2 arccosh(max(|tr|/2, 1)), evaluated in log domain for huge traces.
inline Real stable_norm_plane_from_trace(const LogComplex& tr) {
  if (tr.zero()) return Real(0);
  const Real log2 = log(Real(2));
  if (tr.lm < 40) {
    Real t = exp(tr.lm);  // |tr|
    return 2 * acosh_clamped(t / 2);
  }
  // l = 2 log(w + sqrt(w^2 - 1)), w = |tr|/2 >> 1; all terms positive.
  LogComplex w{tr.lm - log2, Real(0), false};
  LogComplex s = lc_sqrt(lc_sub(lc_mul(w, w), lc_one()));
  LogComplex z = lc_add(w, s);
  return 2 * z.lm;
}

// Stable norm of a space3 (SL(2,C)) isometry from its trace:
// 2 |Re arccosh(tr/2)| with the principal branch.
inline Real stable_norm_space3_from_trace(const LogComplex& tr) {
  if (tr.zero()) return Real(0);
  const Real log2 = log(Real(2));
  if (tr.lm < 40) {
    Cplx w = lc_to_complex(tr) / 2;
    return 2 * abs(acosh_principal(w).real());
  }
  LogComplex w{tr.lm - log2, tr.arg, tr.flagged};
  LogComplex s = lc_sqrt(lc_sub(lc_mul(w, w), lc_one()));
  LogComplex z = lc_add(w, s);
  return 2 * abs(z.lm);
}

}  // namespace bowditch

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <iomanip>
#include <sstream>
#include <string>

namespace bowditch {

namespace mp = boost::multiprecision;

// 256-bit binary floats everywhere; a 512-bit tier backs the cancellation
// fallback of the trace engine.
using Real = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;
using Real512 = mp::number<mp::cpp_bin_float<512, mp::digit_base_2>, mp::et_off>;
using Cplx = mp::number<mp::complex_adaptor<mp::cpp_bin_float<256, mp::digit_base_2>>, mp::et_off>;
using Cplx512 = mp::number<mp::complex_adaptor<mp::cpp_bin_float<512, mp::digit_base_2>>, mp::et_off>;

inline const Real& real_pi() {
  static const Real v = mp::default_ops::get_constant_pi<Real::backend_type>();
  return v;
}

inline Real parse_real(const std::string& s) { return Real(s); }

// Decimal rendering with 30 significant digits; report-stable across runs.
inline std::string dec30(const Real& x) {
  std::ostringstream os;
  os << std::setprecision(30) << x;
  return os.str();
}

inline Real acosh_clamped(const Real& x) { return x <= 1 ? Real(0) : acosh(x); }

// Principal 2x2 determinant-one complex arccosh; real part >= 0.
inline Cplx acosh_principal(const Cplx& w) {
  Cplx z = log(w + sqrt(w - 1) * sqrt(w + 1));
  if (z.real() < 0) z = -z;
  return z;
}

inline Real wrap_angle(Real a) {
  const Real pi = real_pi();
  const Real two_pi = 2 * pi;
  while (a > pi) a -= two_pi;
  while (a <= -pi) a += two_pi;
  return a;
}

// Thin-triangle constant of the real hyperbolic plane/space, log(1 + sqrt 2).
inline const Real& delta_hyperbolic_plane() {
  static const Real v = log(1 + sqrt(Real(2)));
  return v;
}

// Deterministic splitmix64, used by tests and randomized checks; avoids the
// implementation-defined std distributions.
struct SplitMix64 {
  unsigned long long state;
  explicit SplitMix64(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long long uniform_int(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

}  // namespace bowditch

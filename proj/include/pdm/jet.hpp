#pragma once

// Third-order truncated Taylor arithmetic. A Jet3 carries a value together
// with its first three derivatives with respect to one independent variable.

#include <array>
#include <cmath>
#include <complex>

namespace pdm {

template <typename Scalar>
struct Jet3 {
  std::array<Scalar, 4> v{};

  constexpr Jet3() = default;
  constexpr Jet3(Scalar v0, Scalar v1 = Scalar(0), Scalar v2 = Scalar(0), Scalar v3 = Scalar(0))
      : v{v0, v1, v2, v3} {}

  static constexpr Jet3 variable(Scalar x) { return Jet3(x, Scalar(1)); }
  static constexpr Jet3 constant(Scalar c) { return Jet3(c); }

  constexpr const Scalar& operator[](int k) const { return v[k]; }
  constexpr Scalar& operator[](int k) { return v[k]; }

  constexpr bool is_constant() const {
    return v[1] == Scalar(0) && v[2] == Scalar(0) && v[3] == Scalar(0);
  }

  Jet3& operator+=(const Jet3& o) {
    for (int k = 0; k < 4; ++k) v[k] += o.v[k];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (int k = 0; k < 4; ++k) v[k] -= o.v[k];
    return *this;
  }
};

/// Composes an outer scalar function with known derivatives f0..f3 (taken at
/// u.v[0]) with the inner jet u (Faa di Bruno, truncated at order 3).
template <typename Scalar>
Jet3<Scalar> compose(const Jet3<Scalar>& u, Scalar f0, Scalar f1, Scalar f2, Scalar f3) {
  const Scalar u1 = u[1], u2 = u[2], u3 = u[3];
  return {f0, f1 * u1, f2 * u1 * u1 + f1 * u2,
          f3 * u1 * u1 * u1 + Scalar(3) * f2 * u1 * u2 + f1 * u3};
}

template <typename Scalar>
Jet3<Scalar> operator-(const Jet3<Scalar>& a) {
  return {-a[0], -a[1], -a[2], -a[3]};
}

template <typename Scalar>
Jet3<Scalar> operator+(Jet3<Scalar> a, const Jet3<Scalar>& b) {
  return a += b;
}

template <typename Scalar>
Jet3<Scalar> operator-(Jet3<Scalar> a, const Jet3<Scalar>& b) {
  return a -= b;
}

template <typename Scalar>
Jet3<Scalar> operator*(const Jet3<Scalar>& a, const Jet3<Scalar>& b) {
  return {a[0] * b[0], a[1] * b[0] + a[0] * b[1],
          a[2] * b[0] + Scalar(2) * a[1] * b[1] + a[0] * b[2],
          a[3] * b[0] + Scalar(3) * a[2] * b[1] + Scalar(3) * a[1] * b[2] + a[0] * b[3]};
}

template <typename Scalar>
Jet3<Scalar> reciprocal(const Jet3<Scalar>& a) {
  const Scalar r = Scalar(1) / a[0];
  return compose(a, r, -r * r, Scalar(2) * r * r * r, Scalar(-6) * r * r * r * r);
}

template <typename Scalar>
Jet3<Scalar> operator/(const Jet3<Scalar>& a, const Jet3<Scalar>& b) {
  return a * reciprocal(b);
}

template <typename Scalar>
Jet3<Scalar> operator*(Scalar s, const Jet3<Scalar>& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

template <typename Scalar>
Jet3<Scalar> operator*(const Jet3<Scalar>& a, Scalar s) {
  return s * a;
}

template <typename Scalar>
Jet3<Scalar> operator+(const Jet3<Scalar>& a, Scalar s) {
  return {a[0] + s, a[1], a[2], a[3]};
}

template <typename Scalar>
Jet3<Scalar> operator+(Scalar s, const Jet3<Scalar>& a) {
  return a + s;
}

template <typename Scalar>
Jet3<Scalar> operator-(const Jet3<Scalar>& a, Scalar s) {
  return {a[0] - s, a[1], a[2], a[3]};
}

template <typename Scalar>
Jet3<Scalar> operator-(Scalar s, const Jet3<Scalar>& a) {
  return {s - a[0], -a[1], -a[2], -a[3]};
}

template <typename Scalar>
Jet3<Scalar> exp(const Jet3<Scalar>& a) {
  using std::exp;
  const Scalar e = exp(a[0]);
  return compose(a, e, e, e, e);
}

template <typename Scalar>
Jet3<Scalar> log(const Jet3<Scalar>& a) {
  using std::log;
  const Scalar r = Scalar(1) / a[0];
  return compose(a, log(a[0]), r, -r * r, Scalar(2) * r * r * r);
}

template <typename Scalar>
Jet3<Scalar> sqrt(const Jet3<Scalar>& a) {
  using std::sqrt;
  const Scalar s = sqrt(a[0]);
  const Scalar r = Scalar(1) / a[0];
  return compose(a, s, Scalar(0.5) * s * r, Scalar(-0.25) * s * r * r,
                 Scalar(0.375) * s * r * r * r);
}

template <typename Scalar>
Jet3<Scalar> sin(const Jet3<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(a[0]), c = cos(a[0]);
  return compose(a, s, c, -s, -c);
}

template <typename Scalar>
Jet3<Scalar> cos(const Jet3<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(a[0]), c = cos(a[0]);
  return compose(a, c, -s, -c, s);
}

template <typename Scalar>
Jet3<Scalar> sinh(const Jet3<Scalar>& a) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(a[0]), c = cosh(a[0]);
  return compose(a, s, c, s, c);
}

template <typename Scalar>
Jet3<Scalar> cosh(const Jet3<Scalar>& a) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(a[0]), c = cosh(a[0]);
  return compose(a, c, s, c, s);
}

/// a^p for a real exponent p. Integer p accepts any base; the zero-coefficient
/// terms of the falling factorial are dropped so 0^2 has a finite third derivative.
template <typename Scalar>
Jet3<Scalar> pow(const Jet3<Scalar>& a, double p) {
  using std::pow;
  std::array<Scalar, 4> f{};
  double coeff = 1.0;
  for (int k = 0; k < 4; ++k) {
    f[k] = coeff == 0.0 ? Scalar(0) : Scalar(coeff) * pow(a[0], p - k);
    coeff *= (p - k);
  }
  return compose(a, f[0], f[1], f[2], f[3]);
}

/// a^b with both sides jets; requires the base to be positive.
template <typename Scalar>
Jet3<Scalar> pow(const Jet3<Scalar>& a, const Jet3<Scalar>& b) {
  return exp(b * log(a));
}

}  // namespace pdm

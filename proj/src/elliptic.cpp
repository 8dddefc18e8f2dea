#include "drift/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace drift {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Below this complementary modulus the AGM phase recovery is useless;
// the k = 1 closed forms with the kprime^2 correction take over.
constexpr double kSeparatrixKprime = 1e-7;

double gudermannian(double u) {
  return 2.0 * std::atan(std::tanh(0.5 * u));
}

}  // namespace

double agm(double a, double b) {
  while (std::abs(a - b) > kEps * a) {
    double t = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = t;
  }
  return 0.5 * (a + b);
}

double complete_K_from_kprime(double kprime) {
  if (!(kprime > 0.0) || kprime > 1.0)
    throw std::domain_error("complete_K: complementary modulus outside (0, 1]");
  return kPi / (2.0 * agm(1.0, kprime));
}

double complete_K(double k) {
  if (k < 0.0 || k >= 1.0)
    throw std::domain_error("complete_K: modulus outside [0, 1)");
  return complete_K_from_kprime(std::sqrt((1.0 - k) * (1.0 + k)));
}

double complete_E(double k) {
  if (k < 0.0 || k > 1.0)
    throw std::domain_error("complete_E: modulus outside [0, 1]");
  if (k == 0.0) return kPi / 2.0;
  if (k == 1.0) return 1.0;
  // AGM with the c-sequence sum, E = K (1 - sum 2^{n-1} c_n^2).
  double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k)), c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  while (std::abs(c) > kEps * a) {
    c = 0.5 * (a - b);
    double t = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = t;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

namespace detail {

double carlson_rf(double x, double y, double z) {
  // Carlson 1995, duplication until the arguments coalesce.
  double A0 = (x + y + z) / 3.0;
  double A = A0;
  double Q = std::pow(3.0 * kEps * 0.01, -1.0 / 8.0) *
             std::max({std::abs(A - x), std::abs(A - y), std::abs(A - z)});
  double mul = 1.0;
  while (Q >= mul * std::abs(A)) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    A = 0.25 * (A + lam);
    mul *= 4.0;
  }
  // (A - x)/A at the final level equals (A0 - x0)/(mul * A).
  double X = 1.0 - x / A;
  double Y = 1.0 - y / A;
  double Z = -(X + Y);
  double E2 = X * Y - Z * Z;
  double E3 = X * Y * Z;
  // DLMF 19.36.1 in Horner form.
  return (E3 * (6930.0 * E3 + E2 * (15015.0 * E2 - 16380.0) + 17160.0) +
          E2 * ((10010.0 - 5775.0 * E2) * E2 - 24024.0) + 240240.0) /
         (240240.0 * std::sqrt(A));
}

double carlson_rd(double x, double y, double z) {
  double A = (x + y + 3.0 * z) / 5.0;
  double Q = std::pow(0.25 * kEps * 0.01, -1.0 / 8.0) *
             std::max({std::abs(A - x), std::abs(A - y), std::abs(A - z)});
  double mul = 1.0;
  double s = 0.0;
  while (Q >= mul * std::abs(A)) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sy * sz + sz * sx;
    s += 1.0 / (mul * sz * (z + lam));
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    A = 0.25 * (A + lam);
    mul *= 4.0;
  }
  double X = 1.0 - x / A;
  double Y = 1.0 - y / A;
  double Z = -(X + Y) / 3.0;
  double E2 = X * Y - 6.0 * Z * Z;
  double E3 = (3.0 * X * Y - 8.0 * Z * Z) * Z;
  double E4 = 3.0 * (X * Y - Z * Z) * Z * Z;
  double E5 = X * Y * Z * Z * Z;
  // DLMF 19.36.2 in Horner form.
  double series =
      ((471240.0 - 540540.0 * E2) * E5 +
       (612612.0 * E2 - 540540.0 * E3 - 556920.0) * E4 +
       E3 * (306306.0 * E3 + E2 * (675675.0 * E2 - 706860.0) + 680680.0) +
       E2 * ((417690.0 - 255255.0 * E2) * E2 - 875160.0) + 4084080.0) /
      4084080.0;
  return series / (mul * A * std::sqrt(A)) + 3.0 * s;
}

SnCnDn sncndn(double u, double mc) {
  // Bulirsch's sncndn for mc = kprime^2 in [0, 1].
  if (mc <= 0.0) {
    double cn = 1.0 / std::cosh(u);
    return {std::tanh(u), cn, cn};
  }
  if (mc >= 1.0) return {std::sin(u), std::cos(u), 1.0};

  constexpr int kMaxLevels = 32;
  const double tol = std::sqrt(kEps * 0.01);
  double m[kMaxLevels], n[kMaxLevels];
  double a = 1.0, c = 0.0;
  int l = 0;
  for (; l < kMaxLevels; ++l) {
    m[l] = a;
    mc = std::sqrt(mc);
    n[l] = mc;
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= tol * a) {
      ++l;
      break;
    }
    mc *= a;
    a = c;
  }
  double x = c * u;
  double sn = std::sin(x), cn = std::cos(x), dn = 1.0;
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    while (l-- > 0) {
      double b = m[l];
      a *= c;
      c *= dn;
      dn = (n[l] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -a : a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

}  // namespace detail

namespace {

// k = 1 closed forms plus the first-order kprime^2 correction.  Valid
// only for |u| <= K; callers reduce by the period first.
SnCnDn sncndn_separatrix_core(double u, double kprime) {
  double sech = 1.0 / std::cosh(u);
  double tanh = std::tanh(u);
  double shch = std::sinh(u) * std::cosh(u);
  double q = 0.25 * kprime * kprime;
  return {tanh + q * (shch - u) * sech * sech,
          sech + q * (u - shch) * tanh * sech,
          sech + q * (shch + u) * tanh * sech};
}

double am_separatrix_core(double u, double kprime) {
  double q = 0.25 * kprime * kprime;
  return gudermannian(u) + q * (std::sinh(u) * std::cosh(u) - u) / std::cosh(u);
}

// sn, cn flip sign over a half period 2K; dn is 2K-periodic.
SnCnDn sncndn_near_separatrix(double u, double kprime, double big_k) {
  if (kprime <= 0.0) return sncndn_separatrix_core(u, 0.0);
  double n = std::round(u / (2.0 * big_k));
  SnCnDn s = sncndn_separatrix_core(u - 2.0 * big_k * n, kprime);
  double sign = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
  return {sign * s.sn, sign * s.cn, s.dn};
}

double am_near_separatrix(double u, double kprime, double big_k) {
  if (kprime <= 0.0) return am_separatrix_core(u, 0.0);
  double n = std::round(u / (2.0 * big_k));
  return n * kPi + am_separatrix_core(u - 2.0 * big_k * n, kprime);
}

// Reduce to |r| <= K and recover the amplitude from the trio; cn >= 0
// there, so atan2 gives the principal branch directly.
double am_reduced(double u, double mc, double big_k) {
  double n = std::round(u / (2.0 * big_k));
  double r = u - 2.0 * big_k * n;
  SnCnDn s = detail::sncndn(r, mc);
  return n * kPi + std::atan2(s.sn, s.cn);
}

}  // namespace

EllipticModulus modulus_from_kprime(double kprime) {
  if (!(kprime > 0.0) || kprime > 1.0)
    throw std::domain_error("modulus_from_kprime: kprime outside (0, 1]");
  EllipticModulus m;
  m.kprime = kprime;
  m.k = std::sqrt((1.0 - kprime) * (1.0 + kprime));
  m.big_k = complete_K_from_kprime(kprime);
  m.big_k_prime = m.k > 0.0 ? complete_K_from_kprime(m.k)
                            : std::numeric_limits<double>::infinity();
  m.big_e = kprime < kSeparatrixKprime
                ? 1.0 + 0.5 * kprime * kprime * (std::log(4.0 / kprime) - 0.5)
                : complete_E(m.k);
  return m;
}

EllipticModulus modulus_from_k(double k) {
  if (k < 0.0 || k >= 1.0)
    throw std::domain_error("modulus_from_k: modulus outside [0, 1)");
  return modulus_from_kprime(std::sqrt((1.0 - k) * (1.0 + k)));
}

SnCnDn jacobi_sn_cn_dn(double u, const EllipticModulus& m) {
  if (m.kprime < kSeparatrixKprime)
    return sncndn_near_separatrix(u, m.kprime, m.big_k);
  return detail::sncndn(u, m.kprime * m.kprime);
}

double jacobi_am(double u, const EllipticModulus& m) {
  if (m.kprime < kSeparatrixKprime)
    return am_near_separatrix(u, m.kprime, m.big_k);
  return am_reduced(u, m.kprime * m.kprime, m.big_k);
}

SnCnDn jacobi_sn_cn_dn(double u, double k) {
  if (k < 0.0 || k > 1.0)
    throw std::domain_error("jacobi_sn_cn_dn: modulus outside [0, 1]");
  if (k == 1.0) return sncndn_separatrix_core(u, 0.0);
  double kprime = std::sqrt((1.0 - k) * (1.0 + k));
  if (kprime < kSeparatrixKprime)
    return sncndn_near_separatrix(u, kprime, complete_K_from_kprime(kprime));
  return detail::sncndn(u, kprime * kprime);
}

double jacobi_am(double u, double k) {
  if (k < 0.0 || k > 1.0)
    throw std::domain_error("jacobi_am: modulus outside [0, 1]");
  if (k == 0.0) return u;
  if (k == 1.0) return gudermannian(u);
  double kprime = std::sqrt((1.0 - k) * (1.0 + k));
  if (kprime < kSeparatrixKprime)
    return am_near_separatrix(u, kprime, complete_K_from_kprime(kprime));
  return am_reduced(u, kprime * kprime, complete_K_from_kprime(kprime));
}

double incomplete_E(double phi, double k) {
  if (k < 0.0 || k > 1.0)
    throw std::domain_error("incomplete_E: modulus outside [0, 1]");
  if (phi == 0.0) return 0.0;
  if (phi < 0.0) return -incomplete_E(-phi, k);
  if (k == 1.0) {
    // E(phi, 1) = sin(phi) on [-pi/2, pi/2], extended by E(phi+pi) = E(phi)+2.
    double n = std::round(phi / kPi);
    return 2.0 * n + std::sin(phi - n * kPi);
  }
  double n = std::round(phi / kPi);
  double r = phi - n * kPi;  // |r| <= pi/2
  double value = n == 0.0 ? 0.0 : 2.0 * n * complete_E(k);
  double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::abs(r);
  if (std::abs(r - kPi / 2.0) < 4.0 * kEps) {
    value += sign * complete_E(k);
    return value;
  }
  double s = std::sin(r), c = std::cos(r);
  double s2 = s * s, c2 = c * c;
  double d2 = 1.0 - k * k * s2;
  value += sign * (s * detail::carlson_rf(c2, d2, 1.0) -
                   k * k * s2 * s / 3.0 * detail::carlson_rd(c2, d2, 1.0));
  return value;
}

}  // namespace drift

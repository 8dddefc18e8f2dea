#ifndef DRIFT_ELLIPTIC_HPP
#define DRIFT_ELLIPTIC_HPP

#include <cstddef>

namespace drift {

/// Modulus k together with the cached complete integrals every other
/// module keeps asking for.  kprime is carried explicitly because near
/// the separatrix k rounds to 1 while kprime still holds full precision.
struct EllipticModulus {
  double k = 0;
  double kprime = 1;        // sqrt(1 - k^2)
  double big_k = 0;         // K(k)
  double big_k_prime = 0;   // K(kprime)
  double big_e = 0;         // E(k)
};

EllipticModulus modulus_from_k(double k);
EllipticModulus modulus_from_kprime(double kprime);

double agm(double a, double b);

// Complete integrals.  K diverges at k = 1 and both reject arguments
// outside their domain with std::domain_error.
double complete_K(double k);
double complete_K_from_kprime(double kprime);
double complete_E(double k);

// Legendre incomplete integral of the second kind E(phi, k).
double incomplete_E(double phi, double k);

struct SnCnDn {
  double sn, cn, dn;
};

// Copolar trio and amplitude, valid for any real u and k in [0, 1].
SnCnDn jacobi_sn_cn_dn(double u, double k);
double jacobi_am(double u, double k);

// Same, but driven off a prepared modulus so the near-separatrix branch
// sees the exact complementary modulus instead of 1 - k*k roundoff.
SnCnDn jacobi_sn_cn_dn(double u, const EllipticModulus& m);
double jacobi_am(double u, const EllipticModulus& m);

namespace detail {
// Carlson symmetric forms used by incomplete_E.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
// Bulirsch sncndn with the complementary parameter mc = kprime^2.
SnCnDn sncndn(double u, double mc);
}  // namespace detail

}  // namespace drift

#endif

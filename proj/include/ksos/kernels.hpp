#pragma once

#include "ksos/geometry.hpp"

namespace ksos {

// Matern-family kernel normalized so k(x,x) = 1:
//   k(x,y) = c_nu rho^nu K_nu(rho),  rho = ||x-y|| / sigma,  nu = s - d/2,
// with K_nu the modified Bessel function of the second kind and
// c_nu = 2^{1-nu} / Gamma(nu). Half-integer orders use the exponential
// closed forms; other orders go through the Bessel backend.
struct KernelSpec {
    int d;         // ambient dimension
    double s;      // smoothness, s > d/2
    double sigma;  // length scale, > 0

    double nu() const { return s - 0.5 * d; }

    static KernelSpec make(int d, double s, double sigma = 1.0);
};

// Constants entering the uniform-inequality bound, derived from (d, s, m):
//   M   = (2 pi)^{d/2} 2^{s+1/2}
//   D_m = (2 pi)^{d/4} sqrt( G(m+d/2) G(s-d/2-m) / (G(s-d/2) G(d/2)) ) / sigma^m
//   C0  = 3 max(sqrt(d), 3 sqrt(2d) (m-1))^{2m} / m!
struct KernelConstants {
    double M;
    double D_m;
    double C0;
    int m;
};

// Kernel value for the scaled radius rho = ||x-y|| / sigma.
double kernel_profile(const KernelSpec& spec, double rho);

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y);

// Running count of kernel_eval calls, for cost assertions in tests.
long kernel_eval_count();
void reset_kernel_eval_count();

// True when the half-integer closed forms apply (nu in {1/2,3/2,5/2,7/2}).
bool has_closed_form(const KernelSpec& spec);

// The algebra constant M alone; defined for every valid spec, unlike D_m
// which needs an admissible order m.
double algebra_constant(const KernelSpec& spec);

KernelConstants trace_constants(const KernelSpec& spec, int m);

double c0_constant(int m, int d);

}  // namespace ksos

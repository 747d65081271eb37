#include "ksos/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace ksos {

KernelSpec KernelSpec::make(int d, double s, double sigma) {
    if (d < 1) throw std::invalid_argument("KernelSpec: d must be >= 1");
    if (!(s > 0.5 * d)) throw std::invalid_argument("KernelSpec: need s > d/2");
    if (!(sigma > 0.0)) throw std::invalid_argument("KernelSpec: sigma must be positive");
    return KernelSpec{d, s, sigma};
}

namespace {

bool is_half_integer(double nu, int& twice) {
    double t = 2.0 * nu;
    double rounded = std::round(t);
    if (std::abs(t - rounded) > 1e-12) return false;
    twice = static_cast<int>(rounded);
    return twice % 2 == 1 && twice >= 1;
}

// nu = p + 1/2:  k(rho) = e^{-rho} * (2^p p! / (2p)!) * sum_k C(p,k)-weighted powers
double closed_form(int p, double rho) {
    // polynomial coefficients a_k = (p+k)! / (k! (p-k)!) / 2^k, term rho^{p-k}
    double poly = 0.0;
    double prefactor =
        std::exp(p * std::log(2.0) + std::lgamma(p + 1.0) - std::lgamma(2.0 * p + 1.0));
    for (int k = 0; k <= p; ++k) {
        double a = std::exp(std::lgamma(p + k + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(p - k + 1.0)) /
                   std::pow(2.0, k);
        poly += a * std::pow(rho, p - k);
    }
    return prefactor * poly * std::exp(-rho);
}

}  // namespace

bool has_closed_form(const KernelSpec& spec) {
    int twice = 0;
    if (!is_half_integer(spec.nu(), twice)) return false;
    return twice == 1 || twice == 3 || twice == 5 || twice == 7;
}

double kernel_profile(const KernelSpec& spec, double rho) {
    if (rho < 0.0) throw std::invalid_argument("kernel_profile: negative radius");
    if (rho == 0.0) return 1.0;
    const double nu = spec.nu();
    int twice = 0;
    if (is_half_integer(nu, twice)) return closed_form((twice - 1) / 2, rho);
#if defined(__GLIBCXX__) || defined(_GLIBCXX_RELEASE)
    // general-order backend via the modified Bessel function
    double log_c = (1.0 - nu) * std::log(2.0) - std::lgamma(nu);
    return std::exp(log_c + nu * std::log(rho)) * std::cyl_bessel_k(nu, rho);
#else
    throw std::domain_error("kernel_profile: order is not half-integer and no Bessel backend is available");
#endif
}

namespace {
std::atomic<long> g_eval_count{0};
}

long kernel_eval_count() { return g_eval_count.load(std::memory_order_relaxed); }
void reset_kernel_eval_count() { g_eval_count.store(0, std::memory_order_relaxed); }

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y) {
    if (x.size() != spec.d || y.size() != spec.d)
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    g_eval_count.fetch_add(1, std::memory_order_relaxed);
    return kernel_profile(spec, (x - y).norm() / spec.sigma);
}

double c0_constant(int m, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("c0_constant: need m >= 1 and d >= 1");
    double base = std::max(std::sqrt(static_cast<double>(d)),
                           3.0 * std::sqrt(2.0 * d) * (m - 1));
    return 3.0 * std::exp(2.0 * m * std::log(base) - std::lgamma(m + 1.0));
}

double algebra_constant(const KernelSpec& spec) {
    return std::pow(2.0 * M_PI, 0.5 * spec.d) * std::pow(2.0, spec.s + 0.5);
}

KernelConstants trace_constants(const KernelSpec& spec, int m) {
    if (m < 1) throw std::invalid_argument("trace_constants: m must be a positive integer");
    const double nu = spec.nu();
    if (!(m < nu))
        throw std::invalid_argument("trace_constants: precondition m < s - d/2 violated");
    const double d = spec.d;
    const double M = algebra_constant(spec);
    double log_Dm = 0.25 * d * std::log(2.0 * M_PI) +
                    0.5 * (std::lgamma(m + 0.5 * d) + std::lgamma(nu - m) -
                           std::lgamma(nu) - std::lgamma(0.5 * d));
    // derivatives of k(./sigma) pick up sigma^{-m}
    const double D_m = std::exp(log_Dm) / std::pow(spec.sigma, m);
    return KernelConstants{M, D_m, c0_constant(m, spec.d), m};
}

}  // namespace ksos

#pragma once

#include "bergball/functions.hpp"

namespace bergball {

// Parameters of the weighted reproducing kernel
//   K_z(w) = gamma(n,p,alpha) (1 - <w,z>)^{-(n + alpha p)},
// gamma(n,p,alpha) = Gamma(n + alpha p) / (Gamma(alpha p) Gamma(n+1)).
struct KernelParams {
    SpaceParams sp;
    double s = 0.0;      // n + alpha p
    double gamma = 0.0;  // normalizing constant

    explicit KernelParams(const SpaceParams& params) : sp(params) {
        double ap = sp.ap();
        if (ap <= 0.0) throw std::invalid_argument("KernelParams: requires alpha*p > 0");
        s = sp.n + ap;
        gamma = std::exp(std::lgamma(sp.n + ap) - std::lgamma(ap) - std::lgamma(sp.n + 1.0));
    }

    double weight_exponent() const { return sp.ap() - 1.0; }
};

inline Cplx safe_one_minus(Cplx t, const char* who) {
    Cplx b = 1.0 - t;
    if (b.real() <= 0.0)
        throw std::domain_error(std::string(who) + ": Re(1 - <z,w>) <= 0, principal power undefined");
    return b;
}

// Cauchy-Szego kernel (1 - <z,xi>)^{-n}.
inline Cplx cauchy_kernel(const CVec& z, const CVec& xi, int n) {
    Cplx b = safe_one_minus(herm(z, xi), "cauchy_kernel");
    if (std::abs(b) < 1e-14) throw std::domain_error("cauchy_kernel: singular configuration");
    return ipow(b, -n);
}

inline Cplx bergman_kernel(const CVec& z, const CVec& w, const KernelParams& kp) {
    Cplx b = safe_one_minus(herm(w, z), "bergman_kernel");
    return kp.gamma * cpow_principal(b, -kp.s);
}

// k_a(z) = ( rho(a) / (1 - <z,a>)^2 )^{n/p + alpha}; the exponent base stays
// in the right half plane, so the principal power factors through the square.
inline Cplx k_weight(const CVec& a, const CVec& z, const SpaceParams& sp) {
    double e = sp.seq_exponent();
    Cplx b = safe_one_minus(herm(z, a), "k_weight");
    return std::exp(e * (std::log(rho(a)) - 2.0 * std::log(b)));
}

// T_a(f) = k_a . (f o phi_a), a norm isometry of the weighted space.
inline Fun t_a(const Fun& f, const CVec& a, const SpaceParams& sp) {
    auto phi = std::make_shared<Automorphism>(a);
    SpaceParams params = sp;
    return Fun(f.n,
               [f, phi, params](const CVec& z) { return k_weight(phi->a, z, params) * f((*phi)(z)); },
               f.tag);
}

inline Fun t_a(const Fun& f, const CVec& a, const KernelParams& kp) { return t_a(f, a, kp.sp); }

}  // namespace bergball

#pragma once

#include "bergball/core.hpp"

namespace bergball {

// rho(z) = 1 - |z|^2, the defining function of the unit ball.
inline double rho(const CVec& z) { return 1.0 - z.squaredNorm(); }

// Hermitian product <z,w> = sum z_j conj(w_j).
inline Cplx herm(const CVec& z, const CVec& w) {
    if (z.size() != w.size())
        throw std::invalid_argument("herm: dimension mismatch (" + std::to_string(z.size()) +
                                    " vs " + std::to_string(w.size()) + ")");
    Cplx s = 0.0;
    for (int j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

// Bilinear dot product z.w = sum z_j w_j.
inline Cplx dot(const CVec& z, const CVec& w) {
    if (z.size() != w.size()) throw std::invalid_argument("dot: dimension mismatch");
    Cplx s = 0.0;
    for (int j = 0; j < z.size(); ++j) s += z[j] * w[j];
    return s;
}

// The involutive automorphism of the ball exchanging 0 and a,
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),
// with P_a the projection onto span(a), Q_a = id - P_a, s_a = sqrt(1-|a|^2).
// phi_0 = -id by convention (the limit of the formula).
struct Automorphism {
    CVec a;
    double a2;  // |a|^2
    double s;   // sqrt(1 - |a|^2)

    explicit Automorphism(CVec center) : a(std::move(center)) {
        a2 = a.squaredNorm();
        if (a2 >= 1.0) throw std::invalid_argument("Automorphism: center must be interior, |a| < 1");
        s = std::sqrt(1.0 - a2);
    }

    int dim() const { return static_cast<int>(a.size()); }

    CVec operator()(const CVec& z) const {
        if (z.size() != a.size()) throw std::invalid_argument("Automorphism: dimension mismatch");
        if (a2 == 0.0) return -z;
        Cplx t = herm(z, a);
        CVec num = a - ((1.0 - s) * t / a2) * a - s * z;
        return num / (1.0 - t);
    }

    // Holomorphic Jacobian matrix d(phi_a)_j / d z_k.
    CMat jacobian(const CVec& z) const {
        int n = dim();
        if (a2 == 0.0) return -CMat::Identity(n, n);
        Cplx t = herm(z, a);
        Cplx d = 1.0 - t;
        CVec num = a - ((1.0 - s) * t / a2) * a - s * z;
        CMat jac(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Cplx dn = -((1.0 - s) / a2) * std::conj(a[k]) * a[j];
                if (j == k) dn -= s;
                jac(j, k) = dn / d + num[j] * std::conj(a[k]) / (d * d);
            }
        return jac;
    }

    Cplx jacobian_det(const CVec& z) const {
        int n = dim();
        if (a2 == 0.0) return (n % 2 == 0) ? 1.0 : -1.0;
        return jacobian(z).determinant();
    }
};

inline CVec moebius(const CVec& a, const CVec& z) { return Automorphism(a)(z); }

inline Cplx moebius_jacobian(const CVec& a, const CVec& z) { return Automorphism(a).jacobian_det(z); }

// Pseudo-hyperbolic separation |phi_a(b)| = |phi_b(a)|.
inline double pseudo_distance(const CVec& a, const CVec& b) { return Automorphism(a)(b).norm(); }

}  // namespace bergball

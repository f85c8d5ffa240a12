#pragma once

#include <functional>
#include <map>
#include <utility>

#include "bergball/quadrature.hpp"

namespace bergball {

// Holomorphic polynomial in n complex variables, stored as a multi-index
// coefficient map. Evaluation is exact on the closed ball.
struct Poly {
    int n = 1;
    int degree_bound = 0;
    std::map<MultiIndex, Cplx> coef;

    Poly() = default;
    explicit Poly(int dim) : n(dim) {}

    static Poly constant(int dim, Cplx c) {
        Poly p(dim);
        if (std::abs(c) > 0.0) p.coef[MultiIndex(dim, 0)] = c;
        return p;
    }

    static Poly coordinate(int dim, int j) {
        Poly p(dim);
        p.degree_bound = 1;
        MultiIndex t(dim, 0);
        t[j] = 1;
        p.coef[t] = 1.0;
        return p;
    }

    static Poly monomial_term(int dim, MultiIndex t, Cplx c) {
        Poly p(dim);
        p.degree_bound = mi_order(t);
        p.coef[std::move(t)] = c;
        return p;
    }

    Cplx operator()(const CVec& z) const {
        Cplx acc = 0.0;
        for (const auto& [t, c] : coef) acc += c * monomial(z, t);
        return acc;
    }

    Poly& prune(double eps = 1e-15) {
        for (auto it = coef.begin(); it != coef.end();)
            it = (std::abs(it->second) < eps) ? coef.erase(it) : std::next(it);
        return *this;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.n != b.n) throw std::invalid_argument("Poly: dimension mismatch");
        Poly r = a;
        r.degree_bound = std::max(a.degree_bound, b.degree_bound);
        for (const auto& [t, c] : b.coef) r.coef[t] += c;
        return r.prune();
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * Cplx(-1.0)); }

    friend Poly operator*(const Poly& a, Cplx s) {
        Poly r = a;
        for (auto& [t, c] : r.coef) c *= s;
        return r.prune();
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.n != b.n) throw std::invalid_argument("Poly: dimension mismatch");
        Poly r(a.n);
        r.degree_bound = a.degree_bound + b.degree_bound;
        for (const auto& [ta, ca] : a.coef)
            for (const auto& [tb, cb] : b.coef) {
                MultiIndex t(a.n);
                for (int j = 0; j < a.n; ++j) t[j] = ta[j] + tb[j];
                r.coef[t] += ca * cb;
            }
        return r.prune();
    }
};

enum class Smoothness { holomorphic, smooth };

// A scalar function of a point of the closed ball.
struct Fun {
    int n = 1;
    Smoothness tag = Smoothness::smooth;
    std::function<Cplx(const CVec&)> f;

    Fun() = default;
    Fun(int dim, std::function<Cplx(const CVec&)> fn, Smoothness s = Smoothness::smooth)
        : n(dim), tag(s), f(std::move(fn)) {}
    Fun(const Poly& p) : n(p.n), tag(Smoothness::holomorphic), f(p) {}

    Cplx operator()(const CVec& z) const { return f(z); }
};

using VecFun = std::vector<Fun>;

struct SpaceParams {
    int n = 1;
    double p = 2.0;
    double alpha = 0.5;

    double ap() const { return alpha * p; }
    // the sequence-space weight exponent n/p + alpha
    double seq_exponent() const { return n / p + alpha; }

    // conjugate pair (q, beta) with 1/p + 1/q = 1 and alpha p = beta q
    SpaceParams conjugate() const {
        if (p <= 1.0 || !std::isfinite(p))
            throw std::invalid_argument("SpaceParams: conjugate requires 1 < p < inf");
        double q = p / (p - 1.0);
        return {n, q, alpha * p / q};
    }

    void require_gleason_range() const {
        if (p <= 1.0) throw std::invalid_argument("SpaceParams: Gleason operators require p > 1");
        if (alpha != 0.0 && alpha < 1.0 / p)
            throw std::invalid_argument("SpaceParams: alpha must be 0 or >= 1/p");
    }
};

// Weighted norm ||f||_{p,alpha} = [ int |f|^p rho^{alpha p - 1} dnu ]^{1/p}.
inline double norm_pa(const Fun& f, const SpaceParams& sp, const BallRule& rule) {
    if (sp.alpha <= 0.0)
        throw std::invalid_argument("norm_pa: ball rule path requires alpha > 0 (use a sphere rule for alpha = 0)");
    if (std::abs(rule.c - (sp.ap() - 1.0)) > 1e-10)
        throw std::invalid_argument("norm_pa: rule weight exponent must equal alpha*p - 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * std::pow(std::abs(f(rule.nodes[i])), sp.p);
    return std::pow(acc, 1.0 / sp.p);
}

// Hardy norm (alpha = 0). Polynomials are evaluated on the boundary itself;
// other holomorphic functions at radius 1 - 1e-6, a certified lower bound
// since the defining sup over radii is monotone.
inline double norm_pa(const Fun& f, const SpaceParams& sp, const SphereRule& rule,
                      double radius = 1.0 - 1e-6) {
    if (sp.alpha != 0.0) throw std::invalid_argument("norm_pa: sphere rule path requires alpha = 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * std::pow(std::abs(f(radius * rule.nodes[i])), sp.p);
    return std::pow(acc, 1.0 / sp.p);
}

inline double norm_pa(const Poly& f, const SpaceParams& sp, const SphereRule& rule) {
    return norm_pa(Fun(f), sp, rule, 1.0);
}

// Norm of a vector of functions: || (sum |u_j|^2)^{1/2} ||_{p,alpha}.
inline double vec_norm_pa(const VecFun& fs, const SpaceParams& sp, const BallRule& rule) {
    if (std::abs(rule.c - (sp.ap() - 1.0)) > 1e-10)
        throw std::invalid_argument("vec_norm_pa: rule weight exponent must equal alpha*p - 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double s2 = 0.0;
        for (const Fun& f : fs) s2 += std::norm(f(rule.nodes[i]));
        acc += rule.weights[i] * std::pow(s2, sp.p / 2.0);
    }
    return std::pow(acc, 1.0 / sp.p);
}

struct PointSeq {
    int n = 1;
    std::vector<CVec> pts;

    PointSeq() = default;
    PointSeq(int dim, std::vector<CVec> p) : n(dim), pts(std::move(p)) { validate(); }

    std::size_t size() const { return pts.size(); }
    const CVec& operator[](std::size_t k) const { return pts[k]; }

    void validate() const {
        for (const CVec& a : pts) {
            if (a.size() != n) throw std::invalid_argument("PointSeq: dimension mismatch");
            if (a.squaredNorm() >= 1.0) throw std::invalid_argument("PointSeq: points must be interior");
        }
        for (std::size_t j = 0; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if ((pts[j] - pts[k]).norm() < 1e-12)
                    throw std::invalid_argument("PointSeq: coincident points at indices " +
                                                std::to_string(j) + ", " + std::to_string(k));
    }
};

struct TargetSeq {
    std::vector<Cplx> values;
    bool sup_mode = false;  // l^infty targets carry no rho-weight
};

// || {lambda_k rho(a_k)^{n/p+alpha}} ||_{l^p}, or sup |lambda_k| in sup mode.
inline double seq_norm(const TargetSeq& lambda, const PointSeq& a, const SpaceParams& sp) {
    if (lambda.values.size() != a.size())
        throw std::invalid_argument("seq_norm: length mismatch");
    if (lambda.sup_mode || !std::isfinite(sp.p)) {
        double m = 0.0;
        for (const Cplx& v : lambda.values) m = std::max(m, std::abs(v));
        return m;
    }
    double e = sp.seq_exponent();
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        acc += std::pow(std::abs(lambda.values[k]) * std::pow(rho(a[k]), e), sp.p);
    return std::pow(acc, 1.0 / sp.p);
}

// Weighted pairing sum_j int u_j conj(v_j) rho^{alpha p - 1} dnu.
inline Cplx pairing_ball(const VecFun& u, const VecFun& v, const SpaceParams& sp, const BallRule& rule) {
    if (u.size() != v.size()) throw std::invalid_argument("pairing_ball: length mismatch");
    if (std::abs(rule.c - (sp.ap() - 1.0)) > 1e-10)
        throw std::invalid_argument("pairing_ball: rule weight exponent must equal alpha*p - 1");
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Cplx s = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            s += u[j](rule.nodes[i]) * std::conj(v[j](rule.nodes[i]));
        acc += rule.weights[i] * s;
    }
    return acc;
}

// Boundary pairing sum_j int w_j conj(h_j) dsigma.
inline Cplx pairing_sphere(const VecFun& w, const VecFun& h, const SphereRule& rule) {
    if (w.size() != h.size()) throw std::invalid_argument("pairing_sphere: length mismatch");
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Cplx s = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            s += w[j](rule.nodes[i]) * std::conj(h[j](rule.nodes[i]));
        acc += rule.weights[i] * s;
    }
    return acc;
}

// Central-difference Wirtinger derivatives df/dzbar_k = (d_x + i d_y) f / 2.
template <typename F>
CVec dbar_fd(F&& f, const CVec& z, double h = 1e-4) {
    int n = static_cast<int>(z.size());
    if (z.norm() + 2.0 * h >= 1.0)
        throw std::invalid_argument("dbar_fd: point too close to the boundary for step h");
    CVec d(n);
    for (int k = 0; k < n; ++k) {
        CVec zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        Cplx dx = (f(zp) - f(zm)) / (2.0 * h);
        zp = z;
        zm = z;
        zp[k] += Cplx(0.0, h);
        zm[k] -= Cplx(0.0, h);
        Cplx dy = (f(zp) - f(zm)) / (2.0 * h);
        d[k] = 0.5 * (dx + Cplx(0.0, 1.0) * dy);
    }
    return d;
}

inline CVec dbar_fd(const Fun& f, const CVec& z, double h = 1e-4) {
    return dbar_fd([&](const CVec& w) { return f(w); }, z, h);
}

// Wirtinger holomorphic derivative d f / d z_k for holomorphic f, by the
// same central-difference stencil.
template <typename F>
CVec holo_derivative_fd(F&& f, const CVec& z, double h = 1e-4) {
    int n = static_cast<int>(z.size());
    CVec d(n);
    for (int k = 0; k < n; ++k) {
        CVec zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        Cplx dx = (f(zp) - f(zm)) / (2.0 * h);
        zp = z;
        zm = z;
        zp[k] += Cplx(0.0, h);
        zm[k] -= Cplx(0.0, h);
        Cplx dy = (f(zp) - f(zm)) / (2.0 * h);
        d[k] = 0.5 * (dx - Cplx(0.0, 1.0) * dy);
    }
    return d;
}

}  // namespace bergball

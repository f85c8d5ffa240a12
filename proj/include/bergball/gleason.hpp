#pragma once

#include <limits>
#include <memory>

#include "bergball/kernels.hpp"

namespace bergball {

// [(1-t)^{-s} - 1] / t, the scalar factor of the Gleason integral kernel.
// The singularity at t = 0 is removable with limit s; a short series takes
// over when |t| is tiny.
inline Cplx gleason_kernel_factor(Cplx t, double s) {
    if (std::abs(t) < 1e-6)
        return s + t * (s * (s + 1.0) / 2.0 + t * (s * (s + 1.0) * (s + 2.0) / 6.0));
    Cplx b = safe_one_minus(t, "gleason_kernel_factor");
    return (cpow_principal(b, -s) - 1.0) / t;
}

// sum_{l=1}^{n} (1-t)^{-l} = (1-t)^{-n} [1 - (1-t)^n] / t, the boundary
// Gleason kernel. Regular at t = 0 (value n).
inline Cplx boundary_gleason_kernel(Cplx t, int n) {
    Cplx u = 1.0 / safe_one_minus(t, "boundary_gleason_kernel");
    Cplx acc = 0.0, p = 1.0;
    for (int l = 1; l <= n; ++l) {
        p *= u;
        acc += p;
    }
    return acc;
}

// Coefficients of the same kernel expanded over monomials:
//   sum_{l=0}^{n-1} (1-t)^l = sum_m c_m t^m,  l_theta = c_{|theta|} |theta|!/theta!.
// Integers, alternating in sign for n >= 2.
inline double gleason_expansion_coef(int n, const MultiIndex& theta) {
    int m = mi_order(theta);
    if (m > n - 1) return 0.0;
    double cm = 0.0;
    for (int l = m; l <= n - 1; ++l) {
        double binom = factorial(l) / (factorial(m) * factorial(l - m));
        cm += ((m % 2) ? -1.0 : 1.0) * binom;
    }
    return cm * factorial(m) / mi_factorial(theta);
}

enum class GleasonForm { dot_z, dot_phi };

struct GleasonSolution {
    CVec base;
    GleasonForm form = GleasonForm::dot_z;
    VecFun components;
    std::function<CVec(const CVec&)> eval_all;  // all components in one pass
    double residual_max = std::numeric_limits<double>::quiet_NaN();
    double norm_ratio = std::numeric_limits<double>::quiet_NaN();

    // f(z) recomposed from the solution: G(z).z or G(z).phi_a(z).
    Cplx recompose(const CVec& z) const {
        CVec g = eval_all(z);
        if (form == GleasonForm::dot_z) return dot(g, z);
        return dot(g, Automorphism(base)(z));
    }
};

namespace detail {

struct GleasonTable {
    int n;
    std::vector<CVec> nodes;
    std::vector<Cplx> coef;  // per-node weight * f(node) * constants
};

template <typename Kernel>
CVec gleason_eval(const GleasonTable& tab, Kernel&& kf, const CVec& z) {
    CVec g = CVec::Zero(tab.n);
    for (std::size_t i = 0; i < tab.nodes.size(); ++i) {
        Cplx k = kf(herm(z, tab.nodes[i])) * tab.coef[i];
        for (int c = 0; c < tab.n; ++c) g[c] += k * std::conj(tab.nodes[i][c]);
    }
    return g;
}

inline GleasonSolution make_solution(int n, CVec base, GleasonForm form,
                                     std::function<CVec(const CVec&)> eval_all) {
    GleasonSolution sol;
    sol.base = std::move(base);
    sol.form = form;
    sol.eval_all = std::move(eval_all);
    for (int k = 0; k < n; ++k)
        sol.components.emplace_back(
            n, [k, ev = sol.eval_all](const CVec& z) { return ev(z)[k]; }, Smoothness::holomorphic);
    return sol;
}

}  // namespace detail

// Solve f = G.z for f vanishing at the origin, by the weighted integral
//   g_k(z) = gamma int rho^{ap-1} [(1-<z,w>)^{-s} - 1]/<z,w> conj(w_k) f(w) dnu.
inline GleasonSolution gleason_origin(const Fun& f, const KernelParams& kp, const BallRule& rule) {
    kp.sp.require_gleason_range();
    if (kp.sp.alpha == 0.0)
        throw std::invalid_argument("gleason_origin: alpha = 0 belongs to the boundary route");
    if (std::abs(rule.c - kp.weight_exponent()) > 1e-10)
        throw std::invalid_argument("gleason_origin: rule weight exponent must equal alpha*p - 1");
    CVec origin = CVec::Zero(f.n);
    if (std::abs(f(origin)) > 1e-10)
        throw std::invalid_argument("gleason_origin: f(0) != 0");

    auto tab = std::make_shared<detail::GleasonTable>();
    tab->n = f.n;
    tab->nodes = rule.nodes;
    tab->coef.resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        tab->coef[i] = kp.gamma * rule.weights[i] * f(rule.nodes[i]);

    double s = kp.s;
    auto eval = [tab, s](const CVec& z) {
        return detail::gleason_eval(*tab, [s](Cplx t) { return gleason_kernel_factor(t, s); }, z);
    };
    return detail::make_solution(f.n, origin, GleasonForm::dot_z, eval);
}

// Boundary integral operator W_{(theta,k)}(f)(z) = int C(z,xi) conj(xi^{theta+e_k}) f(xi) dsigma.
inline Fun hardy_W(const Fun& f, const MultiIndex& theta, int k, const SphereRule& sr) {
    if (static_cast<int>(theta.size()) != f.n || k < 0 || k >= f.n)
        throw std::invalid_argument("hardy_W: bad multi-index or coordinate");
    auto vals = std::make_shared<std::vector<Cplx>>(sr.nodes.size());
    MultiIndex full = theta;
    full[k] += 1;
    for (std::size_t i = 0; i < sr.nodes.size(); ++i)
        (*vals)[i] = sr.weights[i] * std::conj(monomial(sr.nodes[i], full)) * f(sr.nodes[i]);
    auto nodes = std::make_shared<std::vector<CVec>>(sr.nodes);
    int n = f.n;
    return Fun(n,
               [vals, nodes, n](const CVec& z) {
                   Cplx acc = 0.0;
                   for (std::size_t i = 0; i < nodes->size(); ++i)
                       acc += cauchy_kernel(z, (*nodes)[i], n) * (*vals)[i];
                   return acc;
               },
               Smoothness::holomorphic);
}

// Boundary route for f = G.z, f(0) = 0, f in the Hardy class.
inline GleasonSolution gleason_origin_hardy(const Fun& f, int n, const SphereRule& sr) {
    CVec origin = CVec::Zero(n);
    if (std::abs(f(origin)) > 1e-10)
        throw std::invalid_argument("gleason_origin_hardy: f(0) != 0");

    auto tab = std::make_shared<detail::GleasonTable>();
    tab->n = n;
    tab->nodes = sr.nodes;
    tab->coef.resize(sr.nodes.size());
    for (std::size_t i = 0; i < sr.nodes.size(); ++i)
        tab->coef[i] = sr.weights[i] * f(sr.nodes[i]);

    auto eval = [tab, n](const CVec& z) {
        return detail::gleason_eval(*tab, [n](Cplx t) { return boundary_gleason_kernel(t, n); }, z);
    };
    return detail::make_solution(n, origin, GleasonForm::dot_z, eval);
}

// Solve f = G_a . phi_a by conjugating the origin solution with T_a.
inline GleasonSolution gleason_at(const Fun& f, const CVec& a, const KernelParams& kp,
                                  const BallRule& rule) {
    if (std::abs(f(a)) > 1e-10) throw std::invalid_argument("gleason_at: f(a) != 0");
    Fun fa = t_a(f, a, kp.sp);
    GleasonSolution sol0 = gleason_origin(fa, kp, rule);
    auto phi = std::make_shared<Automorphism>(a);
    SpaceParams sp = kp.sp;
    auto inner = sol0.eval_all;
    auto eval = [phi, sp, inner](const CVec& z) {
        return CVec(k_weight(phi->a, z, sp) * inner((*phi)(z)));
    };
    GleasonSolution sol = detail::make_solution(f.n, a, GleasonForm::dot_phi, eval);
    return sol;
}

// Hardy-route variant of gleason_at.
inline GleasonSolution gleason_at_hardy(const Fun& f, const CVec& a, const SpaceParams& sp,
                                        const SphereRule& sr) {
    if (sp.alpha != 0.0) throw std::invalid_argument("gleason_at_hardy: requires alpha = 0");
    if (std::abs(f(a)) > 1e-10) throw std::invalid_argument("gleason_at_hardy: f(a) != 0");
    Fun fa = t_a(f, a, sp);
    GleasonSolution sol0 = gleason_origin_hardy(fa, f.n, sr);
    auto phi = std::make_shared<Automorphism>(a);
    auto inner = sol0.eval_all;
    SpaceParams params = sp;
    auto eval = [phi, params, inner](const CVec& z) {
        return CVec(k_weight(phi->a, z, params) * inner((*phi)(z)));
    };
    return detail::make_solution(f.n, a, GleasonForm::dot_phi, eval);
}

inline double decomposition_residual(const Fun& f, const GleasonSolution& sol,
                                     const std::vector<CVec>& samples) {
    double worst = 0.0;
    for (const CVec& z : samples) worst = std::max(worst, std::abs(f(z) - sol.recompose(z)));
    return worst;
}

// || sum_j |G_j|^2 ||_{p/2, 2alpha} over a rule with weight alpha*p - 1.
inline double sum_sq_norm(const std::vector<std::function<CVec(const CVec&)>>& evals,
                          const SpaceParams& sp, const BallRule& rule) {
    if (std::abs(rule.c - (sp.ap() - 1.0)) > 1e-10)
        throw std::invalid_argument("sum_sq_norm: rule weight exponent must equal alpha*p - 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double s2 = 0.0;
        for (const auto& ev : evals) s2 += ev(rule.nodes[i]).squaredNorm();
        acc += rule.weights[i] * std::pow(s2, sp.p / 2.0);
    }
    return std::pow(acc, 2.0 / sp.p);
}

inline double sum_sq_norm_scalar(const VecFun& fs, const SpaceParams& sp, const BallRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double s2 = 0.0;
        for (const Fun& f : fs) s2 += std::norm(f(rule.nodes[i]));
        acc += rule.weights[i] * std::pow(s2, sp.p / 2.0);
    }
    return std::pow(acc, 2.0 / sp.p);
}

struct GleasonVectorResult {
    std::vector<GleasonSolution> solutions;
    double ratio = 0.0;  // || sum |G_j|^2 || / || sum |f_j|^2 || in (p/2, 2alpha)
};

inline GleasonVectorResult gleason_vector(const VecFun& fs, const CVec& a, const KernelParams& kp,
                                          const BallRule& rule, const BallRule& norm_rule) {
    if (kp.sp.p < 2.0) throw std::invalid_argument("gleason_vector: requires p >= 2");
    GleasonVectorResult res;
    std::vector<std::function<CVec(const CVec&)>> evals;
    for (const Fun& f : fs) {
        res.solutions.push_back(gleason_at(f, a, kp, rule));
        evals.push_back(res.solutions.back().eval_all);
    }
    double denom = sum_sq_norm_scalar(fs, kp.sp, norm_rule);
    if (denom < 1e-300) {
        res.ratio = 0.0;
        return res;
    }
    res.ratio = sum_sq_norm(evals, kp.sp, norm_rule) / denom;
    return res;
}

}  // namespace bergball

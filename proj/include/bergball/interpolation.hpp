#pragma once

#include "bergball/gleason.hpp"

namespace bergball {

// Value at z of the reproducing kernel centered at w — holomorphic in z.
// The weighted kernel for alpha > 0, the Cauchy-Szego kernel for alpha = 0.
inline Cplx interp_kernel(const CVec& z, const CVec& w, const SpaceParams& sp) {
    if (sp.alpha == 0.0) return cauchy_kernel(z, w, sp.n);
    KernelParams kp(sp);
    return bergman_kernel(w, z, kp);
}

struct Interpolant {
    Fun fun;
    PointSeq nodes;
    CVec coef;          // kernel-basis coefficients, empty for the IRLS path
    double gram_cond = 0.0;
    double hilbert_norm = 0.0;  // sqrt(c^H G c) for the kernel path
};

namespace detail {

inline CMat gram_matrix(const PointSeq& a, const SpaceParams& sp) {
    int m = static_cast<int>(a.size());
    CMat g(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) g(j, k) = interp_kernel(a[j], a[k], sp);
    return g;
}

inline std::pair<std::size_t, std::size_t> closest_pair(const PointSeq& a) {
    std::size_t bj = 0, bk = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = j + 1; k < a.size(); ++k) {
            double d = pseudo_distance(a[j], a[k]);
            if (d < best) {
                best = d;
                bj = j;
                bk = k;
            }
        }
    return {bj, bk};
}

inline Fun kernel_combination(const PointSeq& a, const CVec& coef, const SpaceParams& sp) {
    auto nodes = std::make_shared<std::vector<CVec>>(a.pts);
    auto c = std::make_shared<CVec>(coef);
    SpaceParams params = sp;
    return Fun(sp.n,
               [nodes, c, params](const CVec& z) {
                   Cplx acc = 0.0;
                   for (std::size_t k = 0; k < nodes->size(); ++k)
                       acc += (*c)[k] * interp_kernel(z, (*nodes)[k], params);
                   return acc;
               },
               Smoothness::holomorphic);
}

}  // namespace detail

// Kernel-basis interpolant f = sum c_k K_{a_k} solving the Gram system
// Gram c = lambda. Minimal-norm in the kernel Hilbert space; for p = 2 that
// space carries exactly the ||.||_{2,alpha} norm. For p != 2 the same
// kernel route is used by default (a valid interpolant of the space, not
// the p-minimal one); see min_norm_interpolant_irls for the general-p
// minimizer.
inline Interpolant min_norm_interpolant(const PointSeq& a, const std::vector<Cplx>& lambda,
                                        const SpaceParams& sp) {
    if (a.size() != lambda.size()) throw std::invalid_argument("min_norm_interpolant: length mismatch");
    if (a.size() == 0) throw std::invalid_argument("min_norm_interpolant: empty sequence");

    int m = static_cast<int>(a.size());
    CMat gram = detail::gram_matrix(a, sp);
    Eigen::SelfAdjointEigenSolver<CMat> es(gram);
    double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0 || lmax / lmin > 1e12) {
        auto [j, k] = detail::closest_pair(a);
        throw std::runtime_error(
            "min_norm_interpolant: Gram matrix ill-conditioned (cond > 1e12); nearest nodes " +
            std::to_string(j) + " and " + std::to_string(k) + " at pseudo-distance " +
            std::to_string(pseudo_distance(a[j], a[k])));
    }

    CVec rhs(m);
    for (int k = 0; k < m; ++k) rhs[k] = lambda[k];
    CVec coef = es.eigenvectors() *
                (es.eigenvalues().cwiseInverse().cast<Cplx>().asDiagonal() *
                 (es.eigenvectors().adjoint() * rhs));

    Interpolant out{detail::kernel_combination(a, coef, sp), a, coef, lmax / lmin, 0.0};
    out.hilbert_norm = std::sqrt(std::max(0.0, (coef.adjoint() * gram * coef)(0, 0).real()));
    return out;
}

// Iteratively reweighted least squares over a truncated monomial basis:
// minimize the quadrature p-norm subject to the interpolation constraints,
// one KKT solve per reweighting.
inline Interpolant min_norm_interpolant_irls(const PointSeq& a, const std::vector<Cplx>& lambda,
                                             const SpaceParams& sp, const BallRule& rule,
                                             int degree = -1, double tol = 1e-8, int max_iter = 100) {
    if (a.size() != lambda.size()) throw std::invalid_argument("min_norm_interpolant_irls: length mismatch");
    if (degree < 0) degree = 2 * static_cast<int>(a.size());
    std::vector<MultiIndex> basis = multi_indices_up_to(sp.n, degree);
    int nb = static_cast<int>(basis.size());
    int m = static_cast<int>(a.size());

    int nq = static_cast<int>(rule.nodes.size());
    CMat phi(nq, nb);
    for (int i = 0; i < nq; ++i)
        for (int b = 0; b < nb; ++b) phi(i, b) = monomial(rule.nodes[i], basis[b]);

    CMat constraints(m, nb);
    for (int k = 0; k < m; ++k)
        for (int b = 0; b < nb; ++b) constraints(k, b) = monomial(a[k], basis[b]);
    CVec rhs(m);
    for (int k = 0; k < m; ++k) rhs[k] = lambda[k];

    RVec u = RVec::Ones(nq);
    for (int i = 0; i < nq; ++i) u[i] = rule.weights[i];
    CVec c = CVec::Zero(nb);
    for (int iter = 0; iter < max_iter; ++iter) {
        CMat normal = phi.adjoint() * u.cast<Cplx>().asDiagonal() * phi;
        CMat kkt = CMat::Zero(nb + m, nb + m);
        kkt.topLeftCorner(nb, nb) = 2.0 * normal;
        kkt.topRightCorner(nb, m) = constraints.adjoint();
        kkt.bottomLeftCorner(m, nb) = constraints;
        CVec full_rhs = CVec::Zero(nb + m);
        full_rhs.tail(m) = rhs;
        CVec sol = kkt.fullPivLu().solve(full_rhs);
        CVec c_new = sol.head(nb);
        double change = (c_new - c).norm();
        c = c_new;
        if (change <= tol * std::max(1.0, c.norm())) break;
        CVec vals = phi * c;
        for (int i = 0; i < nq; ++i)
            u[i] = rule.weights[i] * std::pow(std::max(std::abs(vals[i]), 1e-8), sp.p - 2.0);
    }

    Poly p(sp.n);
    p.degree_bound = degree;
    for (int b = 0; b < nb; ++b) p.coef[basis[b]] = c[b];
    p.prune();
    Interpolant out{Fun(p), a, CVec(), 0.0, 0.0};
    return out;
}

// Empirical interpolation constant: sup over unit-norm targets of the
// interpolant norm. A lower bound for the true constant of the sequence.
inline double interpolation_constant(const PointSeq& a, const SpaceParams& sp,
                                     const std::vector<std::vector<Cplx>>& targets,
                                     const BallRule& norm_rule) {
    double best = 0.0;
    for (const auto& raw : targets) {
        TargetSeq t{raw, false};
        double tn = seq_norm(t, a, sp);
        if (tn < 1e-300) continue;
        Interpolant f = min_norm_interpolant(a, raw, sp);
        best = std::max(best, norm_pa(f.fun, sp, norm_rule) / tn);
    }
    return best;
}

inline double interpolation_constant(const PointSeq& a, const SpaceParams& sp, int trials,
                                     const BallRule& norm_rule, std::uint64_t seed = 42) {
    std::vector<std::vector<Cplx>> targets;
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::vector<Cplx> e(a.size(), 0.0);
        e[k] = 1.0;
        targets.push_back(e);
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<Cplx> v(a.size());
        for (auto& x : v) x = rng.unit_disc();
        targets.push_back(v);
    }
    return interpolation_constant(a, sp, targets, norm_rule);
}

// min over k of prod_{j != k} |phi_{a_j}(a_k)|; 1 for a single point.
inline double carleson_product(const PointSeq& a) {
    if (a.size() <= 1) return 1.0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a.size(); ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (j != k) prod *= pseudo_distance(a[j], a[k]);
        worst = std::min(worst, prod);
    }
    return worst;
}

// Linear extension basis: beta_j with beta_j(a_k) = delta_jk, obtained by a
// discrete Fourier transform of interpolants of roots-of-unity targets
//   g_j(a_k) = lambda^{jk},  lambda = exp(2 pi i / N),
//   beta_j = (1/N) sum_m lambda^{-jm} g_m.
struct DruryBasis {
    int size = 0;
    Cplx root;
    std::vector<Interpolant> g;
    VecFun beta;
    CMat beta_coef;  // kernel-basis coefficients of the beta_j, column j
    double delta_error = 0.0;
};

inline DruryBasis drury_extension(const PointSeq& a, const SpaceParams& sp) {
    int big_n = static_cast<int>(a.size());
    if (big_n < 1) throw std::invalid_argument("drury_extension: empty sequence");
    if (sp.p < 2.0) throw std::invalid_argument("drury_extension: requires p >= 2");

    DruryBasis basis;
    basis.size = big_n;
    basis.root = std::exp(Cplx(0.0, 2.0 * kPi / big_n));

    CMat gcoef(big_n, big_n);
    for (int j = 1; j <= big_n; ++j) {
        std::vector<Cplx> targets(big_n);
        for (int k = 1; k <= big_n; ++k) targets[k - 1] = ipow(basis.root, j * k);
        basis.g.push_back(min_norm_interpolant(a, targets, sp));
        gcoef.col(j - 1) = basis.g.back().coef;
    }

    basis.beta_coef = CMat(big_n, big_n);
    for (int j = 1; j <= big_n; ++j) {
        CVec c = CVec::Zero(big_n);
        for (int m = 1; m <= big_n; ++m) c += ipow(basis.root, -j * m) * gcoef.col(m - 1);
        basis.beta_coef.col(j - 1) = c / static_cast<double>(big_n);
        basis.beta.push_back(detail::kernel_combination(a, basis.beta_coef.col(j - 1), sp));
    }

    for (int j = 0; j < big_n; ++j)
        for (int k = 0; k < big_n; ++k) {
            double expect = (j == k) ? 1.0 : 0.0;
            basis.delta_error =
                std::max(basis.delta_error, std::abs(basis.beta[j](a[k]) - expect));
        }
    return basis;
}

// Max over samples of | sum_j |beta_j(z)|^2 - (1/N) sum_m |g_m(z)|^2 |,
// the Plancherel identity of the size-N Fourier transform.
inline double drury_plancherel_residual(const DruryBasis& basis, const std::vector<CVec>& samples) {
    double worst = 0.0;
    for (const CVec& z : samples) {
        double lhs = 0.0, rhs = 0.0;
        for (int j = 0; j < basis.size; ++j) lhs += std::norm(basis.beta[j](z));
        for (int m = 0; m < basis.size; ++m) rhs += std::norm(basis.g[m].fun(z));
        worst = std::max(worst, std::abs(lhs - rhs / basis.size));
    }
    return worst;
}

// Empirical growth constant: max of
//   |h(z) - h(a)| rho(a)^{n/p+alpha} / (||h||_{p,alpha} |phi_a(z)|)
// over random polynomials h, centers a, and z with |phi_a(z)| < 1/2.
inline double growth_probe(const SpaceParams& sp, int samples, const BallRule& norm_rule,
                           std::uint64_t seed = 42) {
    Rng rng(seed);
    double worst = 0.0;
    for (int it = 0; it < samples; ++it) {
        Poly h(sp.n);
        for (const auto& t : multi_indices_up_to(sp.n, 3)) h.coef[t] = rng.unit_disc();
        double hn = norm_pa(Fun(h), sp, norm_rule);
        if (hn < 1e-12) continue;
        CVec a = rng.ball_point(sp.n, 0.8);
        Automorphism phi(a);
        CVec z = phi(rng.ball_point(sp.n, 0.5));
        double sep = phi(z).norm();
        if (sep < 1e-6) continue;
        double ratio = std::abs(h(z) - h(a)) * std::pow(rho(a), sp.seq_exponent()) / (hn * sep);
        worst = std::max(worst, ratio);
    }
    return worst;
}

}  // namespace bergball

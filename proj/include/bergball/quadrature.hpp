#pragma once

#include <cmath>
#include <functional>

#include "bergball/ball.hpp"
#include "bergball/core.hpp"

namespace bergball {

struct Rule1D {
    RVec nodes;
    RVec weights;
};

// Gauss-Jacobi rule for int_{-1}^{1} f(x) (1-x)^a (1+x)^b dx via Golub-Welsch.
inline Rule1D gauss_jacobi(int count, double a, double b) {
    if (count < 1) throw std::invalid_argument("gauss_jacobi: count must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
    double ab = a + b;
    jac(0, 0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < count; ++k)
        jac(k, k) = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    for (int k = 1; k < count; ++k) {
        double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        double den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
        double off = std::sqrt(num / den);
        jac(k, k - 1) = jac(k - 1, k) = off;
    }

    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                          std::lgamma(ab + 2.0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    Rule1D rule;
    rule.nodes = es.eigenvalues();
    rule.weights = RVec(count);
    for (int k = 0; k < count; ++k) {
        double v = es.eigenvectors()(0, k);
        rule.weights[k] = mu0 * v * v;
    }
    return rule;
}

inline Rule1D gauss_legendre(int count) { return gauss_jacobi(count, 0.0, 0.0); }

// Gauss rule for int_0^1 f(x) (1-x)^a dx.
inline Rule1D gauss_unit(int count, double a) {
    Rule1D r = gauss_jacobi(count, a, 0.0);
    double scale = std::pow(0.5, a + 1.0);
    for (int k = 0; k < count; ++k) {
        r.nodes[k] = 0.5 * (1.0 + r.nodes[k]);
        r.weights[k] *= scale;
    }
    // map x -> (1+u)/2 sends weight (1-u)^a du to 2^{a+1} (1-x)^a dx
    return r;
}

// Quadrature over the unit sphere of C^n for the normalized surface measure.
// Built on the polyspherical parametrization zeta_j = sqrt(t_j) e^{i phi_j}
// with (t_1,...,t_n) on the simplex; exact for monomial pairs
// zeta^theta conj(zeta)^eta with |theta|, |eta| <= degree.
struct SphereRule {
    int n = 0;
    int degree = 0;
    std::vector<CVec> nodes;
    std::vector<double> weights;
};

inline SphereRule build_sphere_rule(int n, int degree) {
    if (n < 1 || n > 4) throw std::invalid_argument("build_sphere_rule: n must be in {1,...,4}");
    if (degree < 1) degree = 1;
    SphereRule sr;
    sr.n = n;
    sr.degree = degree;

    int m = degree + 1;  // angular points per phase, exact for |frequency| <= degree
    std::vector<Cplx> phases(m);
    for (int j = 0; j < m; ++j) {
        double ang = 2.0 * kPi * j / m;
        phases[j] = Cplx(std::cos(ang), std::sin(ang));
    }

    if (n == 1) {
        for (int j = 0; j < m; ++j) {
            CVec z(1);
            z[0] = phases[j];
            sr.nodes.push_back(z);
            sr.weights.push_back(1.0 / m);
        }
        return sr;
    }

    // Collapsed simplex coordinates: t_1 = x_1, t_2 = (1-x_1) x_2, ...
    // with level j carrying the Jacobian weight (1-x)^{n-1-j}.
    int k = (degree + 2) / 2;
    std::vector<Rule1D> levels;
    for (int j = 1; j <= n - 1; ++j) levels.push_back(gauss_unit(k, static_cast<double>(n - 1 - j)));

    double simplex_factor = factorial(n - 1);
    std::vector<int> idx(n - 1, 0);
    for (;;) {
        double t_rem = 1.0, w_simplex = simplex_factor;
        std::vector<double> t(n);
        for (int j = 0; j < n - 1; ++j) {
            double x = levels[j].nodes[idx[j]];
            w_simplex *= levels[j].weights[idx[j]];
            t[j] = t_rem * x;
            t_rem *= (1.0 - x);
        }
        t[n - 1] = t_rem;

        std::vector<double> amp(n);
        for (int j = 0; j < n; ++j) amp[j] = std::sqrt(std::max(t[j], 0.0));

        std::vector<int> aidx(n, 0);
        double w_total = w_simplex / std::pow(static_cast<double>(m), n);
        for (;;) {
            CVec z(n);
            for (int j = 0; j < n; ++j) z[j] = amp[j] * phases[aidx[j]];
            sr.nodes.push_back(z);
            sr.weights.push_back(w_total);
            int p = 0;
            while (p < n && ++aidx[p] == m) aidx[p++] = 0;
            if (p == n) break;
        }

        int p = 0;
        while (p < n - 1 && ++idx[p] == k) idx[p++] = 0;
        if (p == n - 1) break;
    }
    return sr;
}

// Quadrature for int_{B^n} f(w) rho(w)^c dnu_n(w) with nu_n the normalized
// volume measure; the radial weight is absorbed into the weights.
struct BallRule {
    int n = 0;
    double c = 0.0;
    int radial_count = 0;
    int angular_degree = 0;
    std::vector<CVec> nodes;
    std::vector<double> weights;
};

// Total mass int rho^c dnu_n = Gamma(n+1) Gamma(c+1) / Gamma(n+c+1).
inline double weighted_ball_mass(int n, double c) {
    return std::exp(std::lgamma(n + 1.0) + std::lgamma(c + 1.0) - std::lgamma(n + c + 1.0));
}

inline BallRule build_ball_rule(int n, double c, int radial_count = 64, int angular_degree = 32) {
    if (n < 1 || n > 4) throw std::invalid_argument("build_ball_rule: n must be in {1,...,4}");
    if (c <= -1.0) throw std::invalid_argument("build_ball_rule: weight exponent must be > -1");
    if (radial_count < 1) throw std::invalid_argument("build_ball_rule: radial_count must be >= 1");

    BallRule br;
    br.n = n;
    br.c = c;
    br.radial_count = radial_count;
    br.angular_degree = angular_degree;

    // u = 2r^2 - 1 turns the radial factor into the Jacobi weight (1-u)^c (1+u)^{n-1}.
    Rule1D radial = gauss_jacobi(radial_count, c, static_cast<double>(n - 1));
    double pref = n * std::pow(2.0, -(n + c));
    SphereRule sr = build_sphere_rule(n, angular_degree);

    br.nodes.reserve(radial_count * sr.nodes.size());
    br.weights.reserve(radial_count * sr.nodes.size());
    for (int i = 0; i < radial_count; ++i) {
        double r = std::sqrt(0.5 * (1.0 + radial.nodes[i]));
        double wr = pref * radial.weights[i];
        for (std::size_t j = 0; j < sr.nodes.size(); ++j) {
            br.nodes.push_back(r * sr.nodes[j]);
            br.weights.push_back(wr * sr.weights[j]);
        }
    }

    double mass = 0.0;
    for (double w : br.weights) mass += w;
    double expect = weighted_ball_mass(n, c);
    if (std::abs(mass - expect) > 1e-8 * expect)
        throw std::runtime_error("build_ball_rule: weighted mass self-check failed");
    return br;
}

template <typename F>
Cplx integrate_ball(F&& f, const BallRule& rule) {
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Cplx v = f(rule.nodes[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("integrate_ball: non-finite value at node " +
                                     format_point(rule.nodes[i]));
        acc += rule.weights[i] * v;
    }
    return acc;
}

template <typename F>
Cplx integrate_sphere(F&& f, const SphereRule& rule) {
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Cplx v = f(rule.nodes[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("integrate_sphere: non-finite value at node " +
                                     format_point(rule.nodes[i]));
        acc += rule.weights[i] * v;
    }
    return acc;
}

// Boundary-to-ball projection identity: for P_n the projection of C^{n+l}
// onto the first n coordinates,
//   int_{dB^{n+l}} g(P_n zeta) dsigma = binom(n+l-1, n) int_{B^n} rho^{l-1} g dnu_n.
// Returns both sides; the caller asserts closeness.
template <typename F>
std::pair<Cplx, Cplx> forelli_check(F&& g, int n, int l, const SphereRule& sr, const BallRule& br) {
    if (l < 1) throw std::invalid_argument("forelli_check: l must be a positive integer");
    if (sr.n != n + l) throw std::invalid_argument("forelli_check: sphere rule must live on dB^{n+l}");
    if (std::abs(br.c - (l - 1.0)) > 1e-12)
        throw std::invalid_argument("forelli_check: ball rule must carry weight rho^{l-1}");

    Cplx lhs = integrate_sphere([&](const CVec& zeta) { return g(zeta.head(n)); }, sr);
    double binom = std::exp(std::lgamma(n + l + 0.0) - std::lgamma(n + 1.0) - std::lgamma(l + 0.0));
    Cplx rhs = binom * integrate_ball(g, br);
    return {lhs, rhs};
}

// Closed-form moments used as oracles throughout:
//   int_{dB^n} zeta^theta conj(zeta)^theta dsigma = (n-1)! theta! / (n-1+|theta|)!
inline double sphere_monomial_moment(int n, const MultiIndex& theta) {
    return factorial(n - 1) * mi_factorial(theta) / factorial(n - 1 + mi_order(theta));
}

//   int_{B^n} w^theta conj(w)^theta rho^c dnu_n = Gamma(n+1) Gamma(c+1) theta! / Gamma(n+c+1+|theta|)
inline double ball_monomial_moment(int n, double c, const MultiIndex& theta) {
    return std::exp(std::lgamma(n + 1.0) + std::lgamma(c + 1.0) - std::lgamma(n + c + 1.0 + mi_order(theta))) *
           mi_factorial(theta);
}

}  // namespace bergball

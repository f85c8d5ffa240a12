#pragma once

#include "bergball/interpolation.hpp"

namespace bergball {

struct AmarOptions {
    int base_index = 0;
    int inner_radial = 16;    // gleason quadrature, weighted route
    int inner_degree = 20;
    int boundary_degree = 24; // gleason quadrature, hardy route
    double delta_tol = 1e-8;
};

// The vector interpolating function B = sum_j beta_j^2 phi_{a_j} together
// with its matrix factorization B = M phi at the base point,
// M = beta^2 I + Y, Y_{lk} = sum_{j>=2} beta_j (phi_j)_l (G_j)_k, where the
// G_j solve beta_j = G_j . phi at the base. All evaluators share one pass
// over the Gleason quadrature nodes.
struct AmarAssembly {
    PointSeq original;
    SpaceParams params;
    AmarOptions opts;

    PointSeq a;  // permuted, base point first
    DruryBasis drury;
    std::vector<Automorphism> autos;  // phi_{a_j}, permuted order
    bool hardy = false;
    double kernel_s = 0.0;

    std::vector<CVec> inner_nodes;
    std::vector<std::vector<Cplx>> fcoef;  // [j-2][node]: weight * (T_a beta_j)(node), constants folded

    int n() const { return params.n; }
    int size() const { return static_cast<int>(a.size()); }

    // all beta_j at once through the shared kernel row
    CVec betas(const CVec& z) const {
        int big_n = size();
        CVec kv(big_n);
        for (int k = 0; k < big_n; ++k) kv[k] = interp_kernel(z, a[k], params);
        return drury.beta_coef.transpose() * kv;
    }

    CVec eval_B(const CVec& z) const {
        CVec b = CVec::Zero(n());
        CVec bs = betas(z);
        for (int j = 0; j < size(); ++j) b += bs[j] * bs[j] * autos[j](z);
        return b;
    }

    // G_j(z) for j = 2..N as rows of an (N-1) x n matrix. The quadrature
    // table holds the origin solution of the transported beta_j; composing
    // back through the base automorphism gives beta_j = G_j . phi.
    CMat eval_G(const CVec& z) const {
        int rows = size() - 1, cols = n();
        CMat g = CMat::Zero(std::max(rows, 0), cols);
        if (rows == 0) return g;
        CVec zt = autos[0](z);
        Cplx ka = k_weight(autos[0].a, z, params);
        for (std::size_t i = 0; i < inner_nodes.size(); ++i) {
            const CVec& w = inner_nodes[i];
            Cplx t = herm(zt, w);
            Cplx kf = hardy ? boundary_gleason_kernel(t, n()) : gleason_kernel_factor(t, kernel_s);
            for (int j = 0; j < rows; ++j) {
                Cplx c = kf * fcoef[j][i];
                for (int k = 0; k < cols; ++k) g(j, k) += c * std::conj(w[k]);
            }
        }
        return ka * g;
    }

    CMat eval_Y(const CVec& z) const {
        int dim = n();
        CMat y = CMat::Zero(dim, dim);
        if (size() < 2) return y;
        CVec bs = betas(z);
        CMat g = eval_G(z);
        for (int j = 2; j <= size(); ++j) {
            CVec phi_j = autos[j - 1](z);
            for (int l = 0; l < dim; ++l)
                for (int k = 0; k < dim; ++k) y(l, k) += bs[j - 1] * phi_j[l] * g(j - 2, k);
        }
        return y;
    }

    CMat eval_M(const CVec& z) const {
        Cplx b1 = betas(z)[0];
        return b1 * b1 * CMat::Identity(n(), n()) + eval_Y(z);
    }
};

inline AmarAssembly build_amar(const PointSeq& a_in, const SpaceParams& params,
                               const AmarOptions& opts = {}) {
    if (params.p <= 2.0) throw std::invalid_argument("build_amar: requires p > 2");
    params.require_gleason_range();
    if (opts.base_index < 0 || opts.base_index >= static_cast<int>(a_in.size()))
        throw std::invalid_argument("build_amar: base index out of range");

    AmarAssembly asmb;
    asmb.original = a_in;
    asmb.params = params;
    asmb.opts = opts;
    asmb.hardy = (params.alpha == 0.0);

    std::vector<CVec> pts = a_in.pts;
    std::swap(pts[0], pts[opts.base_index]);
    asmb.a = PointSeq(a_in.n, pts);

    asmb.drury = drury_extension(asmb.a, params);
    if (asmb.drury.delta_error > opts.delta_tol)
        throw std::runtime_error("build_amar: extension basis failed the Kronecker property, error " +
                                 std::to_string(asmb.drury.delta_error));
    for (const CVec& c : asmb.a.pts) asmb.autos.emplace_back(c);

    int big_n = asmb.size();
    if (big_n < 2) return asmb;  // M = beta^2 I, no Gleason step

    const Automorphism& base = asmb.autos[0];
    double gamma = 1.0;
    std::vector<double> wts;
    if (asmb.hardy) {
        SphereRule sr = build_sphere_rule(params.n, opts.boundary_degree);
        asmb.inner_nodes = sr.nodes;
        wts = sr.weights;
    } else {
        KernelParams kp(params);
        asmb.kernel_s = kp.s;
        gamma = kp.gamma;
        BallRule br = build_ball_rule(params.n, kp.weight_exponent(), opts.inner_radial,
                                      opts.inner_degree);
        asmb.inner_nodes = br.nodes;
        wts = br.weights;
    }

    for (int j = 2; j <= big_n; ++j) {
        std::vector<Cplx> coef(asmb.inner_nodes.size());
        Fun beta_j = asmb.drury.beta[j - 1];
        for (std::size_t i = 0; i < asmb.inner_nodes.size(); ++i) {
            const CVec& w = asmb.inner_nodes[i];
            Cplx fa = k_weight(base.a, w, params) * beta_j(base(w));
            coef[i] = gamma * wts[i] * fa;
        }
        asmb.fcoef.push_back(std::move(coef));
    }
    return asmb;
}

inline double factorization_residual(const AmarAssembly& asmb, const std::vector<CVec>& samples) {
    double worst = 0.0;
    for (const CVec& z : samples) {
        CVec lhs = asmb.eval_B(z);
        CVec rhs = asmb.eval_M(z) * asmb.autos[0](z);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

// Principal-minor sums of a square matrix: s_k = sum of the k x k principal
// minors, so that det(x I + Y) = sum_k s_k x^{n-k} with s_0 = 1.
inline std::vector<Cplx> principal_minor_sums(const CMat& y) {
    int dim = static_cast<int>(y.rows());
    std::vector<Cplx> s(dim + 1, 0.0);
    s[0] = 1.0;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int next) -> void {
        int k = static_cast<int>(subset.size());
        if (k >= 1) {
            CMat minor(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) minor(r, c) = y(subset[r], subset[c]);
            s[k] += minor.determinant();
        }
        for (int i = next; i < dim; ++i) {
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
    return s;
}

struct Def11Report {
    int base_index = 0;
    double t = 0.0;
    double c_bound = 0.0;
    double radius = 0.0;
    int samples = 0;
    double min_det = 0.0;
    double max_inv_entry = 0.0;
    double max_entry_norm = 0.0;
    bool det_ok = false, inv_ok = false, norm_ok = false;
    bool singular = false;
    bool pass = false;
};

// Sample the pseudo-hyperbolic region {|phi_{a_k}| < t rho(a_k)^{n(n/p+alpha)}}
// of the target space and check the three bounds of the interpolating-function
// definition: |det M_k| >= t, entrywise |M_k^{-1}| <= C, entry norms <= C in
// the (target.p, target.alpha) norm.
inline Def11Report verify_def11(const AmarAssembly& asmb, int base_index, double t, double c_bound,
                                const SpaceParams& target, const BallRule& norm_rule,
                                int samples = 1000, std::uint64_t seed = 42) {
    const AmarAssembly* use = &asmb;
    AmarAssembly rebuilt;
    if (base_index != asmb.opts.base_index) {
        AmarOptions o = asmb.opts;
        o.base_index = base_index;
        rebuilt = build_amar(asmb.original, asmb.params, o);
        use = &rebuilt;
    }

    Def11Report rep;
    rep.base_index = base_index;
    rep.t = t;
    rep.c_bound = c_bound;
    const CVec& center = use->a[0];
    rep.radius = t * std::pow(rho(center), target.n * target.seq_exponent());
    rep.samples = samples;

    Rng rng(seed);
    const Automorphism& phi = use->autos[0];
    double min_det = std::numeric_limits<double>::infinity();
    double max_inv = 0.0;
    for (int i = 0; i < samples; ++i) {
        CVec z = (i == 0) ? center : phi(rng.ball_point(use->n(), rep.radius));
        CMat m = use->eval_M(z);
        double d = std::abs(m.determinant());
        min_det = std::min(min_det, d);
        if (d < 1e-14) {
            rep.singular = true;
            break;
        }
        max_inv = std::max(max_inv, m.inverse().cwiseAbs().maxCoeff());
    }
    rep.min_det = min_det;
    rep.max_inv_entry = max_inv;

    double worst_norm = 0.0;
    int dim = use->n();
    std::vector<double> acc(dim * dim, 0.0);
    for (std::size_t i = 0; i < norm_rule.nodes.size(); ++i) {
        CMat m = use->eval_M(norm_rule.nodes[i]);
        for (int l = 0; l < dim; ++l)
            for (int k = 0; k < dim; ++k)
                acc[l * dim + k] +=
                    norm_rule.weights[i] * std::pow(std::abs(m(l, k)), target.p);
    }
    for (double v : acc) worst_norm = std::max(worst_norm, std::pow(v, 1.0 / target.p));
    rep.max_entry_norm = worst_norm;

    rep.det_ok = !rep.singular && rep.min_det >= t;
    rep.inv_ok = !rep.singular && rep.max_inv_entry <= c_bound;
    rep.norm_ok = rep.max_entry_norm <= c_bound;
    rep.pass = rep.det_ok && rep.inv_ok && rep.norm_ok;
    return rep;
}

// Grid search t in {2^-1,...,2^-t_max_exp}, C in {2,4,...}; returns the report
// of the largest passing t (with the smallest admissible C), or the last
// failure if none passes.
inline Def11Report def11_grid_search(const AmarAssembly& asmb, int base_index,
                                     const SpaceParams& target, const BallRule& norm_rule,
                                     int t_max_exp = 8, int c_max_exp = 10, int samples = 400,
                                     std::uint64_t seed = 42) {
    Def11Report last;
    for (int m = 1; m <= t_max_exp; ++m) {
        double t = std::pow(2.0, -m);
        Def11Report rep = verify_def11(asmb, base_index, t, 0.0, target, norm_rule, samples, seed);
        for (int ce = 1; ce <= c_max_exp; ++ce) {
            double c = std::pow(2.0, ce);
            if (rep.min_det >= t && !rep.singular && rep.max_inv_entry <= c &&
                rep.max_entry_norm <= c) {
                rep.c_bound = c;
                rep.det_ok = rep.inv_ok = rep.norm_ok = rep.pass = true;
                return rep;
            }
        }
        last = rep;
    }
    return last;
}

// Least-squares slope of (1 - min |det M|) against the region radius over a
// nest of shrinking regions.
inline double det_drop_slope(const AmarAssembly& asmb, const SpaceParams& target,
                             double outer_radius, int levels = 4, int samples = 300,
                             std::uint64_t seed = 42) {
    Rng rng(seed);
    const Automorphism& phi = asmb.autos[0];
    std::vector<CVec> xi;
    std::vector<double> dets;
    for (int i = 0; i < samples; ++i) {
        CVec x = rng.ball_point(asmb.n(), outer_radius);
        xi.push_back(x);
        dets.push_back(std::abs(asmb.eval_M(phi(x)).determinant()));
    }
    std::vector<double> rs, drops;
    for (int lev = 0; lev < levels; ++lev) {
        double r = outer_radius * std::pow(0.5, lev);
        double min_det = std::abs(asmb.eval_M(asmb.a[0]).determinant());
        for (int i = 0; i < samples; ++i)
            if (xi[i].norm() < r) min_det = std::min(min_det, dets[i]);
        rs.push_back(r);
        drops.push_back(1.0 - min_det);
    }
    double mr = 0, md = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        mr += rs[i];
        md += drops[i];
    }
    mr /= rs.size();
    md /= drops.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        num += (rs[i] - mr) * (drops[i] - md);
        den += (rs[i] - mr) * (rs[i] - mr);
    }
    return num / den;
}

struct SeparationReport {
    bool separated = true;
    std::size_t worst_j = 0, worst_k = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
};

// Pairwise disjointness of the hyperballs T_j = {|phi_{a_j}| < R_j} with
// R_j = 2 eta rho(a_j)^{n(n/q+beta)} for the target space (q, beta). Uses the
// pseudo-hyperbolic triangle-inequality sufficient condition, falling back to
// membership sampling when inconclusive.
inline SeparationReport weak_separation(const PointSeq& a, double eta, const SpaceParams& target,
                                        int probes = 400, std::uint64_t seed = 42) {
    if (eta <= 0.0) throw std::invalid_argument("weak_separation: eta must be positive");
    SeparationReport rep;
    std::vector<double> radius(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        radius[j] = 2.0 * eta * std::pow(rho(a[j]), target.n * target.seq_exponent());

    Rng rng(seed);
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = j + 1; k < a.size(); ++k) {
            double d = pseudo_distance(a[j], a[k]);
            double need = (radius[j] + radius[k]) / (1.0 + radius[j] * radius[k]);
            double margin = d - need;
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_j = j;
                rep.worst_k = k;
            }
            if (margin > 0.0) continue;
            Automorphism phi_j(a[j]), phi_k(a[k]);
            bool overlap = false;
            for (int i = 0; i < probes && !overlap; ++i) {
                CVec z = phi_j(rng.ball_point(a.n, radius[j]));
                if (phi_k(z).norm() < radius[k]) overlap = true;
            }
            if (overlap) {
                rep.separated = false;
                rep.worst_j = j;
                rep.worst_k = k;
                return rep;
            }
        }
    return rep;
}

}  // namespace bergball

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergball {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Multi-index over n variables.
using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& t) {
    int s = 0;
    for (int v : t) s += v;
    return s;
}

inline double mi_factorial(const MultiIndex& t) {
    double f = 1.0;
    for (int v : t)
        for (int k = 2; k <= v; ++k) f *= k;
    return f;
}

inline double factorial(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
}

// All multi-indices of length n with |theta| == total.
inline void multi_indices_of_order(int n, int total, std::vector<MultiIndex>& out) {
    MultiIndex cur(n, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    if (n == 0) return;
    rec(rec, 0, total);
}

inline std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= max_order; ++d) multi_indices_of_order(n, d, out);
    return out;
}

// Integer complex power by repeated multiplication.
inline Cplx ipow(Cplx b, int e) {
    if (e < 0) return 1.0 / ipow(b, -e);
    Cplx r = 1.0;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Principal-branch power with an integer fast path.
inline Cplx cpow_principal(Cplx base, double s) {
    double rs = std::round(s);
    if (std::abs(s - rs) < 1e-12 && std::abs(rs) < 64.0) return ipow(base, static_cast<int>(rs));
    return std::exp(s * std::log(base));
}

inline Cplx monomial(const CVec& z, const MultiIndex& theta) {
    Cplx r = 1.0;
    for (int j = 0; j < static_cast<int>(theta.size()); ++j) r *= ipow(z[j], theta[j]);
    return r;
}

// Deterministic RNG. Distributions are hand-rolled so that streams do not
// depend on the standard library's implementation-defined adapters.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * u01(); }

    Cplx unit_disc() {
        for (;;) {
            double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
            if (x * x + y * y < 1.0) return {x, y};
        }
    }

    // Uniform point of the Euclidean ball of radius rmax in C^n.
    CVec ball_point(int n, double rmax = 1.0) {
        for (;;) {
            CVec z(n);
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
                z[j] = Cplx(x, y);
                s += x * x + y * y;
            }
            if (s < 1.0) return rmax * z;
        }
    }

    CVec sphere_point(int n) {
        for (;;) {
            CVec z = ball_point(n);
            double r = z.norm();
            if (r > 1e-3) return z / r;
        }
    }
};

inline std::string format_point(const CVec& z) {
    std::string s = "(";
    for (int j = 0; j < z.size(); ++j) {
        if (j) s += ", ";
        s += std::to_string(z[j].real()) + (z[j].imag() < 0 ? "-" : "+") +
             std::to_string(std::abs(z[j].imag())) + "i";
    }
    return s + ")";
}

}  // namespace bergball

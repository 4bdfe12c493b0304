#pragma once

// Reference computations for the tests. None of these call into the library
// code they are used to check.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Occupations = std::vector<int>;
inline constexpr double pi = std::numbers::pi;

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal folded into Q.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

inline Eigen::MatrixXcd random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Complex(u(rng), u(rng));
    return z;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Output state of a Fock input, by expanding prod_j (sum_i U_ij b_i^dag)^{n_j}
/// / sqrt(n_j!) as a polynomial in the output creation operators.
inline std::map<Occupations, Complex> expand_output(const Eigen::MatrixXcd& u, const Occupations& input) {
    const int m = static_cast<int>(u.rows());
    std::map<Occupations, Complex> poly{{Occupations(m, 0), Complex(1.0)}};
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < input[j]; ++k) {
            std::map<Occupations, Complex> next;
            for (const auto& [occ, c] : poly)
                for (int i = 0; i < m; ++i) {
                    Occupations o = occ;
                    ++o[i];
                    next[o] += c * u(i, j);
                }
            poly = std::move(next);
        }
        for (auto& [occ, c] : poly) c /= std::sqrt(factorial(input[j]));
    }
    // monomial prod b_i^dag^{m_i} |0> = sqrt(prod m_i!) |m>
    for (auto& [occ, c] : poly) {
        double norm = 1.0;
        for (int n : occ) norm *= factorial(n);
        c *= std::sqrt(norm);
    }
    return poly;
}

inline Complex expanded_amplitude(const Eigen::MatrixXcd& u, const Occupations& input, const Occupations& output) {
    const auto poly = expand_output(u, input);
    const auto it = poly.find(output);
    return it == poly.end() ? Complex(0.0) : it->second;
}

/// Tritter and quarter written out entry by entry.
inline Eigen::MatrixXcd tritter_matrix() {
    const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
    Eigen::MatrixXcd t(3, 3);
    t << 1.0, w, w, w, 1.0, w, w, w, 1.0;
    return t / std::sqrt(3.0);
}

inline Eigen::MatrixXcd quarter_matrix() {
    Eigen::MatrixXcd q(4, 4);
    q << 1, -1, -1, -1, -1, 1, -1, -1, -1, -1, 1, -1, -1, -1, -1, 1;
    return q / 2.0;
}

/// S diag(e^{-i phi_k}) S.
inline Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& s, const std::vector<double>& phases) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(s.rows(), s.cols());
    for (std::size_t k = 0; k < phases.size(); ++k)
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = std::polar(1.0, -phases[k]);
    return s * d * s;
}

/// Fock probabilities of all outcomes of a sandwich interferometer.
inline std::map<Occupations, double> outcome_probabilities(const Eigen::MatrixXcd& s, const std::vector<double>& phases,
                                                           const Occupations& input) {
    std::map<Occupations, double> out;
    for (const auto& [occ, c] : expand_output(sandwich(s, phases), input)) out[occ] = std::norm(c);
    return out;
}

/// Photon-counting Fisher information of a single phase by central
/// differences of the expanded probabilities.
inline double fisher_fd(const Eigen::MatrixXcd& s, std::size_t mode, const Occupations& input, double phi,
                        double h = 1e-4) {
    std::vector<double> base(static_cast<std::size_t>(s.rows()), 0.0);
    auto at = [&](double x) {
        std::vector<double> p = base;
        p[mode] = x;
        return outcome_probabilities(s, p, input);
    };
    const auto p0 = at(phi);
    const auto pp = at(phi + h);
    const auto pm = at(phi - h);
    double info = 0.0;
    for (const auto& [occ, p] : p0) {
        if (p < 1e-9) continue;
        const double d = (pp.at(occ) - pm.at(occ)) / (2.0 * h);
        info += d * d / p;
    }
    return info;
}

/// Single-phase photon-counting Fisher information of the |1,1,1> tritter
/// interferometer as a closed expression in phi.
inline double tritter_cfi_closed_form(double p) {
    const double s3 = std::sqrt(3.0);
    using std::cos;
    using std::pow;
    using std::sin;
    const double d1 = -6 * s3 * sin(p) + 3 * cos(2 * p) + 4 * cos(3 * p) + 6 * (s3 * sin(p) + 1) * cos(p) + 14;
    const double n1 = 2 * pow(sin(1.5 * p), 2) * pow(s3 * sin(p / 2) + cos(p / 2) + 2 * cos(1.5 * p), 2);
    const double d2 = 12 * s3 * sin(p) - 6 * s3 * sin(2 * p) - 12 * cos(p) - 6 * cos(2 * p) + 16 * cos(3 * p) + 29;
    const double n2 = pow(sin(p) + sin(2 * p) - 4 * sin(3 * p) + s3 * cos(p) - s3 * cos(2 * p), 2);
    return 16.0 / 9.0 * (3 * pow(cos(1.5 * p), 2) + n1 / d1 + n2 / d2);
}

/// Smallest denominator of the expression above; near zero at its removable
/// singularities.
inline double tritter_cfi_min_denominator(double p) {
    const double s3 = std::sqrt(3.0);
    using std::cos;
    using std::sin;
    const double d1 = -6 * s3 * sin(p) + 3 * cos(2 * p) + 4 * cos(3 * p) + 6 * (s3 * sin(p) + 1) * cos(p) + 14;
    const double d2 = 12 * s3 * sin(p) - 6 * s3 * sin(2 * p) - 12 * cos(p) - 6 * cos(2 * p) + 16 * cos(3 * p) + 29;
    return std::min(std::abs(d1), std::abs(d2));
}

/// Limit of the closed form at a removable singularity: mean of a symmetric
/// pair of nearby points, corrected to second order by Richardson.
inline double tritter_cfi_limit(double p) {
    const double h = 1e-3;
    const double a = 0.5 * (tritter_cfi_closed_form(p + h) + tritter_cfi_closed_form(p - h));
    const double b = 0.5 * (tritter_cfi_closed_form(p + 2 * h) + tritter_cfi_closed_form(p - 2 * h));
    return (4.0 * a - b) / 3.0;
}

}  // namespace oracle

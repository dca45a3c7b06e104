#pragma once

#include "qiso/scheme.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qiso {

/// Floating-point eigen data of a scheme. Never used on the certification path.
struct SpectralDiagnostics {
    Eigen::MatrixXd P;      // P(j,i): eigenvalue of A_i on E_j
    Eigen::MatrixXd Q;      // |X| * P^{-1}
    std::vector<double> krein;  // q_ij^k at index (i*r + j)*r + k
    std::vector<double> multiplicities;
    int Nq = 0;
    double pq_residual = 0;     // max |P*Q - |X| I|
    double min_krein = 0;
    double min_eigen_gap = 0;
    bool separated = true;      // eigenspaces distinguishable at the tolerance
    bool formally_self_dual = false;
    double tolerance = 1e-6;

    double krein_at(int i, int j, int k) const {
        const int r = static_cast<int>(P.rows());
        return krein[static_cast<std::size_t>((i * r + j) * r + k)];
    }
};

/// Recovers P from the common eigenvectors of the intersection matrices
/// L_i = [p_ij^k]_{k,j}, which act on the algebra exactly as A_i does. Rows
/// are ordered by decreasing eigenvalue of A_1, then A_2, and so on.
inline SpectralDiagnostics numeric_spectrum(const AssociationScheme& s, double tolerance = 1e-6) {
    const auto& p = s.intersection();
    const int r = s.rank();
    std::vector<Eigen::MatrixXd> L(r, Eigen::MatrixXd::Zero(r, r));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < r; ++j) L[i](k, j) = static_cast<double>(p(i, j, k));

    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(r, r);
    for (int i = 1; i < r; ++i) mix += std::sqrt(2.0 + 1.37 * i) * L[i];

    SpectralDiagnostics out;
    out.tolerance = tolerance;
    Eigen::EigenSolver<Eigen::MatrixXd> es(mix);
    const Eigen::VectorXcd lambda = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();

    std::vector<std::vector<double>> rows(r, std::vector<double>(r));
    for (int m = 0; m < r; ++m) {
        if (std::abs(lambda(m).imag()) > tolerance) out.separated = false;
        Eigen::VectorXd v = vecs.col(m).real();
        if (v.norm() < tolerance) v = vecs.col(m).imag();
        v.normalize();
        for (int i = 0; i < r; ++i) rows[m][i] = v.dot(L[i] * v);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    });

    out.min_eigen_gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
            const double ga = std::abs(lambda(a) - lambda(b));
            out.min_eigen_gap = std::min(out.min_eigen_gap, ga);
        }
    if (r > 1 && out.min_eigen_gap < tolerance) out.separated = false;

    out.P.resize(r, r);
    for (int m = 0; m < r; ++m)
        for (int i = 0; i < r; ++i) out.P(m, i) = rows[m][i];

    const double nx = static_cast<double>(s.size());
    out.Q = nx * out.P.inverse();
    out.pq_residual = (out.P * out.Q - nx * Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
    out.multiplicities.resize(r);
    for (int j = 0; j < r; ++j) out.multiplicities[j] = out.Q(0, j);

    // E_i o E_j = (1/|X|^2) sum_l Q_li Q_lj A_l and A_l = sum_k P_kl E_k.
    out.krein.assign(static_cast<std::size_t>(r * r * r), 0.0);
    out.min_krein = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                double acc = 0;
                for (int l = 0; l < r; ++l) acc += out.Q(l, i) * out.Q(l, j) * out.P(k, l);
                acc /= nx;
                out.krein[static_cast<std::size_t>((i * r + j) * r + k)] = acc;
                out.min_krein = std::min(out.min_krein, acc);
                if (acc > tolerance) ++out.Nq;
            }
    out.formally_self_dual = (out.P - out.Q).cwiseAbs().maxCoeff() < tolerance;
    return out;
}

}  // namespace qiso

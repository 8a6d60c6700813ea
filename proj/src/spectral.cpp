#include "netcon/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace netcon {

Eigen::MatrixXd symmetrized(const DirectedNetwork& net) {
    const int n = net.size();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (net.edge(i, j)) {
                w(i, j) += 1.0;
                w(j, i) += 1.0;
            }
    return w;
}

double spectral_radius(const Eigen::MatrixXd& sym) {
    const auto n = sym.rows();
    if (sym.cols() != n) throw std::invalid_argument("matrix must be square");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (sym(i, j) != sym(j, i)) throw std::invalid_argument("matrix must be symmetric");
    if (sym.minCoeff() < 0.0) throw std::invalid_argument("matrix entries must be nonnegative");

    if (sym.isZero(0.0)) return 0.0;

    // Power iteration on the shifted matrix sym + c I. The shift makes the
    // dominant eigenvalue strictly largest in magnitude (graph symmetrizations
    // are often bipartite, where the unshifted iteration stalls between the
    // +/- lambda eigenvectors). Stops once the Rayleigh quotient has
    // stabilized, measured by the eigen-residual of the iterate.
    const double shift = 1.0 + sym.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::MatrixXd b = sym;
    b.diagonal().array() += shift;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    v.normalize();
    double rayleigh = shift;
    bool reseeded = false;
    for (int iter = 0; iter < 200000; ++iter) {
        Eigen::VectorXd w = b * v;
        rayleigh = v.dot(w);
        if ((w - rayleigh * v).norm() < 1e-12 * (1.0 + std::abs(rayleigh))) break;
        const double norm = w.norm();
        if (norm == 0.0) {
            if (reseeded) break;
            // Iterate landed in the kernel; restart from a fixed pseudo-random seed.
            reseeded = true;
            std::uint64_t state = 0x9e3779b97f4a7c15ULL;
            for (Eigen::Index i = 0; i < n; ++i) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                v(i) = 0.25 + static_cast<double>(state >> 40) / static_cast<double>(1ULL << 24);
            }
            v.normalize();
            continue;
        }
        v = w / norm;
    }
    return rayleigh - shift;
}

double auto_alpha(const DirectedNetwork& net, double factor) {
    const double lambda = spectral_radius(symmetrized(net));
    if (lambda <= 0.0) throw std::invalid_argument("auto alpha undefined on an edgeless network");
    return factor / lambda;
}

}  // namespace netcon

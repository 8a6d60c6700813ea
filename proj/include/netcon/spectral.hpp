#ifndef NETCON_SPECTRAL_HPP
#define NETCON_SPECTRAL_HPP

#include <Eigen/Dense>

#include "netcon/network.hpp"

namespace netcon {

/// G + G^T as a dense matrix with entries in {0, 1, 2}.
Eigen::MatrixXd symmetrized(const DirectedNetwork& net);

/// Largest eigenvalue of a symmetric matrix with nonnegative entries,
/// to 1e-10 absolute. Exactly 0 for the zero matrix. Throws
/// std::invalid_argument on non-symmetric input.
double spectral_radius(const Eigen::MatrixXd& sym);

/// alpha = factor / lambda with lambda = spectral_radius(G + G^T).
/// Throws std::invalid_argument on an edgeless network (lambda = 0).
double auto_alpha(const DirectedNetwork& net, double factor = 0.8);

}  // namespace netcon

#endif

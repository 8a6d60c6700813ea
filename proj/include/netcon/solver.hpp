#ifndef NETCON_SOLVER_HPP
#define NETCON_SOLVER_HPP

#include <Eigen/Dense>
#include <vector>

#include "netcon/errors.hpp"
#include "netcon/network.hpp"

namespace netcon {

/// Per-location action vector; entries nonnegative and finite.
struct Contract {
    Eigen::VectorXd x;

    static Contract from_vector(Eigen::VectorXd v);
    int size() const { return static_cast<int>(x.size()); }
};

/// Partition of the agents into classes constrained to a common action.
struct EqualityClasses {
    std::vector<std::vector<int>> classes;

    static EqualityClasses singletons(int n);
    static EqualityClasses one_class(int n);
    void validate(int n) const;
};

/// U_i = a x_i - x_i^2 / 2 + alpha * sum_j g_ij x_i x_j.
double utility(int agent, const Contract& x, const DirectedNetwork& net, const ModelParams& params);

/// Sum of utilities over all agents.
double welfare(const Contract& x, const DirectedNetwork& net, const ModelParams& params);

/// Welfare-maximizing contract (I - alpha (G + G^T))^{-1} a 1. Requires
/// alpha * lambda < 1; throws SpectralConditionViolated otherwise. The
/// solve is a dense factorization with a 1e-9 infinity-norm residual check.
Contract first_best(const DirectedNetwork& net, const ModelParams& params);

/// (I - delta M)^{-1} 1 for a nonnegative square matrix M.
Eigen::VectorXd katz_bonacich(const Eigen::MatrixXd& m, double delta);

/// Maximizes welfare subject to equal actions within each class, via the
/// class-aggregated first-order conditions. Throws ReducedSystemNotConcave
/// when the reduced Hessian is not negative definite.
Contract constrained_first_best(const DirectedNetwork& net, const ModelParams& params,
                                const EqualityClasses& classes);

struct PriceSchedule {
    Eigen::VectorXd prices;  // p_i = a - x_i/2 + alpha * sum_j g_ij x_j
    double profit;           // sum_i (p_i - c) x_i
};

/// Surplus-extracting per-agent prices and the resulting profit. Requires
/// params.c to be set.
PriceSchedule price_schedule(const Contract& x, const DirectedNetwork& net,
                             const ModelParams& params);

/// Per-agent taxes/subsidies t_i = x_i - a - alpha * sum_j g_ij x_j making
/// x the fixed point of the individual best responses under a + t.
Eigen::VectorXd taxes_for_target(const Contract& x, const DirectedNetwork& net,
                                 const ModelParams& params);

}  // namespace netcon

#endif

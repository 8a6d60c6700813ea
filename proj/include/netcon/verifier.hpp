#ifndef NETCON_VERIFIER_HPP
#define NETCON_VERIFIER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "netcon/network.hpp"
#include "netcon/solver.hpp"

namespace netcon {

/// Gains in (-inf, kGainTolerance] are treated as non-profitable; the
/// deviation notions require strict improvement and degenerate swaps of
/// equal quantities produce exact zeros that floating point perturbs.
inline constexpr double kGainTolerance = 1e-9;

/// A coalition S and a permutation of its members' locations: member
/// coalition[k] announces the location of images[k]. Announcing a location
/// outside S triggers the collision punishment and is never profitable, so
/// images is a bijection S -> S and must differ from the identity.
struct Deviation {
    std::vector<int> coalition;
    std::vector<int> images;

    void validate(int n) const;
};

struct Violation {
    Deviation deviation;
    std::vector<double> gains;  // per member, aligned with deviation.coalition
    double total = 0.0;
};

enum class VerifyMode { Individual, Group, GroupTransfers };

const char* to_string(VerifyMode mode);

struct VerificationReport {
    bool pass = true;
    VerifyMode mode = VerifyMode::Group;
    bool adjacency_required = true;
    int max_size = 0;
    double alpha = 0.0;
    std::vector<Violation> violations;  // canonical order: coalition then permutation
    std::uint64_t coalitions_examined = 0;
    std::uint64_t permutations_examined = 0;
};

/// Exact per-member utility differences between the permuted and the
/// truthful profile, with non-members held at their truthful allocations.
Eigen::VectorXd deviation_gains(const Contract& x, const DirectedNetwork& net,
                                const ModelParams& params, const Deviation& dev);

/// Enumerates every coalition of sizes 2..max_size (adjacent cliques, or all
/// subsets when adjacency_required is false) and every non-identity
/// permutation. Fails iff some deviation makes every member strictly better
/// off by more than kGainTolerance. `workers` <= 0 reads NETCON_WORKERS
/// (default 1); the report is identical for any worker count.
VerificationReport verify_group_ic(const Contract& x, const DirectedNetwork& net,
                                   const ModelParams& params, int max_size,
                                   bool adjacency_required = true, int workers = 0);

/// Same enumeration with the side-payment criterion: fails iff some
/// deviation raises the members' total utility by more than kGainTolerance.
VerificationReport verify_group_ic_transfers(const Contract& x, const DirectedNetwork& net,
                                             const ModelParams& params, int max_size,
                                             bool adjacency_required = true, int workers = 0);

/// Collision-punishment check for unilateral misreports: a lone deviator
/// selects an occupied location and everyone gets zero, so truth-telling is
/// optimal iff every agent's truthful payoff is >= 0.
VerificationReport verify_individual_ic(const Contract& x, const DirectedNetwork& net,
                                        const ModelParams& params);

/// (x_j - x_i) (sum_k g_ik x_k - sum_k g_jk x_k) for an undirected network.
/// A value above kGainTolerance signals a profitable pair swap with
/// transfers. Throws std::invalid_argument on a directed network.
double pairwise_swap_margin(const Contract& x, const DirectedNetwork& net, int i, int j);

/// First-order welfare change of moving mass from agent i to agent j:
/// (x_i - x_j) - alpha sum_k (g_ik + g_ki) x_k + alpha sum_k (g_jk + g_kj) x_k.
double marginal_transfer_welfare(const Contract& x, const DirectedNetwork& net,
                                 const ModelParams& params, int decrease_agent,
                                 int increase_agent);

/// Like the group verifiers, but coalitions must avoid `known` agents
/// (locations the planner can pin to identities).
VerificationReport verify_with_known_identities(const Contract& x, const DirectedNetwork& net,
                                                const ModelParams& params,
                                                const std::vector<int>& known, VerifyMode mode,
                                                int max_size, bool adjacency_required = true);

using FamilyGenerator = std::function<std::optional<DirectedNetwork>()>;

struct SearchRecord {
    int instance = 0;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    double alpha = 0.0;
    bool feasible = true;  // false when alpha violates the spectral condition
    VerifyMode mode = VerifyMode::Group;
    bool adjacency_required = true;
    bool pass = true;
    std::vector<Violation> minimal_violations;  // smallest violating coalition size only
};

/// For each generated instance and alpha, computes the first-best and runs
/// the selected verifier modes, keeping the minimal violating deviations.
std::vector<SearchRecord> search_counterexample(
    const FamilyGenerator& generator, const std::vector<double>& alpha_grid,
    const std::vector<std::pair<VerifyMode, bool>>& modes, int max_size_cap = 6);

}  // namespace netcon

#endif

#include "netcon/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netcon/spectral.hpp"

namespace netcon {

namespace {

constexpr double kResidualTol = 1e-9;

Eigen::VectorXd solve_checked(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const char* what) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::VectorXd x = lu.solve(b);
    const double residual = (a * x - b).lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual) || residual >= kResidualTol)
        throw SingularSystem(std::string(what) + ": solve residual " + std::to_string(residual));
    return x;
}

void check_dims(const Contract& x, const DirectedNetwork& net) {
    if (x.size() != net.size()) throw std::invalid_argument("contract length does not match agent count");
}

}  // namespace

Contract Contract::from_vector(Eigen::VectorXd v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i)) || v(i) < 0.0)
            throw std::invalid_argument("contract entries must be nonnegative and finite");
    return Contract{std::move(v)};
}

EqualityClasses EqualityClasses::singletons(int n) {
    EqualityClasses c;
    c.classes.reserve(n);
    for (int i = 0; i < n; ++i) c.classes.push_back({i});
    return c;
}

EqualityClasses EqualityClasses::one_class(int n) {
    EqualityClasses c;
    c.classes.emplace_back(n);
    std::iota(c.classes[0].begin(), c.classes[0].end(), 0);
    return c;
}

void EqualityClasses::validate(int n) const {
    std::vector<char> seen(n, 0);
    for (const auto& cls : classes) {
        if (cls.empty()) throw std::invalid_argument("empty equality class");
        for (int i : cls) {
            if (i < 0 || i >= n) throw std::invalid_argument("class member out of range");
            if (seen[i]) throw std::invalid_argument("classes must be disjoint");
            seen[i] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::invalid_argument("classes must cover all agents");
}

double utility(int agent, const Contract& x, const DirectedNetwork& net, const ModelParams& params) {
    check_dims(x, net);
    if (agent < 0 || agent >= net.size()) throw std::out_of_range("agent index out of range");
    const double xi = x.x(agent);
    double ext = 0.0;
    for (int j : net.influencers(agent)) ext += x.x(j);
    return params.a * xi - 0.5 * xi * xi + params.alpha * xi * ext;
}

double welfare(const Contract& x, const DirectedNetwork& net, const ModelParams& params) {
    check_dims(x, net);
    double total = 0.0;
    for (int i = 0; i < net.size(); ++i) total += utility(i, x, net, params);
    return total;
}

Contract first_best(const DirectedNetwork& net, const ModelParams& params) {
    params.validate();
    const int n = net.size();
    const Eigen::MatrixXd w = symmetrized(net);
    const double lambda = spectral_radius(w);
    if (params.alpha * lambda >= 1.0 - 1e-10) throw SpectralConditionViolated(params.alpha, lambda);

    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - params.alpha * w;
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, params.a);
    return Contract{solve_checked(system, rhs, "first_best")};
}

Eigen::VectorXd katz_bonacich(const Eigen::MatrixXd& m, double delta) {
    const auto n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("matrix must be square");
    if (m.minCoeff() < 0.0) throw std::invalid_argument("matrix must be nonnegative");
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    // For a general nonnegative M the spectral radius is bounded by that of
    // its symmetric part, so this check is conservative but sufficient.
    const double lambda = spectral_radius(sym);
    if (delta * lambda >= 1.0 - 1e-10) throw SpectralConditionViolated(delta, lambda);

    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - delta * m;
    return solve_checked(system, Eigen::VectorXd::Ones(n), "katz_bonacich");
}

Contract constrained_first_best(const DirectedNetwork& net, const ModelParams& params,
                                const EqualityClasses& classes) {
    params.validate();
    const int n = net.size();
    classes.validate(n);
    const int k = static_cast<int>(classes.classes.size());
    const Eigen::MatrixXd w = symmetrized(net);

    std::vector<int> class_of(n, -1);
    for (int c = 0; c < k; ++c)
        for (int i : classes.classes[c]) class_of[i] = c;

    Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (w(i, j) != 0.0) agg(class_of[i], class_of[j]) += w(i, j);

    Eigen::VectorXd sizes(k);
    for (int c = 0; c < k; ++c) sizes(c) = static_cast<double>(classes.classes[c].size());
    const Eigen::MatrixXd diag = sizes.asDiagonal();

    // Reduced Hessian along the constrained subspace: alpha * agg - diag(sizes).
    const Eigen::MatrixXd hessian = params.alpha * agg - diag;
    Eigen::LLT<Eigen::MatrixXd> llt(-hessian);
    if (llt.info() != Eigen::Success)
        throw ReducedSystemNotConcave("constrained problem is not strictly concave on the subspace");

    const Eigen::MatrixXd system = diag - params.alpha * agg;
    const Eigen::VectorXd rhs = params.a * sizes;
    const Eigen::VectorXd z = solve_checked(system, rhs, "constrained_first_best");

    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = z(class_of[i]);
    return Contract{x};
}

PriceSchedule price_schedule(const Contract& x, const DirectedNetwork& net,
                             const ModelParams& params) {
    check_dims(x, net);
    if (!params.c) throw std::invalid_argument("price_schedule requires a marginal cost c");
    const int n = net.size();
    PriceSchedule out;
    out.prices.resize(n);
    out.profit = 0.0;
    for (int i = 0; i < n; ++i) {
        double ext = 0.0;
        for (int j : net.influencers(i)) ext += x.x(j);
        out.prices(i) = params.a - 0.5 * x.x(i) + params.alpha * ext;
        out.profit += (out.prices(i) - *params.c) * x.x(i);
    }
    return out;
}

Eigen::VectorXd taxes_for_target(const Contract& x, const DirectedNetwork& net,
                                 const ModelParams& params) {
    check_dims(x, net);
    const int n = net.size();
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) {
        double ext = 0.0;
        for (int j : net.influencers(i)) ext += x.x(j);
        t(i) = x.x(i) - params.a - params.alpha * ext;
    }
    return t;
}

}  // namespace netcon

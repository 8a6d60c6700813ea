#include "netcon/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "netcon/coalitions.hpp"
#include "netcon/spectral.hpp"

namespace netcon {

const char* to_string(VerifyMode mode) {
    switch (mode) {
        case VerifyMode::Individual: return "ic";
        case VerifyMode::Group: return "group";
        case VerifyMode::GroupTransfers: return "group-transfers";
    }
    return "?";
}

void Deviation::validate(int n) const {
    if (coalition.size() < 2) throw std::invalid_argument("coalition must have at least two members");
    if (images.size() != coalition.size()) throw std::invalid_argument("images must match coalition size");
    if (!std::is_sorted(coalition.begin(), coalition.end()))
        throw std::invalid_argument("coalition must be sorted");
    std::vector<char> member(n, 0);
    for (int i : coalition) {
        if (i < 0 || i >= n) throw std::invalid_argument("coalition member out of range");
        if (member[i]) throw std::invalid_argument("coalition members must be distinct");
        member[i] = 1;
    }
    std::vector<char> hit(n, 0);
    for (int i : images) {
        if (i < 0 || i >= n || !member[i]) throw std::invalid_argument("image outside the coalition");
        if (hit[i]) throw std::invalid_argument("images must form a permutation");
        hit[i] = 1;
    }
    if (images == coalition) throw std::invalid_argument("identity permutation is not a deviation");
}

namespace {

struct GainContext {
    const Eigen::VectorXd& x;
    const ModelParams& params;
    std::vector<std::vector<int>> influencers;
    Eigen::VectorXd y;  // deviated profile, members patched then restored

    GainContext(const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& params)
        : x(x), params(params), y(x) {
        influencers.reserve(net.size());
        for (int i = 0; i < net.size(); ++i) influencers.push_back(net.influencers(i));
    }

    void apply(const std::vector<int>& coalition, const std::vector<int>& images) {
        for (std::size_t k = 0; k < coalition.size(); ++k) y(coalition[k]) = x(images[k]);
    }

    void restore(const std::vector<int>& coalition) {
        for (int i : coalition) y(i) = x(i);
    }

    double member_gain(int i) const {
        const double xi = x(i);
        const double yi = y(i);
        double ext_x = 0.0, ext_y = 0.0;
        for (int j : influencers[i]) {
            ext_x += x(j);
            ext_y += y(j);
        }
        return params.a * (yi - xi) - 0.5 * (yi * yi - xi * xi) +
               params.alpha * (yi * ext_y - xi * ext_x);
    }
};

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NETCON_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return 1;
}

struct CoalitionInfo {
    std::vector<int> members;
    std::vector<double> external;  // sum_{j notin S} g_ij x_j per member
    bool uniform_internal_weight = false;
};

CoalitionInfo prepare_coalition(const std::vector<int>& members, const Eigen::VectorXd& x,
                                const DirectedNetwork& net) {
    CoalitionInfo info;
    info.members = members;
    std::vector<char> in_s(net.size(), 0);
    for (int i : members) in_s[i] = 1;
    info.external.reserve(members.size());
    for (int i : members) {
        double ext = 0.0;
        for (int j : net.influencers(i))
            if (!in_s[j]) ext += x(j);
        info.external.push_back(ext);
    }
    // The internal-term cancellation behind the aggregated criterion is only
    // valid when all internal pairs carry the same symmetrized weight.
    int weight = -1;
    bool uniform = true;
    for (std::size_t p = 0; p < members.size() && uniform; ++p)
        for (std::size_t q = p + 1; q < members.size(); ++q) {
            const int w = (net.edge(members[p], members[q]) ? 1 : 0) +
                          (net.edge(members[q], members[p]) ? 1 : 0);
            if (weight < 0) weight = w;
            if (w != weight) { uniform = false; break; }
        }
    info.uniform_internal_weight = uniform;
    return info;
}

struct EngineResult {
    std::vector<Violation> violations;
    std::uint64_t permutations = 0;
};

EngineResult scan_coalition(const CoalitionInfo& info, GainContext& ctx, VerifyMode mode) {
    EngineResult result;
    const auto& s = info.members;
    const std::size_t size = s.size();
    std::vector<int> images = s;
    while (std::next_permutation(images.begin(), images.end())) {
        ++result.permutations;
        bool violating = false;
        if (mode == VerifyMode::GroupTransfers && info.uniform_internal_weight) {
            // Fast path: internal externalities cancel, leaving the flow
            // from outside the coalition.
            double total = 0.0;
            for (std::size_t k = 0; k < size; ++k)
                total += (ctx.x(images[k]) - ctx.x(s[k])) * info.external[k];
            violating = ctx.params.alpha * total > kGainTolerance;
        } else {
            ctx.apply(s, images);
            if (mode == VerifyMode::GroupTransfers) {
                double total = 0.0;
                for (int i : s) total += ctx.member_gain(i);
                violating = total > kGainTolerance;
            } else {
                violating = true;
                for (int i : s)
                    if (ctx.member_gain(i) <= kGainTolerance) { violating = false; break; }
            }
            ctx.restore(s);
        }
        if (violating) {
            Violation v;
            v.deviation.coalition = s;
            v.deviation.images = images;
            ctx.apply(s, images);
            v.gains.reserve(size);
            for (int i : s) v.gains.push_back(ctx.member_gain(i));
            ctx.restore(s);
            v.total = 0.0;
            for (double g : v.gains) v.total += g;
            result.violations.push_back(std::move(v));
        }
    }
    // next_permutation leaves `images` sorted again; nothing to restore.
    return result;
}

VerificationReport run_engine(const Contract& x, const DirectedNetwork& net,
                              const ModelParams& params, int max_size, bool adjacency_required,
                              VerifyMode mode, int workers,
                              const std::vector<int>* excluded = nullptr) {
    if (x.size() != net.size()) throw std::invalid_argument("contract length does not match agent count");
    const int cap = std::min(max_size, net.size());
    VerificationReport report;
    report.mode = mode;
    report.adjacency_required = adjacency_required;
    report.max_size = cap;
    report.alpha = params.alpha;
    std::vector<std::vector<int>> coalitions;
    if (cap >= 2) {
        CoalitionStream stream(net, 2, cap,
                               adjacency_required ? CoalitionMode::AdjacentCliques
                                                  : CoalitionMode::AllSubsets);
        coalitions = stream.all();
    }
    if (excluded && !excluded->empty()) {
        std::vector<char> banned(net.size(), 0);
        for (int i : *excluded) banned[i] = 1;
        std::erase_if(coalitions, [&](const std::vector<int>& s) {
            return std::any_of(s.begin(), s.end(), [&](int i) { return banned[i] != 0; });
        });
    }
    report.coalitions_examined = coalitions.size();

    std::vector<CoalitionInfo> infos;
    infos.reserve(coalitions.size());
    for (const auto& s : coalitions) infos.push_back(prepare_coalition(s, x.x, net));

    const int threads = std::min<int>(worker_count(workers), std::max<std::size_t>(infos.size(), 1));
    std::vector<EngineResult> partial(infos.size());
    auto work = [&](int t) {
        GainContext ctx(x.x, net, params);
        for (std::size_t c = t; c < infos.size(); c += threads)
            partial[c] = scan_coalition(infos[c], ctx, mode);
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    for (auto& part : partial) {
        report.permutations_examined += part.permutations;
        for (auto& v : part.violations) report.violations.push_back(std::move(v));
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  if (a.deviation.coalition.size() != b.deviation.coalition.size())
                      return a.deviation.coalition.size() < b.deviation.coalition.size();
                  if (a.deviation.coalition != b.deviation.coalition)
                      return a.deviation.coalition < b.deviation.coalition;
                  return a.deviation.images < b.deviation.images;
              });
    report.pass = report.violations.empty();
    return report;
}

}  // namespace

Eigen::VectorXd deviation_gains(const Contract& x, const DirectedNetwork& net,
                                const ModelParams& params, const Deviation& dev) {
    if (x.size() != net.size()) throw std::invalid_argument("contract length does not match agent count");
    dev.validate(net.size());
    GainContext ctx(x.x, net, params);
    ctx.apply(dev.coalition, dev.images);
    Eigen::VectorXd gains(static_cast<Eigen::Index>(dev.coalition.size()));
    for (std::size_t k = 0; k < dev.coalition.size(); ++k)
        gains(static_cast<Eigen::Index>(k)) = ctx.member_gain(dev.coalition[k]);
    return gains;
}

VerificationReport verify_group_ic(const Contract& x, const DirectedNetwork& net,
                                   const ModelParams& params, int max_size,
                                   bool adjacency_required, int workers) {
    return run_engine(x, net, params, max_size, adjacency_required, VerifyMode::Group, workers);
}

VerificationReport verify_group_ic_transfers(const Contract& x, const DirectedNetwork& net,
                                             const ModelParams& params, int max_size,
                                             bool adjacency_required, int workers) {
    return run_engine(x, net, params, max_size, adjacency_required, VerifyMode::GroupTransfers,
                      workers);
}

VerificationReport verify_individual_ic(const Contract& x, const DirectedNetwork& net,
                                        const ModelParams& params) {
    VerificationReport report;
    report.mode = VerifyMode::Individual;
    report.adjacency_required = false;
    report.max_size = 1;
    report.alpha = params.alpha;
    report.coalitions_examined = net.size();
    report.permutations_examined = net.size();
    for (int i = 0; i < net.size(); ++i) {
        const double gain = -utility(i, x, net, params);  // misreport collides, everyone gets 0
        if (gain > kGainTolerance) {
            Violation v;
            v.deviation.coalition = {i};
            v.deviation.images = {i};
            v.gains = {gain};
            v.total = gain;
            report.violations.push_back(std::move(v));
        }
    }
    report.pass = report.violations.empty();
    return report;
}

double pairwise_swap_margin(const Contract& x, const DirectedNetwork& net, int i, int j) {
    if (!net.is_symmetric())
        throw std::invalid_argument("pairwise_swap_margin requires an undirected network");
    if (i == j) throw std::invalid_argument("agents must differ");
    if (i < 0 || i >= net.size() || j < 0 || j >= net.size())
        throw std::out_of_range("agent index out of range");
    if (x.size() != net.size()) throw std::invalid_argument("contract length does not match agent count");
    double sum_i = 0.0, sum_j = 0.0;
    for (int k : net.influencers(i)) sum_i += x.x(k);
    for (int k : net.influencers(j)) sum_j += x.x(k);
    return (x.x(j) - x.x(i)) * (sum_i - sum_j);
}

double marginal_transfer_welfare(const Contract& x, const DirectedNetwork& net,
                                 const ModelParams& params, int decrease_agent,
                                 int increase_agent) {
    if (decrease_agent == increase_agent) throw std::invalid_argument("agents must differ");
    if (decrease_agent < 0 || decrease_agent >= net.size() || increase_agent < 0 ||
        increase_agent >= net.size())
        throw std::out_of_range("agent index out of range");
    if (x.size() != net.size()) throw std::invalid_argument("contract length does not match agent count");
    const Eigen::MatrixXd w = symmetrized(net);
    const double sum_i = w.row(decrease_agent).dot(x.x);
    const double sum_j = w.row(increase_agent).dot(x.x);
    return (x.x(decrease_agent) - x.x(increase_agent)) - params.alpha * sum_i +
           params.alpha * sum_j;
}

VerificationReport verify_with_known_identities(const Contract& x, const DirectedNetwork& net,
                                                const ModelParams& params,
                                                const std::vector<int>& known, VerifyMode mode,
                                                int max_size, bool adjacency_required) {
    if (mode == VerifyMode::Individual) return verify_individual_ic(x, net, params);
    return run_engine(x, net, params, max_size, adjacency_required, mode, 0, &known);
}

std::vector<SearchRecord> search_counterexample(
    const FamilyGenerator& generator, const std::vector<double>& alpha_grid,
    const std::vector<std::pair<VerifyMode, bool>>& modes, int max_size_cap) {
    std::vector<SearchRecord> records;
    int index = 0;
    while (auto net = generator()) {
        const double lambda = spectral_radius(symmetrized(*net));
        const int max_size = std::min(net->size(), max_size_cap);
        for (double alpha : alpha_grid) {
            for (const auto& [mode, adjacency] : modes) {
                SearchRecord rec;
                rec.instance = index;
                rec.n = net->size();
                rec.edges = net->edges();
                rec.alpha = alpha;
                rec.mode = mode;
                rec.adjacency_required = adjacency;
                if (alpha * lambda >= 1.0) {
                    rec.feasible = false;
                    rec.pass = true;
                    records.push_back(std::move(rec));
                    continue;
                }
                const ModelParams params{1.0, alpha, std::nullopt};
                const Contract star = first_best(*net, params);
                const VerificationReport report =
                    run_engine(star, *net, params, max_size, adjacency, mode, 0);
                rec.pass = report.pass;
                if (!report.pass) {
                    const std::size_t smallest = report.violations.front().deviation.coalition.size();
                    for (const auto& v : report.violations)
                        if (v.deviation.coalition.size() == smallest) rec.minimal_violations.push_back(v);
                }
                records.push_back(std::move(rec));
            }
        }
        ++index;
    }
    return records;
}

}  // namespace netcon

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netcon/anonymity.hpp"
#include "netcon/classify.hpp"
#include "netcon/coalitions.hpp"
#include "netcon/families.hpp"
#include "netcon/graph_json.hpp"
#include "netcon/report_json.hpp"
#include "netcon/solver.hpp"
#include "netcon/spectral.hpp"
#include "netcon/verifier.hpp"

namespace py = pybind11;
using namespace netcon;

namespace {

Contract as_contract(const Eigen::VectorXd& x) { return Contract::from_vector(x); }

std::vector<DirectedNetwork> sample_family(const std::string& family, int count, int n, double p,
                                           std::uint64_t seed) {
    auto gen = make_family_generator(family, count, n, p, seed);
    std::vector<DirectedNetwork> out;
    while (auto net = gen()) out.push_back(std::move(*net));
    return out;
}

VerifyMode parse_mode(const std::string& name) {
    if (name == "group") return VerifyMode::Group;
    if (name == "group-transfers") return VerifyMode::GroupTransfers;
    if (name == "ic") return VerifyMode::Individual;
    throw std::invalid_argument("unknown mode: " + name);
}

}  // namespace

PYBIND11_MODULE(_netcon, m) {
    m.doc() = "welfare-optimal contracts on anonymized networks";

    py::register_exception<SpectralConditionViolated>(m, "SpectralConditionViolated",
                                                      PyExc_ValueError);
    py::register_exception<SingularSystem>(m, "SingularSystem", PyExc_RuntimeError);
    py::register_exception<ReducedSystemNotConcave>(m, "ReducedSystemNotConcave", PyExc_ValueError);

    py::class_<DirectedNetwork>(m, "DirectedNetwork")
        .def(py::init<int>(), py::arg("n"))
        .def_static("from_edges", &DirectedNetwork::from_edges, py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &DirectedNetwork::size)
        .def("add_edge", &DirectedNetwork::add_edge, py::arg("i"), py::arg("j"))
        .def("edge", &DirectedNetwork::edge, py::arg("i"), py::arg("j"))
        .def("edges", &DirectedNetwork::edges)
        .def("edge_count", &DirectedNetwork::edge_count)
        .def("influencers", &DirectedNetwork::influencers, py::arg("i"))
        .def("followers", &DirectedNetwork::followers, py::arg("i"))
        .def("is_symmetric", &DirectedNetwork::is_symmetric)
        .def("__eq__", [](const DirectedNetwork& a, const DirectedNetwork& b) { return a == b; })
        .def("__repr__", [](const DirectedNetwork& net) {
            return "DirectedNetwork(n=" + std::to_string(net.size()) +
                   ", edges=" + std::to_string(net.edge_count()) + ")";
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double a, double alpha, std::optional<double> c) {
                 ModelParams p{a, alpha, c};
                 p.validate();
                 return p;
             }),
             py::arg("a") = 1.0, py::arg("alpha") = 0.0, py::arg("c") = std::nullopt)
        .def_readwrite("a", &ModelParams::a)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("c", &ModelParams::c);

    py::class_<TierPartition>(m, "TierPartition")
        .def_readonly("tiers", &TierPartition::tiers)
        .def("valid_for", &TierPartition::valid_for);

    py::class_<FamilyDescriptor>(m, "FamilyDescriptor")
        .def_readonly("undirected", &FamilyDescriptor::undirected)
        .def_readonly("hierarchy", &FamilyDescriptor::hierarchy)
        .def_readonly("single_root_universal", &FamilyDescriptor::single_root_universal)
        .def_readonly("nested_neighborhoods", &FamilyDescriptor::nested_neighborhoods)
        .def_readonly("oriented_tree_branching", &FamilyDescriptor::oriented_tree_branching)
        .def("labels", &FamilyDescriptor::labels);

    py::class_<Deviation>(m, "Deviation")
        .def(py::init([](std::vector<int> coalition, std::vector<int> images) {
                 return Deviation{std::move(coalition), std::move(images)};
             }),
             py::arg("coalition"), py::arg("images"))
        .def_readonly("coalition", &Deviation::coalition)
        .def_readonly("images", &Deviation::images);

    py::class_<Violation>(m, "Violation")
        .def_readonly("deviation", &Violation::deviation)
        .def_readonly("gains", &Violation::gains)
        .def_readonly("total", &Violation::total);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("pass_", &VerificationReport::pass)
        .def_property_readonly("mode",
                               [](const VerificationReport& r) { return std::string(to_string(r.mode)); })
        .def_readonly("adjacency_required", &VerificationReport::adjacency_required)
        .def_readonly("max_size", &VerificationReport::max_size)
        .def_readonly("alpha", &VerificationReport::alpha)
        .def_readonly("violations", &VerificationReport::violations)
        .def_readonly("coalitions_examined", &VerificationReport::coalitions_examined)
        .def_readonly("permutations_examined", &VerificationReport::permutations_examined)
        .def("to_json", [](const VerificationReport& r) { return to_json(r).dump(); })
        .def("__bool__", [](const VerificationReport& r) { return r.pass; });

    py::class_<PriceSchedule>(m, "PriceSchedule")
        .def_readonly("prices", &PriceSchedule::prices)
        .def_readonly("profit", &PriceSchedule::profit);

    py::class_<ArchitectureClass>(m, "ArchitectureClass")
        .def_property_readonly("size", &ArchitectureClass::size)
        .def_property_readonly("canonical_assignment",
                               [](const ArchitectureClass& c) { return c.canonical_assignment.location; })
        .def("representative_network", &ArchitectureClass::representative_network)
        .def("member_networks", [](const ArchitectureClass& c) {
            std::vector<DirectedNetwork> out;
            out.reserve(c.members.size());
            for (const auto& code : c.members) out.push_back(decode(code, c.n));
            return out;
        });

    py::enum_<InfoLevel>(m, "InfoLevel")
        .value("LOCATION_ONLY", InfoLevel::LocationOnly)
        .value("LOCATION_PLUS_IN_NEIGHBORS", InfoLevel::LocationPlusInNeighbors);

    py::class_<InformationCell>(m, "InformationCell")
        .def_readonly("agent", &InformationCell::agent)
        .def_property_readonly("size",
                               [](const InformationCell& c) { return c.members.size(); })
        .def("contains", [](const InformationCell& c, const DirectedNetwork& g) {
            const GraphCode code = encode(g);
            return std::binary_search(c.members.begin(), c.members.end(), code);
        });

    py::class_<MechanismAuditRecord>(m, "MechanismAuditRecord")
        .def_readonly("deviation", &MechanismAuditRecord::deviation)
        .def_readonly("consistent", &MechanismAuditRecord::consistent)
        .def_readonly("total_gain", &MechanismAuditRecord::total_gain)
        .def_readonly("allocation_changed", &MechanismAuditRecord::allocation_changed);

    py::class_<MechanismAudit>(m, "MechanismAudit")
        .def_readonly("deviations_examined", &MechanismAudit::deviations_examined)
        .def_readonly("consistent_count", &MechanismAudit::consistent_count)
        .def_readonly("consistent_deviations", &MechanismAudit::consistent_deviations)
        .def_readonly("sound", &MechanismAudit::sound);

    py::class_<SearchRecord>(m, "SearchRecord")
        .def_readonly("instance", &SearchRecord::instance)
        .def_readonly("n", &SearchRecord::n)
        .def_readonly("edges", &SearchRecord::edges)
        .def_readonly("alpha", &SearchRecord::alpha)
        .def_readonly("feasible", &SearchRecord::feasible)
        .def_property_readonly("mode",
                               [](const SearchRecord& r) { return std::string(to_string(r.mode)); })
        .def_readonly("adjacency_required", &SearchRecord::adjacency_required)
        .def_readonly("pass_", &SearchRecord::pass)
        .def_readonly("minimal_violations", &SearchRecord::minimal_violations)
        .def("to_json", [](const SearchRecord& r) { return to_json(r).dump(); });

    m.attr("GAIN_TOLERANCE") = kGainTolerance;

    m.def("symmetrized", &symmetrized, py::arg("net"));
    m.def("spectral_radius", &spectral_radius, py::arg("sym"));
    m.def("auto_alpha", &auto_alpha, py::arg("net"), py::arg("factor") = 0.8);
    m.def("classify", &classify, py::arg("net"));

    m.def(
        "adjacent_coalitions",
        [](const DirectedNetwork& net, int min_size, int max_size, bool adjacency_required) {
            CoalitionStream stream(net, min_size, max_size,
                                   adjacency_required ? CoalitionMode::AdjacentCliques
                                                      : CoalitionMode::AllSubsets);
            return stream.all();
        },
        py::arg("net"), py::arg("min_size"), py::arg("max_size"),
        py::arg("adjacency_required") = true);

    m.def(
        "utility",
        [](int agent, const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p) {
            return utility(agent, as_contract(x), net, p);
        },
        py::arg("agent"), py::arg("x"), py::arg("net"), py::arg("params"));
    m.def(
        "welfare",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p) {
            return welfare(as_contract(x), net, p);
        },
        py::arg("x"), py::arg("net"), py::arg("params"));
    m.def(
        "first_best",
        [](const DirectedNetwork& net, const ModelParams& p) { return first_best(net, p).x; },
        py::arg("net"), py::arg("params"));
    m.def("katz_bonacich", &katz_bonacich, py::arg("matrix"), py::arg("delta"));
    m.def(
        "constrained_first_best",
        [](const DirectedNetwork& net, const ModelParams& p,
           const std::vector<std::vector<int>>& classes) {
            return constrained_first_best(net, p, EqualityClasses{classes}).x;
        },
        py::arg("net"), py::arg("params"), py::arg("classes"));
    m.def(
        "price_schedule",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p) {
            return price_schedule(as_contract(x), net, p);
        },
        py::arg("x"), py::arg("net"), py::arg("params"));
    m.def(
        "taxes_for_target",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p) {
            return taxes_for_target(as_contract(x), net, p);
        },
        py::arg("x"), py::arg("net"), py::arg("params"));

    m.def(
        "deviation_gains",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p,
           const Deviation& dev) { return deviation_gains(as_contract(x), net, p, dev); },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("deviation"));
    m.def(
        "verify_group_ic",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p, int max_size,
           bool adjacency_required, int workers) {
            return verify_group_ic(as_contract(x), net, p, max_size, adjacency_required, workers);
        },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("max_size"),
        py::arg("adjacency_required") = true, py::arg("workers") = 0);
    m.def(
        "verify_group_ic_transfers",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p, int max_size,
           bool adjacency_required, int workers) {
            return verify_group_ic_transfers(as_contract(x), net, p, max_size, adjacency_required,
                                             workers);
        },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("max_size"),
        py::arg("adjacency_required") = true, py::arg("workers") = 0);
    m.def(
        "verify_individual_ic",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p) {
            return verify_individual_ic(as_contract(x), net, p);
        },
        py::arg("x"), py::arg("net"), py::arg("params"));
    m.def(
        "verify_with_known_identities",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p,
           const std::vector<int>& known, const std::string& mode, int max_size,
           bool adjacency_required) {
            return verify_with_known_identities(as_contract(x), net, p, known, parse_mode(mode),
                                                max_size, adjacency_required);
        },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("known"), py::arg("mode"),
        py::arg("max_size"), py::arg("adjacency_required") = true);
    m.def(
        "pairwise_swap_margin",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, int i, int j) {
            return pairwise_swap_margin(as_contract(x), net, i, j);
        },
        py::arg("x"), py::arg("net"), py::arg("i"), py::arg("j"));
    m.def(
        "marginal_transfer_welfare",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p,
           int decrease_agent, int increase_agent) {
            return marginal_transfer_welfare(as_contract(x), net, p, decrease_agent, increase_agent);
        },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("decrease_agent"),
        py::arg("increase_agent"));

    m.def("equivalence_class", &equivalence_class, py::arg("net"));
    m.def("information_cell", &information_cell, py::arg("net"), py::arg("agent"), py::arg("level"));
    m.def(
        "menu_game",
        [](const Eigen::VectorXd& menu, const std::vector<int>& announcements,
           const DirectedNetwork& net, const ModelParams& p) {
            return menu_game(as_contract(menu), announcements, net, p);
        },
        py::arg("menu"), py::arg("announcements"), py::arg("net"), py::arg("params"));
    m.def(
        "neighbor_announcements_consistent",
        [](const std::vector<std::pair<int, std::vector<int>>>& profile,
           const DirectedNetwork& representative) {
            std::vector<LocationAnnouncement> converted;
            converted.reserve(profile.size());
            for (const auto& [loc, infl] : profile) converted.push_back({loc, infl});
            return neighbor_announcements_consistent(converted, representative);
        },
        py::arg("profile"), py::arg("representative"));
    m.def(
        "audit_neighbor_mechanism",
        [](const Eigen::VectorXd& x, const DirectedNetwork& net, const ModelParams& p, int max_size,
           bool adjacency_required) {
            return audit_neighbor_mechanism(as_contract(x), net, p, max_size, adjacency_required);
        },
        py::arg("x"), py::arg("net"), py::arg("params"), py::arg("max_size"),
        py::arg("adjacency_required") = false);

    m.def(
        "search_counterexample",
        [](const std::string& family, int count, int n, double p, std::uint64_t seed,
           const std::vector<double>& alpha_grid, const std::string& mode, bool adjacency_required,
           int max_size) {
            return search_counterexample(make_family_generator(family, count, n, p, seed), alpha_grid,
                                         {{parse_mode(mode), adjacency_required}}, max_size);
        },
        py::arg("family"), py::arg("count"), py::arg("n"), py::arg("p"), py::arg("seed"),
        py::arg("alpha_grid"), py::arg("mode") = "group-transfers",
        py::arg("adjacency_required") = true, py::arg("max_size") = 6);
    m.def("sample_family", &sample_family, py::arg("family"), py::arg("count"), py::arg("n"),
          py::arg("p"), py::arg("seed"));

    m.def("catalog_network", &catalog_network, py::arg("name"));
    m.def("catalog_names", &catalog_names);
    m.def("load_graph_json", &load_graph_json, py::arg("text"));
    m.def("dump_graph_json", &dump_graph_json, py::arg("net"));

#ifdef NETCON_VERSION
    m.attr("__version__") = NETCON_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}

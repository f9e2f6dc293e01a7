#include "hydrocm/topology.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "hydrocm/error.hpp"

namespace hydrocm {

namespace {

using json = nlohmann::json;

int valence(Atom atom) { return atom == Atom::carbon ? 4 : 1; }

}  // namespace

std::size_t TopologySpec::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return i;
    }
    throw ParameterError("unknown node id '" + id + "'");
}

std::string to_string(Atom atom) { return atom == Atom::carbon ? "carbon" : "hydrogen"; }
std::string to_string(Algorithm algorithm) { return algorithm == Algorithm::ssga ? "ssga" : "sa"; }

TopologySpec ethane_topology(EthaneVariant variant, double hydrogen_speed) {
    const Algorithm central = variant == EthaneVariant::G ? Algorithm::ssga : Algorithm::sa;
    const Algorithm leaf = variant == EthaneVariant::G ? Algorithm::sa : Algorithm::ssga;

    TopologySpec spec;
    spec.nodes.push_back({"C1", Atom::carbon, central, kCarbonSpeed});
    spec.nodes.push_back({"C2", Atom::carbon, central, kCarbonSpeed});
    for (int h = 1; h <= 6; ++h) {
        spec.nodes.push_back({"H" + std::to_string(h), Atom::hydrogen, leaf, hydrogen_speed});
    }
    spec.bonds.push_back({"C1", "C2", 1});
    for (int h = 1; h <= 6; ++h) {
        spec.bonds.push_back({h <= 3 ? "C1" : "C2", "H" + std::to_string(h), 1});
    }
    return spec;
}

TopologySpec ring_topology(std::size_t n, const std::set<std::size_t>& fast_positions, double slow_speed) {
    if (n < 2) throw ParameterError("ring needs at least 2 nodes");
    for (auto pos : fast_positions) {
        if (pos >= n) throw ParameterError("fast position " + std::to_string(pos) + " outside ring of " + std::to_string(n));
    }
    TopologySpec spec;
    spec.directed = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = fast_positions.contains(i) ? kCarbonSpeed : slow_speed;
        spec.nodes.push_back({"R" + std::to_string(i), Atom::carbon, Algorithm::ssga, speed});
    }
    for (std::size_t i = 0; i < n; ++i) {
        spec.bonds.push_back({spec.nodes[i].id, spec.nodes[(i + 1) % n].id, 1});
    }
    return spec;
}

TopologySpec single_node_topology(Algorithm algorithm, double speed_factor) {
    TopologySpec spec;
    spec.nodes.push_back({"N0", Atom::carbon, algorithm, speed_factor});
    return spec;
}

std::vector<int> bond_degrees(const TopologySpec& spec) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) index.emplace(spec.nodes[i].id, i);
    std::vector<int> degree(spec.nodes.size(), 0);
    for (const auto& bond : spec.bonds) {
        auto a = index.find(bond.a);
        auto b = index.find(bond.b);
        if (a != index.end()) degree[a->second] += bond.multiplicity;
        if (b != index.end()) degree[b->second] += bond.multiplicity;
    }
    return degree;
}

std::vector<std::string> validate_hydrocarbon(const TopologySpec& spec) {
    std::vector<std::string> violations;
    if (spec.nodes.empty()) {
        violations.emplace_back("topology has no nodes");
        return violations;
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const auto& node = spec.nodes[i];
        if (!index.emplace(node.id, i).second) violations.push_back("duplicate node id '" + node.id + "'");
        if (!(node.speed_factor > 0.0)) violations.push_back("node '" + node.id + "': speed_factor must be positive");
    }

    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::vector<std::size_t>> adjacency(spec.nodes.size());
    for (const auto& bond : spec.bonds) {
        const std::string label = "bond " + bond.a + "-" + bond.b;
        auto a = index.find(bond.a);
        auto b = index.find(bond.b);
        if (a == index.end() || b == index.end()) {
            violations.push_back(label + ": unknown endpoint");
            continue;
        }
        if (bond.a == bond.b) {
            violations.push_back(label + ": endpoints must be distinct");
            continue;
        }
        if (bond.multiplicity < 1 || bond.multiplicity > 3) {
            violations.push_back(label + ": multiplicity " + std::to_string(bond.multiplicity) + " not in {1,2,3}");
        }
        auto key = std::make_pair(bond.a, bond.b);
        if (!spec.directed && key.second < key.first) std::swap(key.first, key.second);
        if (!seen.insert(key).second) violations.push_back(label + ": duplicate bond");
        adjacency[a->second].push_back(b->second);
        adjacency[b->second].push_back(a->second);
    }

    if (!spec.directed) {
        const auto degree = bond_degrees(spec);
        for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
            const auto& node = spec.nodes[i];
            if (node.atom == Atom::hydrogen && degree[i] != 1) {
                violations.push_back("valence: hydrogen '" + node.id + "' has bond order " + std::to_string(degree[i]) +
                                     " (must be 1)");
            } else if (node.atom == Atom::carbon && degree[i] > valence(Atom::carbon)) {
                violations.push_back("valence: carbon '" + node.id + "' has bond order " + std::to_string(degree[i]) +
                                     " (max 4)");
            }
        }
    }

    std::vector<bool> reached(spec.nodes.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    reached[0] = true;
    while (!frontier.empty()) {
        auto u = frontier.front();
        frontier.pop();
        for (auto v : adjacency[u]) {
            if (!reached[v]) {
                reached[v] = true;
                frontier.push(v);
            }
        }
    }
    std::string unreachable;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        if (!reached[i]) unreachable += (unreachable.empty() ? "" : ", ") + spec.nodes[i].id;
    }
    if (!unreachable.empty()) {
        violations.push_back("connectivity: not connected to '" + spec.nodes[0].id + "': " + unreachable);
    }
    return violations;
}

ChannelPlan compile_channels(const TopologySpec& spec, MultiplicityMode mode) {
    if (auto violations = validate_hydrocarbon(spec); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    ChannelPlan plan;
    auto add = [&](std::size_t src, std::size_t dst, int multiplicity) {
        const auto m = static_cast<std::size_t>(multiplicity);
        if (mode == MultiplicityMode::batch) {
            plan.channels.push_back({src, dst, m, 1});
        } else {
            plan.channels.push_back({src, dst, 1, m});
        }
    };
    for (const auto& bond : spec.bonds) {
        const auto a = spec.index_of(bond.a);
        const auto b = spec.index_of(bond.b);
        add(a, b, bond.multiplicity);
        if (!spec.directed) add(b, a, bond.multiplicity);
    }
    return plan;
}

TopologySpec parse_topology(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("topology: ") + e.what());
    }
    try {
        TopologySpec spec;
        spec.directed = doc.value("directed", false);
        for (const auto& n : doc.at("nodes")) {
            NodeSpec node;
            node.id = n.at("id").get<std::string>();
            const auto atom = n.at("atom").get<std::string>();
            if (atom == "carbon" || atom == "C") {
                node.atom = Atom::carbon;
            } else if (atom == "hydrogen" || atom == "H") {
                node.atom = Atom::hydrogen;
            } else {
                throw ParseError("topology: node '" + node.id + "': unknown atom '" + atom + "'");
            }
            const auto algo = n.at("algorithm").get<std::string>();
            if (algo == "ssga") {
                node.algorithm = Algorithm::ssga;
            } else if (algo == "sa") {
                node.algorithm = Algorithm::sa;
            } else {
                throw ParseError("topology: node '" + node.id + "': unknown algorithm '" + algo + "'");
            }
            node.speed_factor =
                n.value("speed_factor", node.atom == Atom::carbon ? kCarbonSpeed : kHydrogenSpeed);
            spec.nodes.push_back(std::move(node));
        }
        if (doc.contains("bonds")) {
            for (const auto& b : doc.at("bonds")) {
                spec.bonds.push_back(
                    {b.at("a").get<std::string>(), b.at("b").get<std::string>(), b.value("multiplicity", 1)});
            }
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("topology: ") + e.what());
    }
}

TopologySpec read_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open topology file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_topology(buffer.str());
}

std::string dump_topology(const TopologySpec& spec) {
    using ordered = nlohmann::ordered_json;
    std::string out = "{\n  \"directed\": " + std::string(spec.directed ? "true" : "false") + ",\n  \"nodes\": [\n";
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const auto& n = spec.nodes[i];
        ordered node{{"id", n.id}, {"atom", to_string(n.atom)}, {"algorithm", to_string(n.algorithm)},
                     {"speed_factor", n.speed_factor}};
        out += "    " + node.dump() + (i + 1 < spec.nodes.size() ? ",\n" : "\n");
    }
    out += "  ],\n  \"bonds\": [\n";
    for (std::size_t i = 0; i < spec.bonds.size(); ++i) {
        const auto& b = spec.bonds[i];
        ordered bond{{"a", b.a}, {"b", b.b}, {"multiplicity", b.multiplicity}};
        out += "    " + bond.dump() + (i + 1 < spec.bonds.size() ? ",\n" : "\n");
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace hydrocm

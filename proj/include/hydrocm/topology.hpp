#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace hydrocm {

enum class Atom { carbon, hydrogen };
enum class Algorithm { ssga, sa };

struct NodeSpec {
    std::string id;
    Atom atom = Atom::carbon;
    Algorithm algorithm = Algorithm::ssga;
    double speed_factor = 1.0;  // 1.0 = fastest machine class

    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Chemical bond between two nodes. For directed topologies the bond is read
/// as a one-way link a -> b.
struct BondSpec {
    std::string a;
    std::string b;
    int multiplicity = 1;

    friend bool operator==(const BondSpec&, const BondSpec&) = default;
};

struct TopologySpec {
    std::vector<NodeSpec> nodes;
    std::vector<BondSpec> bonds;
    bool directed = false;  // rings: one channel per bond, no valence rules

    std::size_t index_of(const std::string& id) const;  // throws ParameterError
    friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

/// How bond multiplicity shapes migration on the resulting channel.
enum class MultiplicityMode {
    batch,  // multiplicity individuals per migration
    rate,   // one individual, migration interval divided by multiplicity
};

struct Channel {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t batch_size = 1;
    std::size_t rate_multiplier = 1;

    friend bool operator==(const Channel&, const Channel&) = default;
};

struct ChannelPlan {
    std::vector<Channel> channels;
};

inline constexpr double kCarbonSpeed = 1.0;
inline constexpr double kHydrogenSpeed = 0.35;

enum class EthaneVariant { G, S };

/// Two carbons (C1, C2) bonded to each other, each carrying three hydrogens.
/// G puts ssGA on the carbons and SA on the hydrogens; S swaps them.
TopologySpec ethane_topology(EthaneVariant variant, double hydrogen_speed = kHydrogenSpeed);

/// Unidirectional ring of ssGA islands; nodes listed in `fast_positions`
/// run at speed 1.0, the rest at `slow_speed`.
TopologySpec ring_topology(std::size_t n, const std::set<std::size_t>& fast_positions,
                           double slow_speed = kHydrogenSpeed);

/// Single node, no bonds.
TopologySpec single_node_topology(Algorithm algorithm, double speed_factor = 1.0);

/// Valence (hydrogen exactly 1, carbon at most 4), duplicate bonds,
/// malformed bonds and connectivity. Empty result means valid. Directed
/// specs skip the valence rules.
std::vector<std::string> validate_hydrocarbon(const TopologySpec& spec);

/// Two opposite channels per bond (one for directed specs). Throws
/// ValidationError when the spec does not validate.
ChannelPlan compile_channels(const TopologySpec& spec,
                             MultiplicityMode mode = MultiplicityMode::batch);

/// Total bond multiplicity incident to each node, in node order.
std::vector<int> bond_degrees(const TopologySpec& spec);

TopologySpec parse_topology(const std::string& text);  // throws ParseError
TopologySpec read_topology_file(const std::string& path);
std::string dump_topology(const TopologySpec& spec);

std::string to_string(Atom atom);
std::string to_string(Algorithm algorithm);

}  // namespace hydrocm

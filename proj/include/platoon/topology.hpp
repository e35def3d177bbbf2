#pragma once

#include <string>
#include <utility>
#include <vector>

#include "platoon/numerics.hpp"

namespace platoon {

// The six standard information-flow topologies: bidirectional,
// bidirectional-leader, predecessor following, predecessor-leader following,
// two-predecessor following, two-predecessor-leader following.
enum class TopologyKind { BD, BDL, PF, PLF, TPF, TPLF };

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

// Follower communication graph plus the head-vehicle pinning pattern.
// adjacency(i, j) == 1 means follower i+1 receives follower j+1's state;
// pinned[i] means follower i+1 receives the head vehicle's state directly.
struct CommTopology {
    int n_followers = 0;
    numerics::Matrix adjacency;  // N x N, 0/1 entries, zero diagonal
    std::vector<int> pinned;     // length N, 0/1

    [[nodiscard]] bool receives_from(int i, int j) const { return adjacency(i, j) != 0.0; }
    [[nodiscard]] bool leader_pinned(int i) const { return pinned[static_cast<std::size_t>(i)] != 0; }
};

struct ValidationReport {
    bool adjacency_ok = false;      // 0/1 entries, zero diagonal, square
    bool has_pinned_follower = false;
    std::vector<bool> reachable;    // per follower, from the head vehicle
    bool all_reachable = false;
    numerics::Spectrum spectrum;    // of L + S
    bool spectrum_real = false;
    bool spectrum_positive = false;

    [[nodiscard]] bool passed() const {
        return adjacency_ok && has_pinned_follower && all_reachable && spectrum_real &&
               spectrum_positive;
    }
    [[nodiscard]] std::string failure_summary() const;
};

/// One of the six standard topologies for n followers.
CommTopology build_standard(TopologyKind kind, int n);

/// Structural and spectral checks; failures are carried in the report.
ValidationReport validate(const CommTopology& topo);

/// L + S and its spectrum. Throws ConfigError when the topology fails
/// validation (including a complex spectrum, which is rejected outright).
std::pair<numerics::Matrix, numerics::Spectrum> laplacian_plus_pinning(const CommTopology& topo);

}  // namespace platoon

#include "platoon/topology.hpp"

#include <algorithm>
#include <deque>

#include "platoon/errors.hpp"

namespace platoon {

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::BD: return "BD";
        case TopologyKind::BDL: return "BDL";
        case TopologyKind::PF: return "PF";
        case TopologyKind::PLF: return "PLF";
        case TopologyKind::TPF: return "TPF";
        case TopologyKind::TPLF: return "TPLF";
    }
    return "?";
}

TopologyKind topology_kind_from_string(const std::string& name) {
    if (name == "BD") return TopologyKind::BD;
    if (name == "BDL") return TopologyKind::BDL;
    if (name == "PF") return TopologyKind::PF;
    if (name == "PLF") return TopologyKind::PLF;
    if (name == "TPF") return TopologyKind::TPF;
    if (name == "TPLF") return TopologyKind::TPLF;
    throw ConfigError("unknown topology kind '" + name +
                      "' (expected BD, BDL, PF, PLF, TPF, or TPLF)");
}

CommTopology build_standard(TopologyKind kind, int n) {
    if (n < 1) throw ConfigError("topology: follower count must be >= 1");

    CommTopology topo;
    topo.n_followers = n;
    topo.adjacency = numerics::Matrix::Zero(n, n);
    topo.pinned.assign(static_cast<std::size_t>(n), 0);

    const bool bidirectional = kind == TopologyKind::BD || kind == TopologyKind::BDL;
    const bool two_predecessor = kind == TopologyKind::TPF || kind == TopologyKind::TPLF;
    const bool all_pinned =
        kind == TopologyKind::BDL || kind == TopologyKind::PLF || kind == TopologyKind::TPLF;

    for (int i = 0; i < n; ++i) {
        if (i >= 1) topo.adjacency(i, i - 1) = 1.0;          // predecessor link
        if (bidirectional && i + 1 < n) topo.adjacency(i, i + 1) = 1.0;
        if (two_predecessor && i >= 2) topo.adjacency(i, i - 2) = 1.0;
    }

    if (all_pinned) {
        std::fill(topo.pinned.begin(), topo.pinned.end(), 1);
    } else {
        topo.pinned[0] = 1;
        // In the two-predecessor pattern the head vehicle stands in for the
        // second predecessor of follower 2.
        if (two_predecessor && n >= 2) topo.pinned[1] = 1;
    }
    return topo;
}

ValidationReport validate(const CommTopology& topo) {
    ValidationReport report;
    const int n = topo.n_followers;
    if (n < 1 || topo.adjacency.rows() != n || topo.adjacency.cols() != n ||
        topo.pinned.size() != static_cast<std::size_t>(n))
        return report;  // adjacency_ok stays false

    report.adjacency_ok = true;
    for (int i = 0; i < n && report.adjacency_ok; ++i) {
        for (int j = 0; j < n; ++j) {
            const double m = topo.adjacency(i, j);
            if ((m != 0.0 && m != 1.0) || (i == j && m != 0.0)) {
                report.adjacency_ok = false;
                break;
            }
        }
    }

    report.has_pinned_follower =
        std::any_of(topo.pinned.begin(), topo.pinned.end(), [](int s) { return s != 0; });

    // BFS along information flow: the head reaches pinned followers directly,
    // and j -> i whenever adjacency(i, j) = 1.
    report.reachable.assign(static_cast<std::size_t>(n), false);
    if (report.adjacency_ok) {
        std::deque<int> frontier;
        for (int i = 0; i < n; ++i) {
            if (topo.pinned[static_cast<std::size_t>(i)] != 0) {
                report.reachable[static_cast<std::size_t>(i)] = true;
                frontier.push_back(i);
            }
        }
        while (!frontier.empty()) {
            const int j = frontier.front();
            frontier.pop_front();
            for (int i = 0; i < n; ++i) {
                if (topo.adjacency(i, j) != 0.0 && !report.reachable[static_cast<std::size_t>(i)]) {
                    report.reachable[static_cast<std::size_t>(i)] = true;
                    frontier.push_back(i);
                }
            }
        }
    }
    report.all_reachable =
        std::all_of(report.reachable.begin(), report.reachable.end(), [](bool r) { return r; });

    if (report.adjacency_ok) {
        numerics::Matrix ls = -topo.adjacency;
        for (int i = 0; i < n; ++i)
            ls(i, i) = topo.adjacency.row(i).sum() + topo.pinned[static_cast<std::size_t>(i)];
        report.spectrum = numerics::eigenvalues(ls, "L+S");
        report.spectrum_real = report.spectrum.all_real;
        report.spectrum_positive = report.spectrum.min_real() > 0.0;
    }
    return report;
}

std::string ValidationReport::failure_summary() const {
    if (passed()) return "ok";
    std::string out;
    const auto add = [&out](const std::string& msg) {
        if (!out.empty()) out += "; ";
        out += msg;
    };
    if (!adjacency_ok) add("adjacency must be a 0/1 matrix with zero diagonal");
    if (!has_pinned_follower)
        add("no pinned follower: the head vehicle must reach every follower through a "
            "directed path, so at least one follower must receive its state directly");
    if (!all_reachable) {
        std::string unreachable;
        for (std::size_t i = 0; i < reachable.size(); ++i)
            if (!reachable[i]) unreachable += " " + std::to_string(i + 1);
        add("no directed path from the head vehicle to follower(s)" + unreachable);
    }
    if (!spectrum_real) add("L+S has complex eigenvalues");
    if (!spectrum_positive) add("L+S has a non-positive eigenvalue");
    return out;
}

std::pair<numerics::Matrix, numerics::Spectrum> laplacian_plus_pinning(const CommTopology& topo) {
    const ValidationReport report = validate(topo);
    if (!report.passed())
        throw ConfigError("topology rejected: " + report.failure_summary());

    const int n = topo.n_followers;
    numerics::Matrix ls = -topo.adjacency;
    for (int i = 0; i < n; ++i)
        ls(i, i) = topo.adjacency.row(i).sum() + topo.pinned[static_cast<std::size_t>(i)];
    return {ls, report.spectrum};
}

}  // namespace platoon

#include "platoon/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "platoon/errors.hpp"

namespace platoon {

PreimageInterval preimage_interval(double observed, double step) {
    if (!(step > 0.0)) throw InputError("quantizer step must be positive");
    if (!std::isfinite(observed)) throw InputError("observed level must be finite");
    const double r = observed / step;
    if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, std::abs(r)))
        throw InputError("observed value is not a multiple of the quantizer step");
    return {observed - step / 2.0, observed + step / 2.0};
}

double tv_distance(double z, double z_prime, double step) {
    const QuantizerLaw law_a = output_distribution(z, step);
    const QuantizerLaw law_b = output_distribution(z_prime, step);

    // Levels are exact multiples of step, so keying on the rounded index
    // merges equal levels exactly.
    std::map<long long, double> diff;
    for (const auto& atom : law_a.atoms)
        diff[std::llround(atom.level / step)] += atom.probability;
    for (const auto& atom : law_b.atoms)
        diff[std::llround(atom.level / step)] -= atom.probability;

    double l1 = 0.0;
    for (const auto& [level, gap] : diff) l1 += std::abs(gap);
    return 0.5 * l1;
}

DpReport verify_dp(const std::vector<AdjacencyPair>& pairs, double step) {
    if (!(step > 0.0)) throw InputError("quantizer step must be positive");
    if (pairs.empty()) throw InputError("differential-privacy check needs at least one pair");

    DpReport report;
    report.step = step;
    report.pass = true;
    for (const AdjacencyPair& pair : pairs) {
        if (pair.chi.size() != pair.chi_prime.size())
            throw InputError("adjacent sequences must have equal dimension");
        if (!(pair.zeta > 0.0) || !(pair.zeta < step))
            throw InputError("adjacency budget must satisfy 0 < zeta < step");
        if (pair.l1_distance() > pair.zeta * (1.0 + 1e-12))
            throw InputError("pair violates zeta-adjacency");

        DpReport::PairResult result;
        result.element_tv.reserve(static_cast<std::size_t>(pair.chi.size()));
        for (Eigen::Index i = 0; i < pair.chi.size(); ++i) {
            result.element_tv.push_back(tv_distance(pair.chi(i), pair.chi_prime(i), step));
            result.max_tv = std::max(result.max_tv, result.element_tv.back());
        }
        const double bound = pair.zeta / step;
        result.pass = result.max_tv <= bound + 1e-12;
        report.claimed_bound = std::max(report.claimed_bound, bound);
        report.overall_max_tv = std::max(report.overall_max_tv, result.max_tv);
        report.pass = report.pass && result.pass;
        report.pairs.push_back(result);
    }
    return report;
}

AttackResult run_attack(const SimConfig& cfg, int target, double settle_time) {
    const Eigen::Matrix3d injection = cfg.model.a + Eigen::Matrix3d::Identity();
    auto [trace, observer] = run_with_observer(cfg, target, injection);

    AttackResult result;
    result.observer = std::move(observer);

    const double horizon = result.observer.times.empty() ? 0.0 : result.observer.times.back();
    const double tail_from = std::max(settle_time, horizon - 5.0);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < result.observer.times.size(); ++i) {
        const double t = result.observer.times[i];
        const double err = result.observer.error_norm[i];
        if (t >= settle_time) {
            acc += err;
            ++count;
        }
        if (t >= tail_from) result.terminal_error = std::max(result.terminal_error, err);
    }
    if (count == 0) throw InputError("attack horizon shorter than the settle time");
    result.time_averaged_error = acc / static_cast<double>(count);
    return result;
}

std::vector<AdjacencyPair> random_adjacent_pairs(int count, int dim, double step, double zeta,
                                                 RngStream rng) {
    if (count < 1 || dim < 1) throw InputError("pair generator needs count >= 1 and dim >= 1");
    if (!(step > 0.0) || !(zeta > 0.0) || !(zeta < step))
        throw InputError("pair generator needs 0 < zeta < step");

    std::vector<AdjacencyPair> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        RngStream stream = rng.substream(static_cast<std::uint64_t>(p));
        AdjacencyPair pair;
        pair.zeta = zeta;
        pair.chi = Eigen::VectorXd(dim);
        for (int i = 0; i < dim; ++i)
            pair.chi(i) = (stream.uniform() * 40.0 - 20.0) * step;
        pair.chi_prime = pair.chi;

        const int coords = 1 + static_cast<int>(stream.uniform() * 3.0);  // 1..3 coordinates
        double budget = zeta;
        for (int c = 0; c < coords && budget > 0.0; ++c) {
            const int i = static_cast<int>(stream.uniform() * dim);
            const double share = (c + 1 == coords) ? budget : budget * stream.uniform();
            budget -= share;
            const double cell = std::floor(pair.chi(i) / step);
            if (p % 2 == 0) {
                // Same-cell geometry: nudge within (cell*step, (cell+1)*step].
                const double hi = (cell + 1.0) * step;
                pair.chi_prime(i) = std::min(hi, pair.chi(i) + share);
            } else {
                // Straddling geometry: place the pair across the cell boundary.
                const double boundary = (cell + 1.0) * step;
                pair.chi(i) = boundary - 0.5 * share;
                pair.chi_prime(i) = boundary + 0.5 * share;
            }
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

AdjacencyPair tightness_witness_pair(int dim, double step, double zeta) {
    if (dim < 1 || !(step > 0.0) || !(zeta > 0.0) || !(zeta < step))
        throw InputError("witness needs dim >= 1 and 0 < zeta < step");
    AdjacencyPair pair;
    pair.zeta = zeta;
    pair.chi = Eigen::VectorXd::Zero(dim);
    pair.chi_prime = Eigen::VectorXd::Zero(dim);
    // Both points inside (0, step]; exactly zeta apart, so the Case-1 supremum
    // zeta/step is attained.
    pair.chi(0) = 0.5 * step - 0.5 * zeta;
    pair.chi_prime(0) = pair.chi(0) + zeta;
    return pair;
}

}  // namespace platoon

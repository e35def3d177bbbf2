#include "platoon/quantizer.hpp"

#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

struct Cell {
    double lower;   // n * delta
    double upper;   // (n + 1) * delta
    double p_upper; // (z - n*delta) / delta; 1 when z sits on the grid
};

// Locates z within its half-open cell (n*delta, (n+1)*delta]. Values within
// delta * 1e-12 (relative-scaled) of a grid level are snapped onto it so grid
// points stay fixed points of both quantizers despite rounding in z/delta.
Cell locate(double z, double delta) {
    if (!(delta > 0.0)) throw InputError("quantizer step must be positive");
    if (!std::isfinite(z)) throw InputError("quantizer input must be finite");

    const double r = z / delta;
    const double nearest = std::round(r);
    if (std::abs(r - nearest) <= 1e-12 * std::max(1.0, std::abs(r)))
        return {nearest * delta, nearest * delta, 1.0};

    const double n = std::ceil(r) - 1.0;
    return {n * delta, (n + 1.0) * delta, r - n};
}

}  // namespace

std::string to_string(QuantizerKind kind) {
    switch (kind) {
        case QuantizerKind::None: return "none";
        case QuantizerKind::Deterministic: return "deterministic";
        case QuantizerKind::Probabilistic: return "probabilistic";
    }
    return "?";
}

QuantizerKind quantizer_kind_from_string(const std::string& name) {
    if (name == "none") return QuantizerKind::None;
    if (name == "deterministic") return QuantizerKind::Deterministic;
    if (name == "probabilistic") return QuantizerKind::Probabilistic;
    throw ConfigError("unknown quantizer kind '" + name +
                      "' (expected none, deterministic, or probabilistic)");
}

void QuantizerSpec::validate() const {
    if (kind != QuantizerKind::None && !(step > 0.0))
        throw ConfigError("quantizer step must be positive");
}

double QuantizerLaw::mean() const {
    double m = 0.0;
    for (const Atom& atom : atoms) m += atom.level * atom.probability;
    return m;
}

double QuantizerLaw::error_second_moment(double z) const {
    double m = 0.0;
    for (const Atom& atom : atoms) m += (atom.level - z) * (atom.level - z) * atom.probability;
    return m;
}

double quantize_det(double z, double delta) {
    const Cell cell = locate(z, delta);
    if (cell.lower == cell.upper) return cell.lower;
    // Tie at the midpoint goes to the upper level.
    return (z - cell.lower < cell.upper - z) ? cell.lower : cell.upper;
}

double quantize_prob(double z, double delta, RngStream& rng) {
    const Cell cell = locate(z, delta);
    const double draw = rng.uniform();  // always one draw, for reproducibility
    return (draw < cell.p_upper) ? cell.upper : cell.lower;
}

QuantizerLaw output_distribution(double z, double delta) {
    const Cell cell = locate(z, delta);
    if (cell.lower == cell.upper) return {{{cell.lower, 1.0}}};
    return {{{cell.lower, 1.0 - cell.p_upper}, {cell.upper, cell.p_upper}}};
}

Eigen::VectorXd quantize_vector(const Eigen::VectorXd& x, const QuantizerSpec& spec,
                                RngStream& rng) {
    spec.validate();
    if (spec.kind == QuantizerKind::None) return x;

    Eigen::VectorXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out(i) = spec.kind == QuantizerKind::Deterministic
                     ? quantize_det(x(i), spec.step)
                     : quantize_prob(x(i), spec.step, rng);
    }
    return out;
}

}  // namespace platoon

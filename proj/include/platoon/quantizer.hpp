#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "platoon/rng.hpp"

namespace platoon {

enum class QuantizerKind { None, Deterministic, Probabilistic };

std::string to_string(QuantizerKind kind);
QuantizerKind quantizer_kind_from_string(const std::string& name);

struct QuantizerSpec {
    QuantizerKind kind = QuantizerKind::None;
    double step = 1.0;  // Delta

    void validate() const;  // step > 0 when kind != None
};

// Exact output law of the probabilistic quantizer: at most two grid levels.
struct QuantizerLaw {
    struct Atom {
        double level;
        double probability;
    };
    std::vector<Atom> atoms;

    [[nodiscard]] double mean() const;
    [[nodiscard]] double error_second_moment(double z) const;
};

/// Nearest-grid-level rounding with step delta; midpoints round up.
/// |result - z| <= delta/2 and the result is an exact multiple of delta.
double quantize_det(double z, double delta);

/// Random rounding to an adjacent grid level with linear interpolation
/// probabilities; unbiased, |result - z| <= delta. Consumes exactly one
/// uniform draw.
double quantize_prob(double z, double delta, RngStream& rng);

/// The exact distribution that quantize_prob samples from.
QuantizerLaw output_distribution(double z, double delta);

/// Elementwise application; kind None returns the input unchanged.
/// Probabilistic draws are independent per element.
Eigen::VectorXd quantize_vector(const Eigen::VectorXd& x, const QuantizerSpec& spec,
                                RngStream& rng);

}  // namespace platoon

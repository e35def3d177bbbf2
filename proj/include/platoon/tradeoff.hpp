#pragma once

#include <vector>

namespace platoon {

// Competing objectives of the quantization step: control cost f1 = delta^2
// and privacy cost f2 = 1/delta.
struct TradeoffWeights {
    double control = 1.0;  // w1
    double privacy = 1.0;  // w2

    void validate() const;
};

struct TradeoffPoint {
    double step = 0.0;          // delta*
    double objective = 0.0;     // w1 delta^2 + w2 / delta at the optimum
    double control_cost = 0.0;  // f1
    double privacy_cost = 0.0;  // f2
};

/// Pareto front f1 = f2^{-2} evaluated on a grid of positive f2 values.
std::vector<std::pair<double, double>> pareto_front(const std::vector<double>& privacy_grid);

/// Minimizer of w1 delta^2 + w2 / delta over delta > 0:
/// delta* = (w2 / (2 w1))^{1/3}, the unique stationary point.
TradeoffPoint optimal_step(const TradeoffWeights& weights);

}  // namespace platoon

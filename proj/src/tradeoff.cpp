#include "platoon/tradeoff.hpp"

#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

void TradeoffWeights::validate() const {
    if (!(control > 0.0) || !(privacy > 0.0))
        throw InputError("trade-off weights must be positive");
}

std::vector<std::pair<double, double>> pareto_front(const std::vector<double>& privacy_grid) {
    std::vector<std::pair<double, double>> front;
    front.reserve(privacy_grid.size());
    for (double f2 : privacy_grid) {
        if (!(f2 > 0.0)) throw InputError("Pareto front is defined for positive f2 only");
        front.emplace_back(f2, 1.0 / (f2 * f2));
    }
    return front;
}

TradeoffPoint optimal_step(const TradeoffWeights& weights) {
    weights.validate();
    TradeoffPoint point;
    point.step = std::cbrt(weights.privacy / (2.0 * weights.control));
    point.control_cost = point.step * point.step;
    point.privacy_cost = 1.0 / point.step;
    point.objective = weights.control * point.control_cost + weights.privacy * point.privacy_cost;
    return point;
}

}  // namespace platoon

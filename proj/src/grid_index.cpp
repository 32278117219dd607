#include <cmath>

#include "cqd/grid.hpp"

namespace cqd {

std::size_t axis_index(double value, const Interval& range, std::size_t bins) {
    if (!std::isfinite(value)) throw InvalidBehavior("behavior descriptor is not finite");
    if (value <= range.lo) return 0;
    if (value >= range.hi) return bins - 1;
    const double t = (value - range.lo) / (range.hi - range.lo);
    const auto idx = static_cast<std::size_t>(std::floor(t * static_cast<double>(bins)));
    return idx < bins ? idx : bins - 1;
}

Cell bin_index(const Behavior& bc, const GridConfig& cfg) {
    return Cell{axis_index(bc.bc1, cfg.bc1_range, cfg.bins_per_axis),
                axis_index(bc.bc2, cfg.bc2_range, cfg.bins_per_axis)};
}

}  // namespace cqd

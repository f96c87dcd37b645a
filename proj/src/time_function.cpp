#include "nls/time_function.hpp"

#include <algorithm>

namespace nls {

TimeFunction::TimeFunction(std::vector<std::pair<double, Complex>> table)
    : is_const_(false), table_(std::move(table)) {
    if (table_.size() < 2)
        throw QuadratureUnderResolved("TimeFunction: tabulated series needs at least two samples");
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (!(table_[i].first > table_[i - 1].first))
            throw ValidationError("TimeFunction: table times must be strictly increasing");
}

Complex TimeFunction::operator()(double t) const {
    if (is_const_) return constant_;
    if (t < table_.front().first - 1e-12 || t > table_.back().first + 1e-12)
        throw ValidationError("TimeFunction: query time outside tabulated range");
    if (t <= table_.front().first) return table_.front().second;
    if (t >= table_.back().first) return table_.back().second;
    auto it = std::upper_bound(table_.begin(), table_.end(), t,
                               [](double v, const auto& row) { return v < row.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second * (1.0 - w) + hi.second * w;
}

}  // namespace nls

#ifndef INCOMPLETE_CARRIER_HPP
#define INCOMPLETE_CARRIER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace incomplete {

/// Finite observable carrier. `values` holds a numeric representative per
/// atom (strictly increasing) when the atoms are numeric; families that
/// rely on an ordering (cells, rectangles) and sample ingestion require it.
struct FiniteCarrier {
    std::vector<std::string> labels;
    std::optional<std::vector<double>> values;
};

/// Real observable carrier: a closed interval, or the whole line when
/// lo = -inf, hi = +inf.
struct RealCarrier {
    double lo;
    double hi;
};

using Carrier = std::variant<FiniteCarrier, RealCarrier>;

} // namespace incomplete

#endif

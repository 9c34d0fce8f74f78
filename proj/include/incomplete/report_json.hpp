#ifndef INCOMPLETE_REPORT_JSON_HPP
#define INCOMPLETE_REPORT_JSON_HPP

#include <json.hpp>

#include "incomplete/inference.hpp"
#include "incomplete/transport.hpp"

namespace incomplete {

using OrderedJson = nlohmann::ordered_json;

OrderedJson to_json(const ObsSet& set);
OrderedJson to_json(const StatisticValue& value);
OrderedJson to_json(const QuantileEstimate& quantile);
OrderedJson to_json(const TestReport& report);
OrderedJson to_json(const RegionReport& report);
OrderedJson to_json(const BoundsReport& report);
OrderedJson to_json(const CouplingResult& result);

} // namespace incomplete

#endif

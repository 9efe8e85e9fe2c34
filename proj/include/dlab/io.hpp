#pragma once

#include <string>

#include <json.hpp>

#include "dlab/boundary.hpp"
#include "dlab/geometry.hpp"
#include "dlab/potential.hpp"
#include "dlab/sequence.hpp"
#include "dlab/series.hpp"

namespace dlab::io {

using nlohmann::json;

// Shortest round-trip decimal rendering; used everywhere numbers reach CSV so
// reruns are byte identical.
std::string format_double(double v);
std::string format_complex(Complex v);  // "re+imj" style pair "re,im"

json to_json(Complex v);                // [re, im]
Complex complex_from_json(const json& j);

json to_json(const GeneralDirichletSeries& series);
GeneralDirichletSeries series_from_json(const json& j);

json to_json(const ApproachRegion& region);
ApproachRegion region_from_json(const json& j);

json to_json(const BoundaryMeasure& mu);
BoundaryMeasure measure_from_json(const json& j);

json to_json(const ConvergenceReport& report);
json to_json(const EvaluationResult& result);
json to_json(const OstrowskiGapReport& report);
json to_json(const BoundaryScan& scan);
json to_json(const Theorem3Report& report);
json to_json(const Theorem2Report& report);
json to_json(const Corollary6Report& report);
json to_json(const CounterexampleTable& table);
json to_json(const WosResult& result);

json read_json_file(const std::string& path);          // throws std::runtime_error
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dlab::io

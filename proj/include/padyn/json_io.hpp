// JSON encodings of the values and reports. Rationals are "num/den" strings
// ("7" when the denominator is 1), matrices row-major arrays of such strings.

#ifndef PADYN_JSON_IO_HPP_
#define PADYN_JSON_IO_HPP_

#include <json.hpp>

#include "padyn/flows.hpp"
#include "padyn/proj.hpp"

namespace padyn::io {

using nlohmann::json;

json to_json(Rational const& x);
json to_json(Mat2 const& m);
json to_json(GlobalConfig const& cfg);
json to_json(ResidueClass const& c);
// {"kind":"near","base":"7","class":"2","n":2}
json to_json(TruncType1 const& t);
json to_json(ProjTruncType const& t);
json to_json(KElem const& k);

// Accepts [["a","b"],["c","d"]] or ["a","b","c","d"]; entries may be strings or
// integers.
Mat2 matrix_from_json(json const& j);

json residues_report(ResidueGroup const& g);
json flows_report(AffineFlowReport const& r);
json borel_report(BorelGroupReport const& r);
json iwasawa_report(Mat2 const& g, std::uint64_t p);
json ellis_report(EllisReport const& r, bool with_tower);
json minimal_flow_report(MinimalFlowReport const& r);
json collapse_report(CollapseReport const& r);
json proj_minimal_report(ProjMinimalityReport const& r);

}  // namespace padyn::io

#endif  // PADYN_JSON_IO_HPP_

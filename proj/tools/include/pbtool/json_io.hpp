#pragma once

#include "pbtool/suites.hpp"

#include <pairbundle/classify.hpp>
#include <pairbundle/closure.hpp>
#include <pairbundle/montecarlo.hpp>
#include <pairbundle/search.hpp>
#include <pairbundle/witness.hpp>

#include <json.hpp>

#include <string>

namespace pb::io {

using json = nlohmann::ordered_json;

// Scalars are [re, im]; plain numbers are accepted on input.
json to_json(cd z);
json to_json(const Mat2& m);
json to_json(const SymMat2& b);
json to_json(const GroupElement& g);
json to_json(const PairAB& x);
json to_json(const BundleLabel& l, const BundleParams& p);
json params_to_json(const BundleParams& p);
json to_json(const Classification& c);
json to_json(const WitnessReport& r);
json to_json(const NeighborhoodReport& r);
json to_json(const DistanceResult& d, const BundleLabel& target);
json to_json(const GraphExport& g);
json to_json(const suite::SuiteReport& r);
json taxonomy_json();

// All parsers throw ValidationError with a path such as "A[1][0]".
cd complex_from(const json& j, const std::string& where);
Mat2 mat2_from(const json& j, const std::string& where);
// {"a","b","d"} or a symmetric 2x2 array.
SymMat2 sym_from(const json& j, const std::string& where);
GroupElement group_from(const json& j);
PairAB pair_from(const json& j);
BundleParams params_from(const BundleLabel& l, const json& j);

// Throws ValidationError carrying the parser's line/column on malformed text.
json parse_document(const std::string& text);

// One row per check: id,pass,margin,detail.
std::string to_csv(const std::vector<suite::SuiteReport>& reports);

}  // namespace pb::io

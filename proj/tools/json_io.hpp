#ifndef SMALELAB_TOOLS_JSON_IO_HPP_
#define SMALELAB_TOOLS_JSON_IO_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "smalelab/cstar.hpp"
#include "smalelab/dynamics.hpp"
#include "smalelab/poly.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"

namespace smalelab::io {

using json = nlohmann::json;

/// Malformed input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scalar scalar_from_json(const json& j, const std::string& field);
json to_json(Scalar z);

/// {"coeffs": [[re, im], ...]} (ascending) or {"roots": [[re, im], ...]}.
Poly poly_from_json(const json& j, const std::string& field = "poly");
Poly parse_poly(const std::string& text);
json to_json(const Poly& p);

CStarElement element_from_json(const json& j, const std::string& field);
json to_json(const CStarElement& x);
json to_json(const CStarPoly& p);
CStarPoly cstar_poly_from_json(const json& j, const std::string& field = "poly");

json to_json(const QuotientWitness& w);
json to_json(const Estimate& e, const char* kind);
json to_json(const BoundCheck& c);
json to_json(const ScalarReport& r);
json to_json(const OrbitResult& o);
json to_json(const CStarVerdict& v);
json to_json(const Certificate& c);
json to_json(const HuntSummary& s);
json to_json(const SearchState& s);

}  // namespace smalelab::io

#endif  // SMALELAB_TOOLS_JSON_IO_HPP_

#pragma once

#include <string>

#include <json.hpp>

#include "jordanlab/genverify.hpp"

namespace jordanlab {

using Json = nlohmann::json;

/// Keys sorted, floats with 17 significant digits, two-space indent, trailing newline.
[[nodiscard]] std::string canonical_dump(const Json& value);

[[nodiscard]] Json to_json(Complex c);
[[nodiscard]] Json to_json(const Vec& v);
/// {"rows", "cols", "data"} with row-major [re, im] pairs.
[[nodiscard]] Json to_json(const Mat& m);
[[nodiscard]] Json to_json(const BilinearMap& b);
[[nodiscard]] Json to_json(const JordanAlgebra& alg);
[[nodiscard]] Json to_json(const ElementaryKit& kit);
[[nodiscard]] Json to_json(const CheckRecord& r);
[[nodiscard]] Json to_json(const std::vector<CheckRecord>& records);
[[nodiscard]] Json to_json(const GenConfig& c);
[[nodiscard]] Json to_json(const Report& r);
[[nodiscard]] Json to_json(const LinMapStandardForm& f);
[[nodiscard]] Json to_json(const TraceStandardForm& f);
[[nodiscard]] Json to_json(const PreserverDecomposition& d);

// Parsers throw JordanError(ParseError) on malformed input.
[[nodiscard]] Complex complex_from_json(const Json& j);
[[nodiscard]] Vec vec_from_json(const Json& j);
[[nodiscard]] Mat mat_from_json(const Json& j);
[[nodiscard]] BilinearMap bilinear_from_json(const Json& j);
[[nodiscard]] JordanAlgebra algebra_from_json(const Json& j);
[[nodiscard]] ElementaryKit kit_from_json(const Json& j);

[[nodiscard]] std::string render_markdown(const std::vector<Report>& reports);

}  // namespace jordanlab

#pragma once

#include <string>

#include <json.hpp>

#include "resolventlab/chains.hpp"
#include "resolventlab/freeprob.hpp"

namespace rlab::io {

using Json = nlohmann::json;

// Readers throw SchemaError with a JSON pointer to the offending field.
Complex complex_from_json(const Json& j, const std::string& path);
FiniteMeasure measure_from_json(const Json& j, MeasureSupport support, const std::string& path);
NevanlinnaTriple triple_from_json(const Json& j, const std::string& path);
HerglotzData herglotz_from_json(const Json& j, const std::string& path);
GeneratorSpec generator_spec_from_json(const Json& j, const std::string& path = "");
HerglotzField field_from_json(const Json& j, const std::string& path = "");
FIDTriple fid_triple_from_json(const Json& j, const std::string& path);
RealMeasure real_measure_from_json(const Json& j, const std::string& path);
FreeLaw free_law_from_json(const Json& j, const std::string& path);

Json to_json(Complex z);
Json to_json(const FiniteMeasure& m);
Json to_json(const NevanlinnaTriple& q);
Json to_json(const HerglotzData& u);
/// CustomGenerator has no serial form and raises UnsupportedError.
Json to_json(const GeneratorSpec& spec);
Json to_json(const ResolventSolution& sol, double t, Complex w);

Json load_file(const std::string& path);

}  // namespace rlab::io

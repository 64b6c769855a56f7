#pragma once

// JSON encodings of the library types.  Readers throw StructuralError with a
// short path ("values[3][0]") on malformed input.

#include <string>

#include <json.hpp>

#include "qmetric/funcspace.hpp"
#include "qmetric/mcshane.hpp"
#include "qmetric/mk.hpp"
#include "qmetric/propinquity.hpp"

namespace qmetric::io {

using nlohmann::json;

/// Rounds to 12 significant digits so reports print stably.
double num(double v);

Algebra read_algebra(const json& j);
json write(const Algebra& a);

AlgElement read_element(const json& j, const Algebra& alg);
json write(const AlgElement& a);

AlgState read_alg_state(const json& j, const Algebra& alg, const Tolerances& tol = {});
json write(const AlgState& s);

FiniteMetricSpace read_space(const json& j, const Tolerances& tol = {});
json write(const FiniteMetricSpace& x);

MatrixFunction read_function(const json& j, const Tolerances& tol = {});
json write(const MatrixFunction& f);

/// Terms name their point by label (string) or index (integer).
FunctionalState read_functional_state(const json& j, const FiniteMetricSpace& x, const Algebra& alg,
                                      const Tolerances& tol = {});

json write(const MkResult& r);

/// {"space":..., "subset":[labels or indices], "values":[...], "K":1}
ExtensionProblem read_extension(const json& j, const Tolerances& tol = {});

json write(const MatchRecord& r);
json write(const ApproxRow& r);

DistMatrix read_matrix(const json& j, const char* what);

json parse_file(const std::string& path);

}  // namespace qmetric::io

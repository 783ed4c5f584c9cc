// JSON document formats for every value the CLI reads or writes. Scalars use
// the text formats "a"/"a/b" (rationals) and decimal residues (prime fields);
// endomorphisms state the vectorization convention explicitly.
#pragma once

#include "glstab/enumerate.hpp"

// vendored single header
#include "json.hpp"

namespace glstab {

using Json = nlohmann::json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field = {});

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field = {});

Json to_json(const NonSingularityCertificate& c);
NonSingularityCertificate certificate_from_json(const Json& j, const FieldSpec& f);

Json to_json(const MatrixSubspace& v);
MatrixSubspace subspace_from_json(const Json& j);

Json to_json(const MatEndo& f);
MatEndo endo_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field = {});

Json to_json(const DivisionAlgebraSpec& a);
DivisionAlgebraSpec algebra_from_json(const Json& j);

Json to_json(const PreservationVerdict& v);
Json to_json(const NonsingVerdict& v);
Json to_json(const SingularVerdict& v);
Json to_json(const DivisionVerdict& v);
Json to_json(const MaximalSingularType& t);
Json to_json(const PreserverClassification& c);
Json to_json(const EnumerationReport& r);
Json to_json(const Theorem1Report& r);
Json to_json(const DieudonneReport& r);
Json to_json(const OntoAuditReport& r);
Json to_json(const SpanAuditReport& r);

// Human-readable rendering of any report JSON emitted above.
std::string render_report(const Json& j);

} // namespace glstab

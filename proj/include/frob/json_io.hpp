#pragma once

// JSON encodings of matrices, forms, certificates and threshold reports. Field
// elements are written as coefficient lists in the polynomial basis.

#include <json.hpp>

#include "frob/fpt.hpp"
#include "frob/normalize.hpp"

namespace frob::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json elem_to_json(const FieldCtx& f, Elem a);
/// Accepts a coefficient list or a plain integer (reduced mod p).
Elem elem_from_json(const FieldCtx& f, const Json& j);

Json field_to_json(const FieldCtx& f);
/// From "field" (a spec string) or from p, k and an optional modulus.
Field field_from_json(const Json& j);

Json rows_to_json(const Matrix& m);
Matrix rows_from_json(const Json& rows, const Field& f);

/// {p, k, e, n, rows}, plus the modulus when it is not the default one.
Json form_to_json(const FrobeniusForm& form);
FrobeniusForm form_from_json(const Json& j);

Json op_to_json(const FieldCtx& f, const ElementaryOp& op);
ElementaryOp op_from_json(const FieldCtx& f, const Json& j);

Json certificate_to_json(const SparseCertificate& cert);
SparseCertificate certificate_from_json(const Json& j);

Json fpt_to_json(const FptInterval& r);

/// Parses text, turning syntax errors into MalformedInput.
Json parse(const std::string& text);

}  // namespace frob::io

#include "frob/json_io.hpp"

#include "frob/error.hpp"

namespace frob::io {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedInput(std::string("field \"") + key + "\" has the wrong type");
  }
}

const char* kind_name(ElementaryOp::Kind k) {
  switch (k) {
    case ElementaryOp::Kind::Swap:
      return "swap";
    case ElementaryOp::Kind::Scale:
      return "scale";
    case ElementaryOp::Kind::Shear:
      return "shear";
  }
  return "";
}

}  // namespace

Json elem_to_json(const FieldCtx& f, Elem a) { return Json(f.coeffs(a)); }

Elem elem_from_json(const FieldCtx& f, const Json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (!j.is_array() || j.size() > f.k()) throw MalformedInput("field element must be a list of at most k coefficients");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw MalformedInput("coefficients must be integers");
    const auto v = x.get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(f.p())) throw MalformedInput("coefficient outside [0, p)");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return f.from_coeffs(c);
}

Json field_to_json(const FieldCtx& f) { return Json(f.spec()); }

Field field_from_json(const Json& j) {
  if (j.is_object() && j.contains("field")) return FieldCtx::parse(get<std::string>(j, "field"));
  const auto p = get<std::uint32_t>(j, "p");
  const auto k = get<std::uint32_t>(j, "k");
  if (j.contains("modulus")) return FieldCtx::make(p, k, get<std::vector<std::uint32_t>>(j, "modulus"));
  return FieldCtx::make(p, k);
}

Json rows_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(*m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix rows_from_json(const Json& rows, const Field& f) {
  if (!rows.is_array()) throw MalformedInput("rows must be an array");
  const std::size_t n = rows.size();
  const std::size_t cols = n == 0 ? 0 : (rows[0].is_array() ? rows[0].size() : 0);
  Matrix m(f, n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw MalformedInput("rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = elem_from_json(*f, rows[i][j]);
  }
  return m;
}

Json form_to_json(const FrobeniusForm& form) {
  const FieldCtx& f = *form.field();
  Json j;
  j["p"] = f.p();
  j["k"] = f.k();
  if (f.modulus() != default_modulus(f.p(), f.k())) j["modulus"] = f.modulus();
  j["e"] = form.e;
  j["n"] = form.n();
  j["rows"] = rows_to_json(form.a);
  return j;
}

FrobeniusForm form_from_json(const Json& j) {
  const Field f = field_from_json(j);
  const auto e = get<std::uint64_t>(j, "e");
  Matrix a = rows_from_json(j.contains("rows") ? j.at("rows") : Json(), f);
  if (a.rows() != a.cols()) throw MalformedInput("matrix must be square");
  if (j.contains("n") && get<std::size_t>(j, "n") != a.rows()) throw MalformedInput("n does not match the rows");
  return make_form(a, e);
}

Json op_to_json(const FieldCtx& f, const ElementaryOp& op) {
  Json params;
  params["i"] = op.i;
  if (op.kind != ElementaryOp::Kind::Scale) params["j"] = op.j;
  if (op.kind != ElementaryOp::Kind::Swap) params["lambda"] = elem_to_json(f, op.lambda);
  return Json{{"kind", kind_name(op.kind)}, {"params", params}};
}

ElementaryOp op_from_json(const FieldCtx& f, const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  const Json params = j.contains("params") ? j.at("params") : Json();
  const auto i = get<std::size_t>(params, "i");
  if (kind == "swap") return swap_op(i, get<std::size_t>(params, "j"));
  if (!params.contains("lambda")) throw MalformedInput("missing field \"lambda\"");
  const Elem lambda = elem_from_json(f, params.at("lambda"));
  if (kind == "scale") return scale_op(i, lambda);
  if (kind == "shear") return shear_op(i, get<std::size_t>(params, "j"), lambda);
  throw MalformedInput("unknown op kind \"" + kind + "\"");
}

Json certificate_to_json(const SparseCertificate& cert) {
  const FieldCtx& f = *cert.field;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["base_field"] = field_to_json(*cert.base_field);
  j["field"] = field_to_json(f);
  j["n"] = cert.input.rows();
  j["e"] = cert.e;
  j["input_matrix"] = rows_to_json(cert.input);
  j["sparse_matrix"] = rows_to_json(cert.sparse);
  j["g"] = rows_to_json(cert.g);
  Json ops = Json::array();
  for (const auto& op : cert.ops) ops.push_back(op_to_json(f, op));
  j["ops"] = std::move(ops);
  Json emb = Json::array();
  for (Elem x : cert.embedding) emb.push_back(elem_to_json(f, x));
  j["embedding"] = std::move(emb);
  return j;
}

SparseCertificate certificate_from_json(const Json& j) {
  SparseCertificate c;
  c.field = FieldCtx::parse(get<std::string>(j, "field"));
  c.base_field = j.contains("base_field") ? FieldCtx::parse(get<std::string>(j, "base_field")) : c.field;
  c.e = get<std::uint64_t>(j, "e");
  c.input = rows_from_json(j.contains("input_matrix") ? j.at("input_matrix") : Json(), c.base_field);
  c.sparse = rows_from_json(j.contains("sparse_matrix") ? j.at("sparse_matrix") : Json(), c.field);
  c.g = rows_from_json(j.contains("g") ? j.at("g") : Json(), c.field);
  const auto n = get<std::size_t>(j, "n");
  if (c.input.rows() != n || c.input.cols() != n || c.sparse.rows() != n || c.g.rows() != n) {
    throw MalformedInput("certificate matrices do not match n");
  }
  if (!j.contains("ops") || !j.at("ops").is_array()) throw MalformedInput("missing field \"ops\"");
  for (const auto& op : j.at("ops")) c.ops.push_back(op_from_json(*c.field, op));
  if (j.contains("embedding")) {
    for (const auto& x : j.at("embedding")) c.embedding.push_back(elem_from_json(*c.field, x));
  } else if (same_field(c.base_field, c.field)) {
    for (std::uint64_t v = 0; v < c.field->order(); ++v) c.embedding.push_back(c.field->element(v));
  } else {
    throw MalformedInput("missing field \"embedding\"");
  }
  return c;
}

Json fpt_to_json(const FptInterval& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["degree"] = r.degree;
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(Json{{"e", l.e}, {"nu", l.nu}});
  j["levels"] = std::move(levels);
  j["lo"] = r.lo.to_string();
  j["hi"] = r.hi.to_string();
  if (r.exact) {
    j["exact"] = Json{{"value", r.exact->value.to_string()}, {"reason", r.exact->reason}};
  } else {
    j["exact"] = nullptr;
  }
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace frob::io

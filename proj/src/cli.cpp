#include "frob/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "frob/classify.hpp"
#include "frob/error.hpp"
#include "frob/geom.hpp"
#include "frob/json_io.hpp"

namespace frob::cli {

namespace {

using io::Json;

struct Job {
  std::string field;
  std::string input;
  std::string file;
  std::optional<std::uint64_t> e;
  std::uint64_t emax = 3;
  std::optional<std::uint64_t> budget;
  std::size_t trials = 20;
  std::uint64_t seed = 0x5eed;
  std::uint32_t ext_cap = 8;
  std::uint64_t search_cap = std::uint64_t{1} << 22;
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::optional<std::size_t> r;
  bool all = false;
  std::string line;
  std::string plane;
  bool text = false;
};

std::string read_input(const Job& job) {
  if (job.file.empty()) {
    if (job.input.empty()) throw MalformedInput("no input given");
    return job.input;
  }
  std::ifstream in(job.file);
  if (!in) throw MalformedInput("cannot read " + job.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && s[pos] == '{';
}

Field require_field(const Job& job) {
  if (job.field.empty()) throw MalformedInput("--field is required for polynomial input");
  return FieldCtx::parse(job.field);
}

/// Matrix JSON, or polynomial text that must be a Frobenius form.
FrobeniusForm read_form(const Job& job) {
  const std::string text = read_input(job);
  if (looks_like_json(text)) return io::form_from_json(io::parse(text));
  const MultiPoly f = parse_poly(text, require_field(job));
  const auto form = job.e ? from_polynomial(f, *job.e) : detect_frobenius(f);
  if (!form) throw MalformedInput("input is not a Frobenius form");
  return *form;
}

NormalizeOptions normalize_options(const Job& job) {
  NormalizeOptions o;
  o.ext_cap = job.ext_cap;
  o.search_cap = job.search_cap;
  return o;
}

Json report(const char* command) {
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["command"] = command;
  return j;
}

Json frobenius_report(const char* command, const std::optional<FrobeniusForm>& form) {
  Json j = report(command);
  j["frobenius"] = form.has_value();
  if (form) {
    j["q"] = form->q();
    j["matrix"] = io::form_to_json(*form);
  }
  return j;
}

Json cmd_fpt(const Job& job) {
  const MultiPoly f = parse_poly(read_input(job), require_field(job));
  FptOptions opts;
  opts.reduced_trials = job.trials;
  opts.seed = job.seed;
  if (job.budget) opts.budget = *job.budget;
  Json j = io::fpt_to_json(fpt_interval(f, job.emax, opts));
  j["command"] = "fpt";
  return j;
}

Json cmd_detect(const Job& job) {
  const MultiPoly f = parse_poly(read_input(job), require_field(job));
  return frobenius_report("detect", job.e ? from_polynomial(f, *job.e) : detect_frobenius(f));
}

Json cmd_invariants(const Job& job) {
  const FrobeniusForm form = read_form(job);
  Json j = report("invariants");
  j["n"] = form.n();
  j["q"] = form.q();
  j["rank"] = rank(form);
  j["embedding_dimension"] = embedding_dimension(form);
  const auto sing = singular_locus(form);
  j["singular_locus_dimension"] = sing.size();
  Json basis = Json::array();
  for (const auto& v : sing) {
    Json row = Json::array();
    for (Elem x : v) row.push_back(io::elem_to_json(*form.field(), x));
    basis.push_back(std::move(row));
  }
  j["singular_locus_basis"] = std::move(basis);
  j["hessian_zero"] = hessian_is_zero(form);
  j["hermitian"] = is_hermitian(form);
  j["polynomial"] = to_string(to_polynomial(form));
  return j;
}

Json certificate_report(const char* command, const SparseCertificate& cert) {
  Json j = io::certificate_to_json(cert);
  j["command"] = command;
  if (cert.sparse.rows() > 0 && is_sparse(cert.sparse)) j["pattern"] = pattern_of(cert.sparse).id();
  return j;
}

Json cmd_sparsify(const Job& job) {
  return certificate_report("sparsify", sparsify(read_form(job), normalize_options(job)));
}

Json cmd_diagonalize(const Job& job) {
  return certificate_report("diagonalize", diagonalize_full_rank(read_form(job), normalize_options(job)));
}

Json cmd_verify(const Job& job, int& code) {
  const auto rep = verify_certificate(io::certificate_from_json(io::parse(read_input(job))));
  Json j = report("verify");
  j["ok"] = rep.ok;
  j["detail"] = rep.detail;
  if (!rep.ok) code = kMalformed;
  return j;
}

std::pair<Field, std::uint64_t> field_of_q(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint64_t e = 0;
    for (std::uint64_t t = q; t > 1; t /= p, ++e) {
      if (t % p != 0) throw DomainError("q must be a prime power");
    }
    return {FieldCtx::make(p, 1), e};
  }
  throw DomainError("q must be a prime power");
}

Json cmd_classify(const Job& job) {
  const auto [f, e] = field_of_q(job.q);
  Json j = report("classify");
  j["n"] = job.n;
  j["q"] = job.q;
  Json rows = Json::array();
  for (const auto& row : class_table(job.n, f, e)) {
    rows.push_back(Json{{"pattern", row.pattern.id()},
                        {"r", row.pattern.r},
                        {"embedding_dimension", row.embedding_dimension},
                        {"singular_locus_dimension", row.singular_locus_dimension},
                        {"polynomial", row.polynomial}});
  }
  j["count"] = rows.size();
  j["classes"] = std::move(rows);
  return j;
}

Json cmd_enumerate(const Job& job) {
  Json j = report("enumerate");
  j["n"] = job.n;
  j["nondegenerate_only"] = !job.all;
  Json pats = Json::array();
  const std::size_t lo = job.r ? *job.r : 1;
  const std::size_t hi = job.r ? *job.r : job.n;
  for (std::size_t r = lo; r <= hi; ++r) {
    for (const auto& p : enumerate_sparse(job.n, r, !job.all)) pats.push_back(Json{{"pattern", p.id()}, {"r", p.r}});
  }
  j["count"] = pats.size();
  j["fibonacci_bound"] = fibonacci_bound(job.n);
  j["patterns"] = std::move(pats);
  return j;
}

std::vector<Elem> read_vector(const FieldCtx& f, const std::string& text) {
  const Json j = io::parse(text);
  if (!j.is_array()) throw MalformedInput("expected a JSON array of field elements");
  std::vector<Elem> v;
  for (const auto& x : j) v.push_back(io::elem_from_json(f, x));
  return v;
}

Json cmd_section(const Job& job) {
  const std::string text = read_input(job);
  std::optional<FrobeniusForm> form;
  MultiPoly f;
  if (looks_like_json(text)) {
    form = io::form_from_json(io::parse(text));
    f = to_polynomial(*form);
  } else {
    f = parse_poly(text, require_field(job));
  }
  Json j = report("section");
  if (!job.line.empty()) {
    const auto l = read_vector(*f.field(), job.line);
    if (l.size() != f.nvars()) throw MalformedInput("the linear form needs one coefficient per variable");
    const Section s = form ? hyperplane_section(*form, l) : hyperplane_section(f, l);
    j["polynomial"] = to_string(s.polynomial);
    j["frobenius"] = s.form.has_value();
    if (s.form) j["matrix"] = io::form_to_json(*s.form);
    return j;
  }
  std::optional<std::uint64_t> e = job.e;
  if (!e && form) e = form->e;
  if (!e) {
    if (const auto d = detect_frobenius(f)) e = d->e;
  }
  if (!e) throw MalformedInput("--e is required when the input is not a Frobenius form");
  const auto sweep = sweep_sections(f, *e);
  j["e"] = *e;
  j["sections"] = sweep.sections;
  j["frobenius_sections"] = sweep.frobenius;
  j["all_frobenius"] = sweep.all_frobenius();
  return j;
}

Json cmd_gauss(const Job& job) {
  const auto g = gauss_data(read_form(job));
  Json j = report("gauss");
  j["insep_degree"] = g.insep_degree ? Json(*g.insep_degree) : Json(nullptr);
  j["dual_matrix"] = io::rows_to_json(g.dual_matrix);
  j["dual_is_frobenius"] = g.dual_is_frobenius;
  if (!g.note.empty()) j["note"] = g.note;
  return j;
}

Json cmd_star(const Job& job) {
  FrobeniusForm form = read_form(job);
  if (!job.plane.empty()) form = restrict_form(form, io::rows_from_json(io::parse(job.plane), form.field()));
  const auto rep = star_classify(form, job.ext_cap);
  const FieldCtx& f = *rep.field;
  Json j = report("star");
  j["verdict"] = to_string(rep.verdict);
  j["field"] = io::field_to_json(f);
  j["a"] = io::elem_to_json(f, rep.a);
  j["b"] = io::elem_to_json(f, rep.b);
  Json factors = Json::array();
  for (const auto& fac : rep.factors) {
    Json c = Json::array();
    for (Elem x : fac.coeffs) c.push_back(io::elem_to_json(f, x));
    factors.push_back(Json{{"coeffs", c}, {"multiplicity", fac.multiplicity}});
  }
  j["factors"] = std::move(factors);
  if (rep.verdict == StarVerdict::PerfectStar) {
    const auto binary =
        quotient_by_linear_form(to_polynomial(form), {form.field()->zero(), form.field()->zero(), form.field()->one()});
    j["perfect_star_check"] = verify_perfect_star(binary, job.ext_cap);
  }
  return j;
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string rational_text(const Json& v) {
  std::string s = v.get<std::string>();
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
  return s;
}

bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array()) return std::any_of(j.begin(), j.end(), has_object);
  return false;
}

// Indented objects; arrays without objects stay on one line.
void write_json(const Json& j, std::ostream& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      write_json(value, out, depth + 1);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << close << "}";
  } else if (j.is_array() && has_object(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_json(j[i], out, depth + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << "]";
  } else {
    out << j.dump();
  }
}

void render_text(const Json& j, std::ostream& out) {
  const std::string cmd = j.value("command", "");
  if (cmd == "fpt") {
    out << "interval [" << rational_text(j["lo"]) << ", " << rational_text(j["hi"]) << "]\n";
    for (const auto& l : j["levels"]) out << "nu_" << l["e"] << " = " << l["nu"] << "\n";
    if (!j["exact"].is_null()) out << "exact " << rational_text(j["exact"]["value"]) << " (" << scalar_text(j["exact"]["reason"]) << ")\n";
    return;
  }
  if (cmd == "classify") {
    out << "pattern\tr\temb\tsing\tpolynomial\n";
    for (const auto& c : j["classes"]) {
      out << scalar_text(c["pattern"]) << "\t" << c["r"] << "\t" << c["embedding_dimension"] << "\t"
          << c["singular_locus_dimension"] << "\t" << scalar_text(c["polynomial"]) << "\n";
    }
    out << j["count"] << " classes\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version" || key == "command") continue;
    out << key << ": " << scalar_text(value) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Frobenius forms over finite fields", "frobfpt"};
  app.require_subcommand(1);
  app.fallthrough();
  Job job;
  app.add_flag("--text", job.text, "Plain-text report instead of JSON");
  app.add_flag("--json", [&job](std::int64_t) { job.text = false; }, "JSON report (default)");
  app.add_option("--seed", job.seed, "Seed for every randomized step");

  int code = kOk;
  std::function<Json()> action;
  auto sub = [&](const char* name, const char* help, std::function<Json()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  auto input_opts = [&job](CLI::App* s) {
    s->add_option("input", job.input, "Polynomial text or matrix JSON");
    s->add_option("--file", job.file, "Read the input from a file");
    s->add_option("--field", job.field, "Field spec p^k or p^k/modulus=c0,...,ck");
    s->add_option("--e", job.e, "Frobenius exponent, q = p^e");
  };
  auto cap_opts = [&job](CLI::App* s) {
    s->add_option("--ext-cap", job.ext_cap, "Largest extension degree over F_p");
    s->add_option("--search-cap", job.search_cap, "Largest candidate set in the final-column search");
  };

  auto* fpt = sub("fpt", "nu table, threshold interval and exact value", [&] { return cmd_fpt(job); });
  input_opts(fpt);
  fpt->add_option("--emax", job.emax, "Largest level e");
  fpt->add_option("--budget", job.budget, "Work budget");
  fpt->add_option("--trials", job.trials, "Random lines in the reducedness test");
  input_opts(sub("detect", "Frobenius-form extraction", [&] { return cmd_detect(job); }));
  input_opts(sub("invariants", "Rank, embedding dimension, singular locus, Hessian, Hermitian",
                 [&] { return cmd_invariants(job); }));
  auto* sp = sub("sparsify", "Sparse normal form with certificate", [&] { return cmd_sparsify(job); });
  input_opts(sp);
  cap_opts(sp);
  auto* dg = sub("diagonalize", "Full-rank normal form with certificate", [&] { return cmd_diagonalize(job); });
  input_opts(dg);
  cap_opts(dg);
  input_opts(sub("verify", "Certificate replay", [&] { return cmd_verify(job, code); }));
  auto* cl = sub("classify", "Sparse classes in n variables", [&] { return cmd_classify(job); });
  cl->add_option("--n", job.n, "Number of variables")->required();
  cl->add_option("--q", job.q, "q = p^e")->required();
  auto* en = sub("enumerate", "Sparse patterns", [&] { return cmd_enumerate(job); });
  en->add_option("--n", job.n, "Number of variables")->required();
  en->add_option("--r", job.r, "Rank; all ranks when omitted");
  en->add_flag("--all", job.all, "Include degenerate patterns");
  auto* se = sub("section", "Hyperplane sections", [&] { return cmd_section(job); });
  input_opts(se);
  se->add_option("--line", job.line, "Linear form as a JSON array; all sections when omitted");
  input_opts(sub("gauss", "Gauss map data", [&] { return cmd_gauss(job); }));
  auto* st = sub("star", "Line configuration through x0 = x1 = 0", [&] { return cmd_star(job); });
  input_opts(st);
  cap_opts(st);
  st->add_option("--plane", job.plane, "Rows of an n x 3 matrix G as JSON; restricts to x = G y first");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    const Json j = action();
    if (job.text) {
      render_text(j, out);
    } else {
      write_json(j, out, 0);
      out << "\n";
    }
    return code;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace frob::cli

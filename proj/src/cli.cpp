#include "nichols/cli.hpp"

#include "nichols/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <sstream>

namespace nichols {

namespace {

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Options
{
  std::string format = "json";
  std::string scheme, tuple, diagonal, group, classes, start, pair = "1,2";
  std::size_t max_objects = 0, max_roots = 0, h_cap = 8, tensor_guard = 20000, index = 1;
  std::size_t degree = 4;
  bool properties = false;
};

struct Report
{
  Json json;
  std::string table;
  std::string dot;  // empty when DOT is not available
  bool findings = false;
};

// ---------------------------------------------------------------------------
// Input

template <class F>
auto from_file(const std::string &file, F parse)
{
  Json j = [&] {
    try {
      return load_json_file(file);
    } catch (const InputError &e) {
      throw InputError(e.path(), file + ": " + std::string(e.what()).substr(e.path().size() + 2));
    }
  }();
  try {
    return parse(j);
  } catch (const InputError &e) {
    throw InputError(e.path(), file + ": " + std::string(e.what()).substr(e.path().size() + 2));
  }
}

CartanScheme load_scheme(const Options &o)
{
  if (o.scheme.empty())
    throw UsageError("--scheme is required");
  return from_file(o.scheme, [](const Json &j) { return parse_scheme(j); });
}

YDTuple load_tuple(const Options &o)
{
  if (o.tuple.empty() == o.diagonal.empty())
    throw UsageError("exactly one of --tuple, --diagonal is required");
  if (!o.tuple.empty())
    return from_file(o.tuple, [](const Json &j) { return parse_tuple(j); });
  return from_file(o.diagonal, [](const Json &j) {
    if (j.is_object() && j.contains("diagonal"))
      return parse_tuple(j);
    try {
      return parse_tuple(Json{{"diagonal", j}});
    } catch (const InputError &e) {
      std::string p = e.path();
      if (p.rfind("$.diagonal", 0) == 0)
        p = "$" + p.substr(10);
      throw InputError(p, std::string(e.what()).substr(e.path().size() + 2));
    }
  });
}

GroupPtr load_group(const std::string &name)
{
  if (std::filesystem::is_regular_file(name))
    return from_file(name, [](const Json &j) { return parse_group(j); });
  try {
    return parse_group(Json(name), "--group");
  } catch (const InputError &e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_top_level(const std::string &s)
{
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[')
      ++depth;
    else if (ch == ')' || ch == ']')
      --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' || depth > 0) {
      cur += ch;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string &s, std::size_t rank)
{
  auto parts = split_top_level(s);
  if (parts.size() != 2)
    throw UsageError("--pair expects i,j");
  std::size_t v[2];
  for (int k = 0; k < 2; ++k) {
    try {
      long x = std::stol(parts[k]);
      if (x < 1 || static_cast<std::size_t>(x) > rank)
        throw UsageError("--pair index out of range 1.." + std::to_string(rank));
      v[k] = static_cast<std::size_t>(x - 1);
    } catch (const std::logic_error &) {
      throw UsageError("--pair expects integers");
    }
  }
  if (v[0] == v[1])
    throw UsageError("--pair needs two different indices");
  return {v[0], v[1]};
}

std::size_t checked_index(const Options &o, std::size_t rank)
{
  if (o.index < 1 || o.index > rank)
    throw UsageError("--index out of range 1.." + std::to_string(rank));
  return o.index - 1;
}

EngineLimits limits(const Options &o)
{
  EngineLimits l;
  l.h_cap = o.h_cap;
  l.tensor_guard = o.tensor_guard;
  l.degree_bound = o.degree;
  return l;
}

GroupoidCaps groupoid_caps(const Options &o)
{
  GroupoidCaps c;
  if (o.max_objects)
    c.max_objects = o.max_objects;
  if (o.max_roots)
    c.max_roots = o.max_roots;
  return c;
}

// ---------------------------------------------------------------------------
// Shared pieces

std::string join(const std::vector<std::string> &parts, const std::string &sep)
{
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k)
    s += (k ? sep : "") + parts[k];
  return s;
}

std::string path_word(const std::vector<std::size_t> &path)
{
  if (path.empty())
    return "start";
  std::string s;
  for (std::size_t k = path.size(); k-- > 0;)
    s += "r" + std::to_string(path[k] + 1);
  return s;
}

Json partial_matrix(const CartanInference &c)
{
  Json m = Json::array();
  for (const auto &row : c.entries) {
    Json r = Json::array();
    for (const auto &e : row)
      r.push_back(e ? Json(*e) : Json(nullptr));
    m.push_back(r);
  }
  return m;
}

std::string partial_string(const CartanInference &c)
{
  std::string s = "[";
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < c.entries[i].size(); ++j)
      s += (j ? "," : "") + (c.entries[i][j] ? std::to_string(*c.entries[i][j]) : std::string("?"));
    s += "]";
  }
  return s + "]";
}

std::vector<std::string> labels(const YDTuple &t)
{
  std::vector<std::string> out;
  for (const auto &m : t.modules)
    out.push_back(class_label(*t.group(), graded_character(m)));
  return out;
}

Json word_json(const CartanScheme &c, const Word &w)
{
  Json out = Json::array();
  for (const auto &[obj, i] : w)
    out.push_back(Json{{"object", c.ids[obj]}, {"index", i + 1}});
  return out;
}

std::string word_string(const Word &w)
{
  std::vector<std::string> parts;
  for (const auto &st : w)
    parts.push_back("s" + std::to_string(st.second + 1));
  return parts.empty() ? "id" : join(parts, " ");
}

Json certificate_json(const CartanScheme &c, const Rank2Certificate &w)
{
  Json closure = Json::array();
  for (std::size_t o : w.closure)
    closure.push_back(c.ids[o]);
  Json products = Json::array();
  for (const auto &p : w.products)
    products.push_back(Json{{"object", c.ids[p.object]},
                            {"a1", p.a1},
                            {"a2", p.a2},
                            {"product", matrix_json(p.product)},
                            {"shape", p.shape}});
  return Json{{"i", w.i + 1}, {"j", w.j + 1}, {"closure", closure}, {"products", products}};
}

std::string certificate_table(const CartanScheme &c, const Rank2Certificate &w)
{
  std::ostringstream t;
  t << "certificate on s" << w.i + 1 << ", s" << w.j + 1 << " over " << w.closure.size() << " object(s)\n";
  for (const auto &p : w.products)
    t << "  " << c.ids[p.object] << ": eta1(" << p.a1 << ") eta2(" << p.a2 << ") = " << matrix_string(p.product)
      << (p.shape ? "" : " (shape fails)") << "\n";
  return t.str();
}

Json axioms_json(const CartanScheme &c, const RootAxiomReport &r)
{
  Json failures = Json::array();
  for (const auto &f : r.failures)
    failures.push_back(Json{{"axiom", f.axiom},
                            {"object", c.ids[f.object]},
                            {"i", f.i + 1},
                            {"j", f.j + 1},
                            {"witness", f.witness},
                            {"message", f.message}});
  Json exps = Json::array();
  for (const auto &e : r.exponents)
    exps.push_back(Json{{"object", c.ids[e.object]}, {"i", e.i + 1}, {"j", e.j + 1}, {"m", e.m}});
  return Json{{"ok", r.ok()}, {"failures", failures}, {"exponents", exps}};
}

std::string axioms_table(const CartanScheme &c, const RootAxiomReport &r)
{
  std::ostringstream t;
  t << "root axioms: " << (r.ok() ? "ok" : "FAILED") << "\n";
  for (const auto &f : r.failures)
    t << "  " << f.axiom << " at " << c.ids[f.object] << ": " << f.message << "\n";
  for (const auto &e : r.exponents)
    t << "  m_{" << e.i + 1 << "," << e.j + 1 << ";" << c.ids[e.object] << "} = " << e.m << "\n";
  return t.str();
}

Json violations_json(const ValidityReport &v)
{
  Json out = Json::array();
  for (const auto &x : v.violations)
    out.push_back(Json{{"axiom", x.axiom}, {"object", x.object}, {"i", x.i + 1}, {"j", x.j + 1}, {"message", x.message}});
  return out;
}

std::string violations_table(const ValidityReport &v)
{
  std::ostringstream t;
  for (const auto &x : v.violations)
    t << "  " << x.axiom << (x.object.empty() ? "" : " at " + x.object) << ": " << x.message << "\n";
  return t.str();
}

Json finiteness_json(const CartanScheme &c, const FinitenessReport &f)
{
  Json counts = Json::object();
  for (std::size_t o : f.data.objects)
    counts[c.ids[o]] = f.real_root_counts.at(o);
  Json out{{"verdict", verdict_name(f.verdict)},
           {"object_count", f.object_count},
           {"morphism_count", f.morphism_count},
           {"real_root_counts", counts}};
  if (f.longest)
    out["longest"] = Json{{"length", f.longest->length},
                          {"target", c.ids[f.longest->morphism.target]},
                          {"word", word_json(c, f.longest->morphism.word)},
                          {"matrix", matrix_json(f.longest->morphism.matrix)}};
  else
    out["longest"] = nullptr;
  out["witness"] = f.witness ? certificate_json(c, *f.witness) : Json(nullptr);
  out["note"] = f.note;
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Report scheme_check(const Options &o)
{
  CartanScheme c = load_scheme(o);
  Report r;
  ValidityReport v = validate_scheme(c);
  Json objs = Json::array();
  std::ostringstream t;
  t << "scheme of rank " << c.rank << " with " << c.size() << " object(s): " << (v.ok() ? "valid" : "INVALID") << "\n";
  t << violations_table(v);
  for (std::size_t k = 0; k < c.size(); ++k) {
    FiniteTypeResult ft = finite_type_classify(c.cartan[k]);
    objs.push_back(Json{{"id", c.ids[k]},
                        {"cartan", matrix_json(c.cartan[k])},
                        {"finite_type", ft.finite},
                        {"components", ft.labels},
                        {"reason", ft.reason}});
    t << "  " << c.ids[k] << " " << matrix_string(c.cartan[k]) << " "
      << (ft.finite ? join(ft.labels, "x") : "not of finite type") << "\n";
  }
  r.json = Json{{"valid", v.ok()}, {"violations", violations_json(v)}, {"objects", objs}};
  r.table = t.str();
  r.dot = export_dot(c);
  r.findings = !v.ok();
  return r;
}

std::size_t start_object(const Options &o, const CartanScheme &c)
{
  if (o.start.empty())
    return 0;
  auto s = c.find(o.start);
  if (!s)
    throw UsageError("--start: unknown object " + o.start);
  return *s;
}

Report scheme_enumerate(const Options &o)
{
  CartanScheme c = load_scheme(o);
  Report r;
  r.dot = export_dot(c);
  ValidityReport v = validate_scheme(c);
  if (!v.ok()) {
    r.json = Json{{"valid", false}, {"violations", violations_json(v)}};
    r.table = "scheme is not a Cartan scheme\n" + violations_table(v);
    r.findings = true;
    return r;
  }
  std::size_t start = start_object(o, c);
  FinitenessReport f = finiteness_report(c, start, groupoid_caps(o));
  const auto &found = f.data.positive_roots.at(start);
  bool all = f.data.roots_complete;
  std::size_t shown = all ? found.size() : std::min<std::size_t>(found.size(), 20);
  Json roots = Json::array();
  for (std::size_t k = 0; k < shown; ++k)
    roots.push_back(found[k]);
  r.json = Json{{"valid", true}, {"start", c.ids[start]}, {"roots_complete", all}, {"positive_roots", roots}};
  r.json["root_count"] = all ? Json(found.size()) : Json(nullptr);
  Json fj = finiteness_json(c, f);
  for (const auto &[k, val] : fj.items())
    r.json[k] = val;

  std::ostringstream t;
  t << "verdict: " << verdict_name(f.verdict) << "\n";
  t << "objects: " << f.object_count << "  morphisms from " << c.ids[start] << ": " << f.morphism_count << "\n";
  if (all)
    t << "positive real roots at " << c.ids[start] << " (" << found.size() << "):";
  else
    t << "first " << shown << " positive real roots at " << c.ids[start] << " (enumeration capped):";
  for (std::size_t k = 0; k < shown; ++k)
    t << " " << vector_string(found[k]);
  t << "\n";
  if (f.longest)
    t << "longest element: " << word_string(f.longest->morphism.word) << " (length " << f.longest->length << ")\n";
  if (f.witness)
    t << certificate_table(c, *f.witness);
  if (!f.note.empty())
    t << "note: " << f.note << "\n";
  if (f.verdict == Verdict::finite) {
    RootAxiomReport ax = verify_root_system(c, with_negatives(f.data.positive_roots));
    r.json["axioms"] = axioms_json(c, ax);
    t << axioms_table(c, ax);
    r.findings = !ax.ok();
  } else {
    r.json["axioms"] = nullptr;
  }
  r.table = t.str();
  return r;
}

Report scheme_rank2(const Options &o)
{
  CartanScheme c = load_scheme(o);
  if (c.rank < 2)
    throw UsageError("scheme-rank2 needs rank at least 2");
  ValidityReport v = validate_scheme(c);
  Report r;
  if (!v.ok()) {
    r.json = Json{{"valid", false}, {"violations", violations_json(v)}};
    r.table = "scheme is not a Cartan scheme\n" + violations_table(v);
    r.findings = true;
    return r;
  }
  auto [i, j] = parse_pair(o.pair, c.rank);
  std::size_t start = start_object(o, c);
  auto w = rank2_infinite_witness(c, start, i, j, groupoid_caps(o).max_objects);
  r.json = Json{{"valid", true},
                {"start", c.ids[start]},
                {"i", i + 1},
                {"j", j + 1},
                {"infinite", w.has_value()},
                {"certificate", w ? certificate_json(c, *w) : Json(nullptr)}};
  r.table = w ? "infinite: " + certificate_table(c, *w) : std::string("no rank-2 certificate\n");
  r.dot = export_dot(c);
  return r;
}

Report yd_cartan(const Options &o)
{
  YDTuple m = load_tuple(o);
  m.validate();
  CartanInference ci = infer_cartan(m, limits(o));
  Report r;
  Json undefined = Json::array(), fin = Json::array();
  std::ostringstream t;
  t << "cartan " << partial_string(ci) << "\n";
  for (std::size_t i = 0; i < m.rank(); ++i) {
    fin.push_back(ci.i_finite(i));
    for (std::size_t j = 0; j < m.rank(); ++j)
      if (!ci.entries[i][j]) {
        undefined.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"reason", ci.reasons[i][j]}});
        t << "  a_" << i + 1 << j + 1 << " undefined: not " << i + 1 << "-finite within " << ci.reasons[i][j] << "\n";
      }
  }
  r.json = Json{{"rank", m.rank()},
                {"modules", labels(m)},
                {"h_cap", ci.h_cap},
                {"cartan", partial_matrix(ci)},
                {"i_finite", fin},
                {"undefined", undefined}};
  r.table = t.str();
  return r;
}

Json failure_json(const ReflectionFailure &f)
{
  return Json{{"kind", f.kind}, {"i", f.i + 1}, {"j", f.j + 1}, {"message", f.message}};
}

Report yd_reflect(const Options &o)
{
  YDTuple m = load_tuple(o);
  m.validate();
  std::size_t i = checked_index(o, m.rank());
  Reflection ref = reflect_tuple(m, i, limits(o));
  Report r;
  if (ref.failure) {
    r.json = Json{{"index", i + 1}, {"failure", failure_json(*ref.failure)}};
    r.table = "r" + std::to_string(i + 1) + " undefined (" + ref.failure->kind + "): " + ref.failure->message + "\n";
    r.findings = true;
    return r;
  }
  r.json = Json{{"index", i + 1},
                {"row", ref.row},
                {"modules", labels(*ref.tuple)},
                {"isomorphic_to_input", ref.tuple->iso_key() == m.iso_key()},
                {"tuple", tuple_json(*ref.tuple)}};
  std::ostringstream t;
  t << "row " << i + 1 << ": " << vector_string(ref.row) << "\n";
  auto ls = labels(*ref.tuple);
  for (std::size_t k = 0; k < ls.size(); ++k)
    t << "  M" << k + 1 << " -> " << ls[k] << " (dim " << ref.tuple->modules[k].dim() << ")\n";
  r.table = t.str();
  return r;
}

Report yd_build(const Options &o)
{
  YDTuple m = load_tuple(o);
  m.validate();
  SchemeCaps caps;
  caps.limits = limits(o);
  caps.groupoid = groupoid_caps(o);
  if (o.max_objects)
    caps.max_objects = o.max_objects;
  SchemeBuildResult b = build_scheme(m, caps);
  const FiniteGroup &G = *m.group();

  Report r;
  std::ostringstream t;
  Json objs = Json::array();
  for (std::size_t k = 0; k < b.objects.size(); ++k) {
    std::string id = "N" + std::to_string(k);
    objs.push_back(Json{{"id", id},
                        {"path", path_word(b.paths[k])},
                        {"modules", labels(b.objects[k])},
                        {"cartan", k < b.cartan.size() ? partial_matrix(b.cartan[k]) : Json(nullptr)}});
    t << id << " = " << path_word(b.paths[k]) << "(M)  " << (k < b.cartan.size() ? partial_string(b.cartan[k]) : "?")
      << "  " << join(labels(b.objects[k]), " ") << "\n";
  }
  Json refl = Json::object();
  for (std::size_t k = 0; k < b.reflections.size(); ++k) {
    Json row = Json::object();
    for (std::size_t i = 0; i < b.reflections[k].size(); ++i)
      row[std::to_string(i + 1)] = b.reflections[k][i] ? Json("N" + std::to_string(*b.reflections[k][i])) : Json(nullptr);
    refl["N" + std::to_string(k)] = row;
  }
  Json findings = Json::array();
  for (const auto &f : b.findings) {
    findings.push_back(Json{{"kind", f.kind},
                            {"object", "N" + std::to_string(f.object)},
                            {"path", path_word(f.path)},
                            {"i", f.i + 1},
                            {"j", f.j + 1},
                            {"message", f.message}});
    t << "finding (" << f.kind << "): " << f.message << "\n";
  }
  r.json = Json{{"group", Json{{"name", G.name()}, {"order", G.order()}}},
                {"complete", b.complete},
                {"objects", objs},
                {"reflections", refl}};
  r.json["validity"] = violations_json(b.validity);
  t << (b.complete ? "complete" : "incomplete") << " build, " << b.objects.size() << " object(s)\n";
  t << violations_table(b.validity);
  bool failed = !b.findings.empty() || !b.validity.ok();
  if (b.scheme && b.finiteness) {
    const CartanScheme &c = *b.scheme;
    r.json["finiteness"] = finiteness_json(c, *b.finiteness);
    t << "verdict: " << verdict_name(b.finiteness->verdict) << "\n";
    if (b.finiteness->witness)
      t << certificate_table(c, *b.finiteness->witness);
    Json roots = Json::array();
    for (const auto &lr : b.roots) {
      roots.push_back(Json{{"root", lr.root}, {"label", class_label(G, lr.label)}});
      t << "  root " << vector_string(lr.root) << "  " << class_label(G, lr.label) << "\n";
    }
    r.json["roots"] = roots;
    if (b.axioms) {
      r.json["axioms"] = axioms_json(c, *b.axioms);
      t << axioms_table(c, *b.axioms);
      failed = failed || !b.axioms->ok();
    }
    if (o.properties && b.finiteness->verdict == Verdict::finite) {
      Json props = Json::array();
      for (const auto &p : ad_power_properties(b, caps.limits)) {
        props.push_back(Json{{"property", p.property},
                             {"object", c.ids[p.object]},
                             {"i", p.i + 1},
                             {"j", p.j + 1},
                             {"m", p.m},
                             {"message", p.message}});
        t << "property failure (" << p.property << ") at " << c.ids[p.object] << ": " << p.message << "\n";
      }
      failed = failed || !props.empty();
      r.json["property_failures"] = props;
    }
    r.json["scheme"] = scheme_json(c);
  }
  r.json["findings"] = findings;
  r.table = t.str();
  r.dot = export_dot(b);
  r.findings = failed;
  return r;
}

Report yd_dims(const Options &o)
{
  YDTuple m = load_tuple(o);
  m.validate();
  GradedDims d = graded_dims(m, o.degree, limits(o));
  Json totals = Json::array(), dims = Json::array();
  std::vector<std::string> tot;
  for (std::size_t n = 0; n <= o.degree; ++n) {
    totals.push_back(d.total(n));
    tot.push_back(std::to_string(d.total(n)));
  }
  std::ostringstream t;
  t << "degree  dim\n";
  for (std::size_t n = 0; n <= o.degree; ++n)
    t << n << "       " << d.total(n) << "\n";
  if (m.rank() > 1)
    for (const auto &[g, v] : d.dims) {
      dims.push_back(Json{{"gamma", g}, {"dim", v}});
      t << "  " << vector_string(g) << " " << v << "\n";
    }
  else
    for (const auto &[g, v] : d.dims)
      dims.push_back(Json{{"gamma", g}, {"dim", v}});
  t << "dims: " << join(tot, ",") << "\n";
  Report r;
  r.json = Json{{"rank", m.rank()}, {"degree", o.degree}, {"totals", totals}, {"dims", dims}};
  r.table = t.str();
  return r;
}

Report yd_consistency(const Options &o)
{
  YDTuple m = load_tuple(o);
  m.validate();
  std::size_t i = checked_index(o, m.rank());
  ConsistencyReport c = reflection_dim_consistency(m, i, o.degree, limits(o));
  auto cmp = [](const DimComparison &x) {
    return Json{{"gamma", x.gamma}, {"image", x.image}, {"dim", x.dim}, {"reflected_dim", x.reflected_dim}};
  };
  Json window = Json::array(), mism = Json::array();
  for (const auto &x : c.window)
    window.push_back(cmp(x));
  for (const auto &x : c.mismatches)
    mism.push_back(cmp(x));
  Report r;
  r.json = Json{{"index", i + 1},
                {"degree", c.bound},
                {"ok", c.ok()},
                {"row", c.row},
                {"window", window},
                {"mismatches", mism},
                {"base_series", c.base_series},
                {"dual_series", c.dual_series},
                {"failure", c.failure ? failure_json(*c.failure) : Json(nullptr)}};
  std::ostringstream t;
  if (c.failure) {
    t << "r" << i + 1 << " undefined (" << c.failure->kind << "): " << c.failure->message << "\n";
  } else {
    t << "reflection " << i + 1 << ", degree <= " << c.bound << ": " << (c.ok() ? "consistent" : "MISMATCH") << "\n";
    for (const auto &x : c.window)
      t << "  " << vector_string(x.gamma) << " -> " << vector_string(x.image) << "  " << x.dim << " "
        << (x.dim == x.reflected_dim ? "=" : "!=") << " " << x.reflected_dim << "\n";
    if (c.base_series != c.dual_series)
      t << "  Hilbert series of B(M_i) and B(M_i^*) differ\n";
  }
  r.table = t.str();
  r.findings = !c.ok();
  return r;
}

Report group_obstructions(const Options &o)
{
  GroupPtr gp;
  std::vector<std::size_t> classes;
  std::vector<std::string> names;
  if (!o.tuple.empty() || !o.diagonal.empty()) {
    if (!o.group.empty() || !o.classes.empty())
      throw UsageError("give either a tuple or --group/--classes");
    YDTuple m = load_tuple(o);
    m.validate();
    gp = m.group();
    for (const auto &v : m.modules) {
      classes.push_back(v.support_classes().at(0));
      names.push_back(gp->element(gp->classes()[classes.back()].representative).str());
    }
  } else {
    if (o.group.empty())
      throw UsageError("--group is required");
    gp = load_group(o.group);
    for (const auto &s : split_top_level(o.classes)) {
      Perm p;
      try {
        p = Perm::parse(s, gp->degree());
      } catch (const std::exception &e) {
        throw UsageError("--classes: " + s + ": " + e.what());
      }
      auto x = gp->find(p);
      if (!x)
        throw UsageError("--classes: " + s + " is not in the group");
      if (*x == FiniteGroup::identity())
        throw UsageError("--classes: the trivial class carries no obstruction");
      classes.push_back(gp->class_of(*x));
      names.push_back(p.str());
    }
  }
  const FiniteGroup &G = *gp;
  auto el = [&G](std::size_t x) { return G.element(x).str(); };

  Report r;
  std::ostringstream t;
  t << "group " << (G.name().empty() ? "G" : G.name()) << " of order " << G.order() << "\n";
  Json pairs = Json::array();
  std::vector<std::string> pair_text;
  for (auto [a, b] : commuting_class_pairs(G)) {
    std::string x = el(G.classes()[a].representative), y = el(G.classes()[b].representative);
    pairs.push_back(Json::array({x, y}));
    pair_text.push_back("(" + x + ", " + y + ")");
  }
  t << "commuting class pairs: " << (pair_text.empty() ? "none" : join(pair_text, " ")) << "\n";

  Json screens = Json::array();
  if (!classes.empty()) {
    for (const auto &s : finiteness_screen(G, classes)) {
      Json e{{"screen", s.screen}};
      e["classes"] = s.i ? Json::array({names[*s.i], names[*s.j]}) : Json(nullptr);
      e["pass"] = s.pass;
      e["verdict"] = s.verdict;
      e["witness"] = s.witness;
      screens.push_back(e);
      t << s.screen;
      if (s.i)
        t << " [" << names[*s.i] << ", " << names[*s.j] << "]";
      t << ": " << (s.pass ? "pass" : "FAIL") << "  " << s.verdict;
      if (!s.witness.empty())
        t << "  witness " << s.witness;
      t << "\n";
      r.findings = r.findings || !s.pass;
    }
  }
  r.json = Json{{"group", Json{{"name", G.name()}, {"order", G.order()}}},
                {"classes", names},
                {"commuting_class_pairs", pairs},
                {"screens", screens}};
  r.table = t.str();
  return r;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Weyl groupoids, Cartan schemes and Nichols algebras of Yetter-Drinfeld modules", "nichols"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"json", "table", "dot"};

  auto common = [&](CLI::App *s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  };
  auto scheme_opts = [&](CLI::App *s) {
    common(s);
    s->add_option("--scheme", o.scheme, "Cartan scheme JSON file")->required();
    s->add_option("--max-objects", o.max_objects, "Object cap");
    s->add_option("--max-roots", o.max_roots, "Positive root cap per object");
    s->add_option("--start", o.start, "Start object id");
  };
  auto tuple_opts = [&](CLI::App *s) {
    common(s);
    s->add_option("--tuple", o.tuple, "Tuple JSON file");
    s->add_option("--diagonal", o.diagonal, "Diagonal braiding JSON file");
    s->add_option("--h-cap", o.h_cap, "Largest h tried for a_ij");
    s->add_option("--tensor-guard", o.tensor_guard, "Largest tensor space");
    s->add_option("--max-objects", o.max_objects, "Object cap");
  };

  std::vector<std::pair<CLI::App *, Report (*)(const Options &)>> commands;
  auto add = [&](const char *name, const char *desc, Report (*fn)(const Options &)) {
    CLI::App *s = app.add_subcommand(name, desc);
    commands.emplace_back(s, fn);
    return s;
  };

  scheme_opts(add("scheme-check", "Check (M1)(M2)(C1)(C2) and Dynkin types", scheme_check));
  scheme_opts(add("scheme-enumerate", "Real roots and finiteness of the Weyl groupoid", scheme_enumerate));
  {
    CLI::App *s = add("scheme-rank2", "Rank-two infinite-semigroup certificate", scheme_rank2);
    scheme_opts(s);
    s->add_option("--pair", o.pair, "Indices i,j (1-based)");
  }
  tuple_opts(add("yd-cartan", "Cartan matrix from vanishing adjoint powers", yd_cartan));
  {
    CLI::App *s = add("yd-reflect", "Reflect a tuple at one index", yd_reflect);
    tuple_opts(s);
    s->add_option("--index", o.index, "Reflection index (1-based)");
  }
  {
    CLI::App *s = add("yd-build", "Cartan scheme, Weyl groupoid and labeled roots of a tuple", yd_build);
    tuple_opts(s);
    s->add_option("--max-roots", o.max_roots, "Positive root cap per object");
    s->add_flag("--properties", o.properties, "Check irreducibility of adjoint powers on finite builds");
  }
  {
    CLI::App *s = add("yd-dims", "Graded dimensions of the Nichols algebra", yd_dims);
    tuple_opts(s);
    s->add_option("--degree", o.degree, "Top degree");
  }
  {
    CLI::App *s = add("yd-consistency", "Compare graded dimensions across a reflection", yd_consistency);
    tuple_opts(s);
    s->add_option("--index", o.index, "Reflection index (1-based)");
    s->add_option("--degree", o.degree, "Top degree");
  }
  {
    CLI::App *s = add("group-obstructions", "Finite-group screens on conjugacy classes", group_obstructions);
    common(s);
    s->add_option("--group", o.group, "Built-in group name or group JSON file");
    s->add_option("--classes", o.classes, "Class representatives, e.g. \"(12),(12)\"");
    s->add_option("--tuple", o.tuple, "Tuple JSON file");
    s->add_option("--diagonal", o.diagonal, "Diagonal braiding JSON file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  for (const auto &[sub, fn] : commands) {
    if (!sub->parsed())
      continue;
    try {
      Report r = fn(o);
      if (o.format == "dot") {
        if (r.dot.empty()) {
          err << "error: --format dot is not available for " << sub->get_name() << "\n";
          return 1;
        }
        out << r.dot;
      } else if (o.format == "table") {
        out << r.table;
      } else {
        out << r.json.dump(2) << "\n";
      }
      return r.findings ? 2 : 0;
    } catch (const InputError &e) {
      err << "error: " << e.what() << "\n";
    } catch (const UsageError &e) {
      err << "error: " << e.what() << "\n";
    } catch (const GuardExceeded &e) {
      err << "error: limit exceeded: " << e.what() << "\n";
    } catch (const std::invalid_argument &e) {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  }
  return 1;
}

} // namespace nichols

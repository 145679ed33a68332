#include "nichols/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nichols {

namespace {

std::string key_path(const std::string &path, const std::string &key) { return path + "." + key; }
std::string index_path(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json &field(const Json &j, const std::string &key, const std::string &path)
{
  if (!j.is_object())
    throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(key_path(path, key), "missing field");
  return *it;
}

const Json &array(const Json &j, const std::string &path)
{
  if (!j.is_array())
    throw InputError(path, "expected an array");
  return j;
}

long integer(const Json &j, const std::string &path)
{
  if (j.is_number_integer())
    return j.get<long>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      long v = std::stol(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size())
        return v;
    } catch (const std::exception &) {
    }
  }
  throw InputError(path, "expected an integer");
}

std::size_t positive(const Json &j, const std::string &path)
{
  long v = integer(j, path);
  if (v <= 0)
    throw InputError(path, "expected a positive integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> centralizer_generators(const FiniteGroup &g, std::size_t x)
{
  std::vector<std::size_t> cent = g.centralizer_of(x);
  std::vector<std::size_t> gens;
  std::vector<std::size_t> sub{FiniteGroup::identity()};
  for (std::size_t c : cent) {
    if (std::binary_search(sub.begin(), sub.end(), c))
      continue;
    gens.push_back(c);
    sub = g.generated_subgroup(gens);
    if (sub.size() == cent.size())
      break;
  }
  return gens;
}

std::string dot_escape(const std::string &s)
{
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\')
      out += '\\';
    out += ch;
  }
  return out;
}

} // namespace

Json load_json_file(const std::string &file)
{
  std::ifstream in(file);
  if (!in)
    throw InputError("$", "cannot open " + file);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError("$", std::string("invalid JSON in ") + file + ": " + e.what());
  }
}

GroupPtr parse_group(const Json &j, const std::string &path)
{
  if (j.is_string()) {
    try {
      return std::make_shared<FiniteGroup>(builtin_group(j.get<std::string>()));
    } catch (const std::exception &e) {
      throw InputError(path, e.what());
    }
  }
  std::size_t degree = positive(field(j, "degree", path), key_path(path, "degree"));
  std::string gpath = key_path(path, "generators");
  const Json &gens = array(field(j, "generators", path), gpath);
  std::vector<Perm> perms;
  for (std::size_t k = 0; k < gens.size(); ++k)
    perms.push_back(parse_perm(gens[k], degree, index_path(gpath, k)));
  try {
    auto g = std::make_shared<FiniteGroup>(FiniteGroup::from_generators(degree, std::move(perms)));
    if (auto it = j.find("name"); it != j.end() && it->is_string())
      g->set_name(it->get<std::string>());
    return g;
  } catch (const std::exception &e) {
    throw InputError(path, e.what());
  }
}

Perm parse_perm(const Json &j, std::size_t degree, const std::string &path)
{
  try {
    if (j.is_string())
      return Perm::parse(j.get<std::string>(), degree);
    if (j.is_array()) {
      if (j.size() != degree)
        throw InputError(path, "expected " + std::to_string(degree) + " images");
      std::vector<std::uint32_t> img;
      for (std::size_t k = 0; k < j.size(); ++k) {
        long v = integer(j[k], index_path(path, k));
        if (v < 0)
          throw InputError(index_path(path, k), "negative image");
        img.push_back(static_cast<std::uint32_t>(v));
      }
      return Perm(std::move(img));
    }
  } catch (const InputError &) {
    throw;
  } catch (const std::exception &e) {
    throw InputError(path, e.what());
  }
  throw InputError(path, "expected a permutation (cycle string or image array)");
}

Cyclotomic parse_cyclotomic(const Json &j, const std::string &path, unsigned default_order)
{
  try {
    if (j.is_number_integer())
      return Cyclotomic(j.get<long>());
    if (j.is_string())
      return Cyclotomic(parse_rational(j.get<std::string>()));
  } catch (const std::exception &e) {
    throw InputError(path, e.what());
  }
  if (!j.is_object())
    throw InputError(path, "expected a cyclotomic number");
  unsigned order = default_order;
  if (auto it = j.find("order"); it != j.end())
    order = static_cast<unsigned>(positive(*it, key_path(path, "order")));
  if (auto it = j.find("power"); it != j.end())
    return Cyclotomic::zeta(order, integer(*it, key_path(path, "power")));
  std::string cpath = key_path(path, "coeffs");
  const Json &cs = array(field(j, "coeffs", path), cpath);
  std::vector<Rational> coeffs;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    try {
      if (cs[k].is_number_integer())
        coeffs.emplace_back(cs[k].get<long>());
      else if (cs[k].is_string())
        coeffs.push_back(parse_rational(cs[k].get<std::string>()));
      else
        throw InputError(index_path(cpath, k), "expected a rational");
    } catch (const InputError &) {
      throw;
    } catch (const std::exception &e) {
      throw InputError(index_path(cpath, k), e.what());
    }
  }
  return Cyclotomic::from_powers(order, coeffs);
}

YDModule parse_module(const Json &j, GroupPtr group, const std::string &path)
{
  if (!j.is_object())
    throw InputError(path, "expected a module object");
  if (auto it = j.find("group"); it != j.end())
    group = parse_group(*it, key_path(path, "group"));
  if (!group)
    throw InputError(key_path(path, "group"), "missing field");
  const FiniteGroup &g = *group;
  Perm base = parse_perm(field(j, "base", path), g.degree(), key_path(path, "base"));
  auto bi = g.find(base);
  if (!bi)
    throw InputError(key_path(path, "base"), base.str() + " is not in the group");

  std::string fpath = key_path(path, "fiber");
  const Json &fj = field(j, "fiber", path);
  const Json &kind = field(fj, "kind", fpath);
  if (!kind.is_string())
    throw InputError(key_path(fpath, "kind"), "expected a string");
  auto element = [&](const Json &e, const std::string &p) {
    Perm h = parse_perm(e, g.degree(), p);
    auto hi = g.find(h);
    if (!hi)
      throw InputError(p, h.str() + " is not in the group");
    return *hi;
  };

  Fiber fiber;
  if (kind == "character") {
    std::string vpath = key_path(fpath, "values");
    const Json &vals = array(field(fj, "values", fpath), vpath);
    std::vector<std::pair<std::size_t, Cyclotomic>> values;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      std::string p = index_path(vpath, k);
      values.emplace_back(element(field(vals[k], "element", p), key_path(p, "element")),
                          parse_cyclotomic(field(vals[k], "value", p), key_path(p, "value")));
    }
    fiber = Fiber::character(values);
  } else if (kind == "matrices") {
    fiber.dim = positive(field(fj, "dim", fpath), key_path(fpath, "dim"));
    unsigned order = 1;
    if (auto it = fj.find("order"); it != fj.end())
      order = static_cast<unsigned>(positive(*it, key_path(fpath, "order")));
    std::string ipath = key_path(fpath, "images");
    const Json &imgs = field(fj, "images", fpath);
    auto matrix = [&](const Json &m, const std::string &p) {
      array(m, p);
      if (m.size() != fiber.dim)
        throw InputError(p, "expected " + std::to_string(fiber.dim) + " rows");
      ExactMatrix out(fiber.dim, fiber.dim);
      for (std::size_t r = 0; r < fiber.dim; ++r) {
        std::string rp = index_path(p, r);
        array(m[r], rp);
        if (m[r].size() != fiber.dim)
          throw InputError(rp, "expected " + std::to_string(fiber.dim) + " entries");
        for (std::size_t c = 0; c < fiber.dim; ++c) {
          Cyclotomic x = parse_cyclotomic(m[r][c], index_path(rp, c), order);
          if (!x.is_zero())
            out.set(r, c, x);
        }
      }
      return out;
    };
    if (imgs.is_object()) {
      for (auto it = imgs.begin(); it != imgs.end(); ++it) {
        std::string p = key_path(ipath, it.key());
        fiber.images.emplace_back(element(Json(it.key()), p), matrix(it.value(), p));
      }
    } else {
      array(imgs, ipath);
      for (std::size_t k = 0; k < imgs.size(); ++k) {
        std::string p = index_path(ipath, k);
        fiber.images.emplace_back(element(field(imgs[k], "element", p), key_path(p, "element")),
                                  matrix(field(imgs[k], "matrix", p), key_path(p, "matrix")));
      }
    }
  } else {
    throw InputError(key_path(fpath, "kind"), "expected \"character\" or \"matrices\"");
  }
  try {
    return induce(group, *bi, fiber);
  } catch (const std::invalid_argument &e) {
    throw InputError(fpath, e.what());
  }
}

YDTuple parse_tuple(const Json &j, const std::string &path)
{
  if (!j.is_object())
    throw InputError(path, "expected a tuple object");
  if (auto it = j.find("diagonal"); it != j.end()) {
    std::string dpath = key_path(path, "diagonal");
    unsigned order = static_cast<unsigned>(positive(field(*it, "order", dpath), key_path(dpath, "order")));
    std::string qpath = key_path(dpath, "q");
    const Json &q = array(field(*it, "q", dpath), qpath);
    if (q.empty())
      throw InputError(qpath, "expected a nonempty square matrix");
    std::vector<std::vector<long>> powers;
    for (std::size_t r = 0; r < q.size(); ++r) {
      std::string rp = index_path(qpath, r);
      array(q[r], rp);
      if (q[r].size() != q.size())
        throw InputError(rp, "expected " + std::to_string(q.size()) + " entries");
      std::vector<long> row;
      for (std::size_t c = 0; c < q[r].size(); ++c)
        row.push_back(integer(q[r][c], index_path(rp, c)));
      powers.push_back(std::move(row));
    }
    return diagonal_tuple(order, powers);
  }
  GroupPtr group = parse_group(field(j, "group", path), key_path(path, "group"));
  std::string mpath = key_path(path, "modules");
  const Json &mods = array(field(j, "modules", path), mpath);
  if (mods.empty())
    throw InputError(mpath, "expected at least one module");
  YDTuple t;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    std::string p = index_path(mpath, k);
    if (mods[k].contains("group"))
      throw InputError(key_path(p, "group"), "modules of a tuple take the tuple's group");
    YDModule m = parse_module(mods[k], group, p);
    if (!is_irreducible(m))
      throw InputError(key_path(p, "fiber"), "module is not irreducible");
    t.modules.push_back(std::move(m));
  }
  return t;
}

CartanScheme parse_scheme(const Json &j, const std::string &path)
{
  CartanScheme c;
  c.rank = positive(field(j, "rank", path), key_path(path, "rank"));
  std::string opath = key_path(path, "objects");
  const Json &objs = array(field(j, "objects", path), opath);
  if (objs.empty())
    throw InputError(opath, "expected at least one object");
  for (std::size_t k = 0; k < objs.size(); ++k) {
    std::string p = index_path(opath, k);
    const Json &id = field(objs[k], "id", p);
    if (!id.is_string())
      throw InputError(key_path(p, "id"), "expected a string");
    if (c.find(id.get<std::string>()))
      throw InputError(key_path(p, "id"), "duplicate object id");
    std::string cp = key_path(p, "cartan");
    const Json &a = array(field(objs[k], "cartan", p), cp);
    if (a.size() != c.rank)
      throw InputError(cp, "expected " + std::to_string(c.rank) + " rows");
    IntMatrix m;
    for (std::size_t r = 0; r < a.size(); ++r) {
      std::string rp = index_path(cp, r);
      array(a[r], rp);
      if (a[r].size() != c.rank)
        throw InputError(rp, "expected " + std::to_string(c.rank) + " entries");
      IntVector row;
      for (std::size_t s = 0; s < a[r].size(); ++s)
        row.push_back(integer(a[r][s], index_path(rp, s)));
      m.push_back(std::move(row));
    }
    c.ids.push_back(id.get<std::string>());
    c.cartan.push_back(std::move(m));
  }
  c.reflections.assign(c.size(), std::vector<std::size_t>(c.rank));
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t i = 0; i < c.rank; ++i)
      c.reflections[k][i] = k;
  if (auto it = j.find("reflections"); it != j.end()) {
    std::string rpath = key_path(path, "reflections");
    if (!it->is_object())
      throw InputError(rpath, "expected an object");
    for (auto ot = it->begin(); ot != it->end(); ++ot) {
      std::string p = key_path(rpath, ot.key());
      auto src = c.find(ot.key());
      if (!src)
        throw InputError(p, "unknown object");
      if (!ot->is_object())
        throw InputError(p, "expected an object");
      for (auto rt = ot->begin(); rt != ot->end(); ++rt) {
        std::string ip = key_path(p, rt.key());
        long i = integer(Json(rt.key()), ip);
        if (i < 1 || static_cast<std::size_t>(i) > c.rank)
          throw InputError(ip, "index out of range 1.." + std::to_string(c.rank));
        if (!rt->is_string())
          throw InputError(ip, "expected an object id");
        auto dst = c.find(rt->get<std::string>());
        if (!dst)
          throw InputError(ip, "unknown object " + rt->get<std::string>());
        c.reflections[*src][static_cast<std::size_t>(i - 1)] = *dst;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Output

Json cyclotomic_json(const Cyclotomic &x)
{
  Json coeffs = Json::array();
  for (const auto &c : x.coeffs())
    coeffs.push_back(rational_string(c));
  return Json{{"order", x.order()}, {"coeffs", coeffs}};
}

Json matrix_json(const IntMatrix &a)
{
  Json out = Json::array();
  for (const auto &row : a)
    out.push_back(row);
  return out;
}

Json group_json(const FiniteGroup &g)
{
  Json gens = Json::array();
  for (const auto &p : g.generators())
    gens.push_back(p.images());
  Json out;
  if (!g.name().empty())
    out["name"] = g.name();
  out["degree"] = g.degree();
  out["generators"] = gens;
  return out;
}

Json module_json(const YDModule &v)
{
  const FiniteGroup &g = *v.group();
  std::size_t base = v.base_point();
  auto comp = v.component(base);
  Json fiber;
  auto gens = centralizer_generators(g, base);
  auto entry = [&](std::size_t h, std::size_t r, std::size_t c) { return v.action(h).at(comp[r], comp[c]); };
  if (comp.size() == 1) {
    Json values = Json::array();
    for (std::size_t h : gens)
      values.push_back(Json{{"element", g.element(h).str()}, {"value", cyclotomic_json(entry(h, 0, 0))}});
    fiber = Json{{"kind", "character"}, {"values", values}};
  } else {
    Json images = Json::array();
    for (std::size_t h : gens) {
      Json m = Json::array();
      for (std::size_t r = 0; r < comp.size(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < comp.size(); ++c)
          row.push_back(cyclotomic_json(entry(h, r, c)));
        m.push_back(row);
      }
      images.push_back(Json{{"element", g.element(h).str()}, {"matrix", m}});
    }
    fiber = Json{{"kind", "matrices"}, {"dim", comp.size()}, {"images", images}};
  }
  return Json{{"base", g.element(base).str()}, {"fiber", fiber}};
}

Json tuple_json(const YDTuple &t)
{
  Json mods = Json::array();
  for (const auto &m : t.modules)
    mods.push_back(module_json(m));
  return Json{{"group", group_json(*t.group())}, {"modules", mods}};
}

Json scheme_json(const CartanScheme &c)
{
  Json objs = Json::array();
  for (std::size_t k = 0; k < c.size(); ++k)
    objs.push_back(Json{{"id", c.ids[k]}, {"cartan", matrix_json(c.cartan[k])}});
  Json refl = Json::object();
  for (std::size_t k = 0; k < c.size(); ++k) {
    Json r = Json::object();
    for (std::size_t i = 0; i < c.rank; ++i)
      r[std::to_string(i + 1)] = c.ids[c.reflections[k][i]];
    refl[c.ids[k]] = r;
  }
  return Json{{"rank", c.rank}, {"objects", objs}, {"reflections", refl}};
}

namespace {

std::string dot_graph(const std::vector<std::string> &ids, const std::vector<std::string> &labels,
                      const std::vector<std::vector<std::optional<std::size_t>>> &refl, const std::string &warning)
{
  std::ostringstream out;
  out << "graph weyl_groupoid {\n";
  if (!warning.empty())
    out << "  // warning: " << warning << "\n";
  if (ids.empty()) {
    out << "}\n";
    return out.str();
  }
  out << "  node [shape=box];\n";
  for (std::size_t k = 0; k < ids.size(); ++k)
    out << "  \"" << dot_escape(ids[k]) << "\" [label=\"" << dot_escape(ids[k]) << "\\n" << dot_escape(labels[k])
        << "\"];\n";
  for (std::size_t k = 0; k < refl.size(); ++k)
    for (std::size_t i = 0; i < refl[k].size(); ++i) {
      if (!refl[k][i])
        continue;
      std::size_t t = *refl[k][i];
      // the partner edge r_i(t) = k is drawn from the smaller end
      if (t < k && t < refl.size() && refl[t].size() > i && refl[t][i] == k)
        continue;
      out << "  \"" << dot_escape(ids[k]) << "\" -- \"" << dot_escape(ids[t]) << "\" [label=\"s" << i + 1 << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

} // namespace

std::string export_dot(const CartanScheme &c)
{
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<std::size_t>>> refl;
  for (std::size_t k = 0; k < c.size(); ++k) {
    labels.push_back(matrix_string(c.cartan[k]));
    refl.emplace_back(c.reflections[k].begin(), c.reflections[k].end());
  }
  return dot_graph(c.ids, labels, refl, c.size() == 0 ? "empty scheme" : "");
}

std::string export_dot(const SchemeBuildResult &b)
{
  std::vector<std::string> ids, labels;
  for (std::size_t k = 0; k < b.cartan.size(); ++k) {
    ids.push_back("N" + std::to_string(k));
    std::string s = "[";
    const auto &e = b.cartan[k].entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < e[i].size(); ++j)
        s += (j ? "," : "") + (e[i][j] ? std::to_string(*e[i][j]) : std::string("?"));
      s += "]";
    }
    labels.push_back(s + "]");
  }
  std::string warning;
  if (ids.empty())
    warning = "no objects were built";
  else if (!b.complete)
    warning = "partial build";
  return dot_graph(ids, labels, b.reflections, warning);
}

} // namespace nichols

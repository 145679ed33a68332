#pragma once

// JSON input schemas, JSON output and DOT export.

#include "nichols/cartan.hpp"
#include "nichols/finitegroup.hpp"
#include "nichols/nicholsengine.hpp"
#include "nichols/weylgroupoid.hpp"
#include "nichols/ydmodule.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace nichols {

using Json = nlohmann::ordered_json;

/// Malformed input; path() points at the offending value, e.g. "$.modules[1].base".
class InputError : public std::runtime_error
{
public:
  InputError(std::string path, const std::string &message)
      : std::runtime_error(path + ": " + message), path_(std::move(path))
  {
  }
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

Json load_json_file(const std::string &file);

/// Built-in name ("S3", "A5", ...) or {"degree": n, "generators": [[0-based images]]}.
GroupPtr parse_group(const Json &j, const std::string &path = "$");
/// Cycle string "(12)(34)" or an array of 0-based images.
Perm parse_perm(const Json &j, std::size_t degree, const std::string &path);
/// Integer, "p/q", {"order": N, "power": k} or {"order": N, "coeffs": ["p/q", ...]}.
Cyclotomic parse_cyclotomic(const Json &j, const std::string &path, unsigned default_order = 1);
/// Module JSON; "group" may be omitted when the group is given.
YDModule parse_module(const Json &j, GroupPtr group, const std::string &path = "$");
/// {"group": ..., "modules": [...]} or {"diagonal": {"order": N, "q": [[powers]]}}.
YDTuple parse_tuple(const Json &j, const std::string &path = "$");
/// {"rank", "objects": [{"id", "cartan"}], "reflections": {"<id>": {"<i>": "<id>"}}}.
/// A missing reflection entry means r_i(N) = N.
CartanScheme parse_scheme(const Json &j, const std::string &path = "$");

Json cyclotomic_json(const Cyclotomic &x);
Json matrix_json(const IntMatrix &a);
Json group_json(const FiniteGroup &g);
/// Base point and the fiber over it, re-parsable by parse_module.
Json module_json(const YDModule &v);
Json tuple_json(const YDTuple &t);
Json scheme_json(const CartanScheme &c);

/// Objects as nodes labeled with their Cartan matrices, one undirected edge
/// per reflection pair, self-loops for r_i(N) = N.
std::string export_dot(const CartanScheme &c);
std::string export_dot(const SchemeBuildResult &b);

} // namespace nichols

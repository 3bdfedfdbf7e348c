#include "rmmcop/specdoc.hpp"

#include <json.hpp>

#include "rmmcop/transforms.hpp"

namespace rmmcop {

namespace {

using nlohmann::json;

double need_number(const json& node, const std::string& key,
                   const std::string& path) {
  if (!node.contains(key))
    throw SpecError("missing field '" + key + "'", path);
  if (!node[key].is_number())
    throw SpecError("field '" + key + "' must be a number", path + "/" + key);
  return node[key].get<double>();
}

int need_int(const json& node, const std::string& key,
             const std::string& path) {
  if (!node.contains(key))
    throw SpecError("missing field '" + key + "'", path);
  if (!node[key].is_number_integer())
    throw SpecError("field '" + key + "' must be an integer",
                    path + "/" + key);
  return node[key].get<int>();
}

Generator parse_generator(const json& node, const std::string& path) {
  if (!node.is_object() || !node.contains("family"))
    throw SpecError("generator node must be an object with a 'family'", path);
  const std::string family = node["family"].get<std::string>();
  try {
    if (family == "power") return Generator::power(need_number(node, "a", path));
    if (family == "scaled_complement")
      return Generator::scaled_complement(need_number(node, "c", path));
    if (family == "quadratic")
      return Generator::quadratic(need_number(node, "c", path));
    if (family == "tent") return Generator::tent();
    if (family == "trunc_linear")
      return Generator::trunc_linear(need_number(node, "c", path),
                                     need_number(node, "s", path));
    if (family == "zero") return Generator::zero();
    if (family == "tabulated") {
      if (!node.contains("knots") || !node["knots"].is_array())
        throw SpecError("tabulated generator needs a 'knots' array",
                        path + "/knots");
      std::vector<std::array<double, 2>> knots;
      for (const auto& k : node["knots"]) {
        if (!k.is_array() || k.size() != 2)
          throw SpecError("knots must be [x,y] pairs", path + "/knots");
        knots.push_back({k[0].get<double>(), k[1].get<double>()});
      }
      return Generator::tabulated(std::move(knots));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(e.what(), path);
  }
  throw SpecError("unknown generator family '" + family + "'",
                  path + "/family");
}

std::vector<Generator> parse_generator_list(const json& node,
                                            const std::string& path) {
  if (!node.is_array() || node.empty())
    throw SpecError("'generators' must be a nonempty array", path);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < node.size(); ++i)
    gens.push_back(
        parse_generator(node[i], path + "/" + std::to_string(i)));
  return gens;
}

ParsedCopula parse_node(const json& node, const std::string& path);

ParsedCopula wrap_bivariate(BivariateCopula c) {
  ParsedCopula out;
  out.dim = 2;
  out.label = c.label();
  out.bivariate = std::move(c);
  return out;
}

ParsedCopula wrap_ncopula(NCopula c) {
  ParsedCopula out;
  out.dim = c.dim();
  out.label = c.label();
  out.ncopula = std::move(c);
  return out;
}

ParsedCopula parse_base_name(const std::string& name, const std::string& path,
                             const json* params) {
  try {
    if (name == "pi") return wrap_bivariate(independence());
    if (name == "m") return wrap_bivariate(comonotone());
    if (name == "w") return wrap_bivariate(countermonotone());
    if (name == "efgm") {
      if (!params) throw SpecError("efgm needs a 'theta' field", path);
      return wrap_bivariate(efgm(need_number(*params, "theta", path)));
    }
    if (name == "clayton") {
      if (!params) throw SpecError("clayton needs a 'theta' field", path);
      return wrap_bivariate(clayton(need_number(*params, "theta", path)));
    }
    // pi<k>, m<k> for k >= 3
    if ((name.rfind("pi", 0) == 0 || name.rfind("m", 0) == 0)) {
      const std::size_t digits = name.rfind("pi", 0) == 0 ? 2 : 1;
      const std::string tail = name.substr(digits);
      if (!tail.empty() &&
          tail.find_first_not_of("0123456789") == std::string::npos) {
        const int dim = std::stoi(tail);
        if (dim < 2) throw SpecError("dimension must be >= 2", path);
        if (dim == 2)
          return wrap_bivariate(digits == 2 ? independence() : comonotone());
        return wrap_ncopula(digits == 2 ? independence_n(dim)
                                        : comonotone_n(dim));
      }
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(e.what(), path + "/theta");
  }
  throw SpecError("unknown base copula '" + name + "'", path);
}

NCopula as_ncopula(const ParsedCopula& p) {
  if (p.ncopula) return *p.ncopula;
  return from_bivariate(*p.bivariate);
}

ParsedCopula parse_transform(const json& node, const std::string& path) {
  const std::string kind = node["transform"].get<std::string>();
  const std::string base_path = path + "/base";
  if (!node.contains("base"))
    throw SpecError("transform '" + kind + "' needs a 'base' node", path);

  if (kind == "rmm" || kind == "rmm_iter" || kind == "rmm_limit") {
    const ParsedCopula base = parse_node(node["base"], base_path);
    if (!base.bivariate)
      throw SpecError("'" + kind + "' needs a bivariate base", base_path);
    const Generator f = parse_generator(node.contains("f") ? node["f"] : json(),
                                        path + "/f");
    const Generator g = parse_generator(node.contains("g") ? node["g"] : json(),
                                        path + "/g");
    try {
      BivariateCopula out = [&] {
        if (kind == "rmm") return rmm(*base.bivariate, f, g);
        if (kind == "rmm_iter")
          return rmm_iter(*base.bivariate, f, g, need_int(node, "n", path));
        const double tol =
            node.contains("tol") ? need_number(node, "tol", path) : 1e-9;
        return rmm_limit(*base.bivariate, f, g, tol);
      }();
      ParsedCopula parsed = wrap_bivariate(std::move(out));
      parsed.rmm_parts = RmmParts{*base.bivariate, f, g};
      return parsed;
    } catch (const std::exception& e) {
      throw SpecError(e.what(), path);
    }
  }

  if (kind == "mm" || kind == "mm_iter" || kind == "mm_limit") {
    const ParsedCopula base = parse_node(node["base"], base_path);
    if (!base.bivariate)
      throw SpecError("'" + kind + "' needs a bivariate base", base_path);
    const MMGenerator phi = MMGenerator::f1(parse_generator(
        node.contains("phi") ? node["phi"] : json(), path + "/phi"));
    const MMGenerator psi = MMGenerator::f2(parse_generator(
        node.contains("psi") ? node["psi"] : json(), path + "/psi"));
    try {
      if (kind == "mm") return wrap_bivariate(mm(*base.bivariate, phi, psi));
      if (kind == "mm_iter")
        return wrap_bivariate(
            mm_iter(*base.bivariate, phi, psi, need_int(node, "n", path)));
      const double tol =
          node.contains("tol") ? need_number(node, "tol", path) : 1e-9;
      return wrap_bivariate(mm_limit(*base.bivariate, phi, psi, tol));
    } catch (const std::exception& e) {
      throw SpecError(e.what(), path);
    }
  }

  if (kind == "rmm_n" || kind == "mm_n") {
    const ParsedCopula base = parse_node(node["base"], base_path);
    const NCopula base_n = as_ncopula(base);
    const int n = base_n.dim();
    if (node.contains("dim") && need_int(node, "dim", path) != n)
      throw SpecError("'dim' disagrees with the base dimension",
                      path + "/dim");
    const int p = need_int(node, "p", path);
    if (p < 1 || p > n - 1)
      throw SpecError("p must be >= 1 and <= n-1", path + "/p");
    const std::vector<Generator> gens =
        parse_generator_list(node.contains("generators") ? node["generators"]
                                                         : json(),
                             path + "/generators");
    if (int(gens.size()) != n)
      throw SpecError("need one generator per coordinate",
                      path + "/generators");
    try {
      if (kind == "rmm_n") return wrap_ncopula(rmm_n(base_n, gens, p));
      std::vector<MMGenerator> mm_gens;
      for (int i = 0; i < n; ++i)
        mm_gens.push_back(i < p ? MMGenerator::f1(gens[i])
                                : MMGenerator::f2(gens[i]));
      return wrap_ncopula(mm_n(base_n, mm_gens, p));
    } catch (const std::exception& e) {
      throw SpecError(e.what(), path);
    }
  }

  throw SpecError("unknown transform '" + kind + "'", path + "/transform");
}

ParsedCopula parse_node(const json& node, const std::string& path) {
  if (node.is_string())
    return parse_base_name(node.get<std::string>(), path, nullptr);
  if (!node.is_object())
    throw SpecError("copula node must be a string or an object", path);

  if (node.contains("transform")) return parse_transform(node, path);

  if (node.contains("flip")) {
    if (!node.contains("base"))
      throw SpecError("flip needs a 'base' node", path);
    const ParsedCopula base = parse_node(node["base"], path + "/base");
    const json& idx_node = node["flip"];
    if (!idx_node.is_array() || idx_node.empty())
      throw SpecError("'flip' must be a nonempty array of 1-based indices",
                      path + "/flip");
    std::vector<int> idx;
    for (const auto& i : idx_node) {
      if (!i.is_number_integer())
        throw SpecError("flip indices must be integers", path + "/flip");
      idx.push_back(i.get<int>() - 1);  // document uses 1-based coordinates
    }
    try {
      if (base.bivariate && idx.size() == 1 && (idx[0] == 0 || idx[0] == 1))
        return wrap_bivariate(idx[0] == 0 ? flip_first(*base.bivariate)
                                          : flip_second(*base.bivariate));
      return wrap_ncopula(flip_vars(as_ncopula(base), idx));
    } catch (const std::exception& e) {
      throw SpecError(e.what(), path + "/flip");
    }
  }

  if (node.contains("base")) {
    const json& b = node["base"];
    if (b.is_string())
      return parse_base_name(b.get<std::string>(), path + "/base", &node);
    if (b.is_object() && b.contains("family"))
      return parse_base_name(b["family"].get<std::string>(), path + "/base",
                             &b);
    return parse_node(b, path + "/base");
  }

  if (node.contains("family"))
    return parse_base_name(node["family"].get<std::string>(), path, &node);

  throw SpecError("expected 'base', 'family', 'transform' or 'flip'", path);
}

}  // namespace

double ParsedCopula::eval(std::span<const double> point) const {
  if (int(point.size()) != dim)
    throw std::invalid_argument("eval: expected " + std::to_string(dim) +
                                " coordinates");
  if (bivariate) return (*bivariate)(point[0], point[1]);
  return (*ncopula)(point);
}

ParsedCopula parse_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what(), "");
  }
  return parse_node(doc, "");
}

}  // namespace rmmcop

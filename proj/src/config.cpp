#include "antiplane/config.hpp"

#include <fstream>
#include <set>

namespace antiplane {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
  return j.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

template <class T>
void optional_field(const json& j, const std::string& key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  const std::string what = where + "." + key;
  if constexpr (std::is_same_v<T, double>) {
    out = number(v, what);
  } else if constexpr (std::is_same_v<T, int>) {
    out = integer(v, what);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(what + " must be a boolean");
    out = v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!v.is_number_unsigned()) throw ConfigError(what + " must be a non-negative integer");
    out = v.get<std::uint64_t>();
  } else if constexpr (std::is_same_v<T, std::size_t>) {
    if (!v.is_number_unsigned()) throw ConfigError(what + " must be a non-negative integer");
    out = v.get<std::size_t>();
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
    out.clear();
    for (const auto& x : v) out.push_back(number(x, what));
  } else {
    static_assert(sizeof(T) == 0, "unsupported config field type");
  }
}

const std::map<std::string, std::vector<std::string>>& family_params() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"neo_hookean", {"mu"}},
      {"mooney_rivlin", {"c1", "c2"}},
      {"generalized_neo_hookean", {"mu", "n"}},
      {"double_well_shear", {"a", "gstar"}},
  };
  return table;
}

const char* kind_name(NodeKind k) { return k == NodeKind::Traction ? "traction" : "dirichlet"; }

BoundarySpec parse_edge(const json& j, const std::string& where) {
  reject_unknown(j, where, {"kind", "expr"});
  BoundarySpec b;
  const json& kind = require(j, "kind", where);
  if (kind == "dirichlet") {
    b.kind = NodeKind::Dirichlet;
  } else if (kind == "traction") {
    b.kind = NodeKind::Traction;
  } else {
    throw ConfigError(where + ".kind must be \"dirichlet\" or \"traction\"");
  }
  const json& expr = require(j, "expr", where);
  if (!expr.is_string()) throw ConfigError(where + ".expr must be a string");
  b.expr = expr.get<std::string>();
  try {
    Expression::parse(b.expr);
  } catch (const ExpressionError& e) {
    throw ConfigError(where + ".expr: " + e.what());
  }
  return b;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  reject_unknown(j, "config",
                 {"model", "domain", "solver", "analysis", "adjudicator", "exact_solution", "load_scales", "output"});
  ExperimentConfig cfg;

  const json& model = require(j, "model", "config");
  reject_unknown(model, "model", {"family", "params"});
  const json& family = require(model, "family", "model");
  if (!family.is_string()) throw ConfigError("model.family must be a string");
  cfg.model.family = family.get<std::string>();
  const auto table = family_params().find(cfg.model.family);
  if (table == family_params().end()) throw ConfigError("unknown model family '" + cfg.model.family + "'");
  const json& params = require(model, "params", "model");
  reject_unknown(params, "model.params", {table->second.begin(), table->second.end()});
  for (const auto& name : table->second) {
    cfg.model.params[name] = number(require(params, name, "model.params"), "model.params." + name);
  }
  try {
    make_model(cfg.model);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }

  if (j.contains("domain")) {
    const json& dj = j.at("domain");
    reject_unknown(dj, "domain", {"nx", "ny", "h", "boundary"});
    DomainConfig d;
    d.nx = integer(require(dj, "nx", "domain"), "domain.nx");
    d.ny = integer(require(dj, "ny", "domain"), "domain.ny");
    d.h = number(require(dj, "h", "domain"), "domain.h");
    const json& bj = require(dj, "boundary", "domain");
    reject_unknown(bj, "domain.boundary", {"left", "right", "bottom", "top"});
    d.left = parse_edge(require(bj, "left", "domain.boundary"), "domain.boundary.left");
    d.right = parse_edge(require(bj, "right", "domain.boundary"), "domain.boundary.right");
    d.bottom = parse_edge(require(bj, "bottom", "domain.boundary"), "domain.boundary.bottom");
    d.top = parse_edge(require(bj, "top", "domain.boundary"), "domain.boundary.top");
    try {
      make_domain(d);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
    cfg.domain = d;
  }

  if (j.contains("solver")) {
    const json& sj = j.at("solver");
    reject_unknown(sj, "solver",
                   {"grad_tol", "max_iters", "armijo_c", "backtrack", "restarts", "seed", "newton_polish",
                    "history_cap"});
    optional_field(sj, "grad_tol", cfg.solver.grad_tol, "solver");
    optional_field(sj, "max_iters", cfg.solver.max_iters, "solver");
    optional_field(sj, "armijo_c", cfg.solver.armijo_c, "solver");
    optional_field(sj, "backtrack", cfg.solver.backtrack, "solver");
    optional_field(sj, "restarts", cfg.solver.restarts, "solver");
    optional_field(sj, "seed", cfg.solver.seed, "solver");
    optional_field(sj, "newton_polish", cfg.solver.newton_polish, "solver");
    optional_field(sj, "history_cap", cfg.solver.history_cap, "solver");
    try {
      cfg.solver.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("solver: ") + e.what());
    }
  }

  if (j.contains("analysis")) {
    const json& aj = j.at("analysis");
    reject_unknown(aj, "analysis", {"gamma_max", "n_points", "knowles_tol"});
    optional_field(aj, "gamma_max", cfg.analysis.gamma_max, "analysis");
    optional_field(aj, "n_points", cfg.analysis.n_points, "analysis");
    optional_field(aj, "knowles_tol", cfg.analysis.knowles_tol, "analysis");
    if (!(cfg.analysis.gamma_max > 0.0) || cfg.analysis.n_points < 2 || !(cfg.analysis.knowles_tol > 0.0))
      throw ConfigError("analysis: need gamma_max > 0, n_points >= 2, knowles_tol > 0");
  }

  if (j.contains("adjudicator")) {
    const json& aj = j.at("adjudicator");
    reject_unknown(aj, "adjudicator", {"c", "c_values", "refinement"});
    optional_field(aj, "c", cfg.adjudicator.c, "adjudicator");
    optional_field(aj, "c_values", cfg.adjudicator.c_values, "adjudicator");
    optional_field(aj, "refinement", cfg.adjudicator.refinement, "adjudicator");
  }

  if (j.contains("exact_solution")) {
    const json& e = j.at("exact_solution");
    if (!e.is_string()) throw ConfigError("exact_solution must be a string");
    try {
      Expression::parse(e.get<std::string>());
    } catch (const ExpressionError& err) {
      throw ConfigError(std::string("exact_solution: ") + err.what());
    }
    cfg.exact_solution = e.get<std::string>();
  }

  optional_field(j, "load_scales", cfg.load_scales, "config");

  if (j.contains("output")) {
    const json& oj = j.at("output");
    reject_unknown(oj, "output", {"dir"});
    if (oj.contains("dir")) {
      if (!oj.at("dir").is_string()) throw ConfigError("output.dir must be a string");
      cfg.output_dir = oj.at("dir").get<std::string>();
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"]["family"] = cfg.model.family;
  j["model"]["params"] = json::object();
  for (const auto& [k, v] : cfg.model.params) j["model"]["params"][k] = v;
  if (cfg.domain) {
    const auto& d = *cfg.domain;
    j["domain"] = {{"nx", d.nx}, {"ny", d.ny}, {"h", d.h}};
    auto edge = [](const BoundarySpec& b) { return json{{"kind", kind_name(b.kind)}, {"expr", b.expr}}; };
    j["domain"]["boundary"] = {
        {"left", edge(d.left)}, {"right", edge(d.right)}, {"bottom", edge(d.bottom)}, {"top", edge(d.top)}};
  }
  const auto& s = cfg.solver;
  j["solver"] = {{"grad_tol", s.grad_tol}, {"max_iters", s.max_iters},         {"armijo_c", s.armijo_c},
                 {"backtrack", s.backtrack}, {"restarts", s.restarts},         {"seed", s.seed},
                 {"newton_polish", s.newton_polish}, {"history_cap", s.history_cap}};
  j["analysis"] = {{"gamma_max", cfg.analysis.gamma_max},
                   {"n_points", cfg.analysis.n_points},
                   {"knowles_tol", cfg.analysis.knowles_tol}};
  j["adjudicator"] = {{"c", cfg.adjudicator.c},
                      {"c_values", cfg.adjudicator.c_values},
                      {"refinement", cfg.adjudicator.refinement}};
  if (cfg.exact_solution) j["exact_solution"] = *cfg.exact_solution;
  if (!cfg.load_scales.empty()) j["load_scales"] = cfg.load_scales;
  j["output"] = {{"dir", cfg.output_dir}};
  return j;
}

MaterialModel make_model(const ModelSpec& spec) {
  const auto& p = spec.params;
  auto get = [&](const char* name) {
    const auto it = p.find(name);
    if (it == p.end()) throw ConfigError(std::string("missing model parameter '") + name + "'");
    return it->second;
  };
  if (spec.family == "neo_hookean") return MaterialModel(NeoHookean{get("mu")});
  if (spec.family == "mooney_rivlin") return MaterialModel(MooneyRivlin{get("c1"), get("c2")});
  if (spec.family == "generalized_neo_hookean") return MaterialModel(GeneralizedNeoHookean{get("mu"), get("n")});
  if (spec.family == "double_well_shear") return MaterialModel(DoubleWellShear{get("a"), get("gstar")});
  throw ConfigError("unknown model family '" + spec.family + "'");
}

Domain make_domain(const DomainConfig& cfg) { return make_domain(cfg, GridShape{cfg.nx, cfg.ny, cfg.h}); }

Domain make_domain(const DomainConfig& cfg, const GridShape& shape) {
  auto edge = [](const BoundarySpec& b) {
    const auto e = Expression::parse(b.expr);
    return EdgeCondition{b.kind, [e](double x1, double x2) { return e(x1, x2); }};
  };
  return make_rectangle(shape.nx, shape.ny, shape.h,
                        EdgeSpec{edge(cfg.left), edge(cfg.right), edge(cfg.bottom), edge(cfg.top)});
}

}  // namespace antiplane

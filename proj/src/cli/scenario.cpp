#include "shiftstab/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "shiftstab/error.hpp"

namespace shiftstab {

namespace {

enum class ParamType { number, integer, boolean, string, number_or_list, number_list, integer_list, interval,
                       interval_list, complex_list, pair_list, grid, test };

struct ParamSpec {
  ParamType type;
  bool required = false;
};

enum Needs : unsigned { kGen = 1, kSet = 2, kComb = 4 };

struct OpSpec {
  unsigned needs = 0;
  std::map<std::string, ParamSpec> params;
};

const std::map<std::string, OpSpec>& op_table() {
  using P = ParamType;
  static const std::map<std::string, OpSpec> table{
      {"eval_time", {kGen, {{"x", {P::number_or_list, true}}}}},
      {"eval_freq", {kGen, {{"t", {P::number_or_list, true}}}}},
      {"wiener_norm", {kGen, {{"mode", {P::string, true}}, {"cells", {P::integer}}, {"probes", {P::integer}}}}},
      {"autocorrelation", {kGen, {{"x", {P::number_or_list, true}}}}},
      {"freq_zero_set",
       {kGen, {{"window", {P::interval, true}}, {"step", {P::number}}, {"tolerance", {P::number}}, {"cap", {P::integer}}}}},
      {"level_set", {kGen, {{"r", {P::number, true}}, {"window", {P::interval, true}}, {"step", {P::number}}}}},
      {"enumerate", {kSet, {{"window", {P::interval, true}}}}},
      {"separation_constant", {kSet, {{"window", {P::interval, true}}}}},
      {"beurling_densities",
       {kSet, {{"radii", {P::number_list, true}}, {"probes", {P::integer}}, {"center", {P::number}}}}},
      {"translate_set", {kSet, {{"x", {P::number, true}}}}},
      {"weak_limit_params", {kSet, {{"s", {P::number, true}}, {"k_max", {P::integer}}, {"torus_grid", {P::integer}}}}},
      {"periodization", {kGen, {{"alpha", {P::number}}, {"grid_points", {P::integer}}, {"cells", {P::integer}}}}},
      {"integer_shift_verdict", {kGen, {{"b_grid", {P::integer}}, {"k", {P::integer}}, {"tolerance", {P::number}}}}},
      {"gramian_section", {kGen | kSet, {{"window", {P::interval, true}}}}},
      {"l2_stability_estimate", {kGen | kSet, {{"sizes", {P::integer_list}}, {"windows", {P::interval_list}}}}},
      {"synthesize",
       {kGen | kSet,
        {{"window", {P::interval, true}}, {"coefficients", {P::complex_list, true}}, {"grid", {P::grid, true}}}}},
      {"l2_norm_consistency",
       {kGen | kSet,
        {{"window", {P::interval, true}},
         {"coefficients", {P::complex_list}},
         {"random_draws", {P::integer}},
         {"domain", {P::interval, true}},
         {"limit", {P::number}}}}},
      {"linf_stability_search",
       {kGen | kSet, {{"window", {P::interval, true}}, {"budget", {P::integer}}, {"grid_step", {P::number}}}}},
      {"progression_union_upper_check", {kGen, {{"progressions", {P::pair_list, true}}}}},
      {"exponential_gram", {kSet, {{"spectrum", {P::interval_list, true}}, {"window", {P::interval, true}}}}},
      {"interpolation_verdict_interval",
       {kSet, {{"interval", {P::interval, true}}, {"margin", {P::number}}, {"radii", {P::number_list}}, {"probes", {P::integer}}}}},
      {"interpolation_lower_bound",
       {kSet, {{"spectrum", {P::interval_list, true}}, {"sizes", {P::integer_list}}, {"windows", {P::interval_list}}}}},
      {"stability_r_scan",
       {kGen | kSet,
        {{"r_grid", {P::number_list}}, {"sizes", {P::integer_list}}, {"windows", {P::interval_list}}, {"level_step", {P::number}}}}},
      {"comb_fourier", {kComb, {}}},
      {"verify_poisson", {kComb, {{"test", {P::test}}, {"truncation", {P::integer}}}}},
      {"vanishing_combination_residual", {kGen | kComb, {{"truncation", {P::integer}}, {"probes", {P::grid}}}}},
      {"trig_zero_set", {0, {{"a", {P::number, true}}, {"b", {P::number, true}}, {"window", {P::interval, true}}}}},
      {"ap_intersection_diagnostic",
       {kSet, {{"window", {P::interval, true}}, {"alpha", {P::number, true}}, {"beta", {P::number}}, {"eps", {P::number}}}}},
  };
  return table;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const toml::source_region& where, const std::string& msg) const {
    std::ostringstream os;
    os << source_ << ":" << where.begin.line << ":" << where.begin.column << ": " << msg;
    throw Error(ErrorCode::config, os.str());
  }

  void only_keys(const toml::table& t, std::initializer_list<std::string_view> keys, const std::string& where) const {
    for (auto&& [k, v] : t) {
      if (std::find(keys.begin(), keys.end(), k.str()) == keys.end())
        fail(k.source(), "unknown key '" + std::string(k.str()) + "' in " + where);
    }
  }

  const toml::node& require(const toml::table& t, std::string_view key, const std::string& where) const {
    const toml::node* n = t.get(key);
    if (!n) fail(t.source(), "missing required key '" + std::string(key) + "' in " + where);
    return *n;
  }

  double number(const toml::node& n, const std::string& what) const {
    if (auto i = n.as_integer()) return static_cast<double>(i->get());
    if (auto f = n.as_floating_point()) return f->get();
    fail(n.source(), what + " must be a number");
  }

  double number_or(const toml::table& t, std::string_view key, double fallback) const {
    const toml::node* n = t.get(key);
    return n ? number(*n, std::string(key)) : fallback;
  }

  long long integer(const toml::node& n, const std::string& what) const {
    if (auto i = n.as_integer()) return i->get();
    fail(n.source(), what + " must be an integer");
  }

  std::string string(const toml::node& n, const std::string& what) const {
    if (auto s = n.as_string()) return s->get();
    fail(n.source(), what + " must be a string");
  }

  const toml::table& table(const toml::node& n, const std::string& what) const {
    if (auto t = n.as_table()) return *t;
    fail(n.source(), what + " must be a table");
  }

  const toml::array& array(const toml::node& n, const std::string& what) const {
    if (auto a = n.as_array()) return *a;
    fail(n.source(), what + " must be an array");
  }

  cplx complex(const toml::node& n, const std::string& what) const {
    if (n.is_number()) return {number(n, what), 0.0};
    const auto& a = array(n, what);
    if (a.size() != 2) fail(n.source(), what + " must be a number or [re, im]");
    return {number(*a.get(0), what), number(*a.get(1), what)};
  }

  Interval interval(const toml::node& n, const std::string& what) const {
    const auto& a = array(n, what);
    if (a.size() != 2) fail(n.source(), what + " must be [lo, hi]");
    const Interval iv{number(*a.get(0), what), number(*a.get(1), what)};
    if (!(iv.hi > iv.lo)) fail(n.source(), what + " must satisfy lo < hi");
    return iv;
  }

  void check_param(const toml::node& n, ParamType type, const std::string& key) const {
    switch (type) {
      case ParamType::number: number(n, key); break;
      case ParamType::integer: integer(n, key); break;
      case ParamType::boolean:
        if (!n.is_boolean()) fail(n.source(), key + " must be a boolean");
        break;
      case ParamType::string: string(n, key); break;
      case ParamType::number_or_list:
        if (n.is_array()) {
          for (auto&& e : array(n, key)) number(e, key);
        } else {
          number(n, key);
        }
        break;
      case ParamType::number_list:
        if (array(n, key).empty()) fail(n.source(), key + " must be nonempty");
        for (auto&& e : array(n, key)) number(e, key);
        break;
      case ParamType::integer_list:
        if (array(n, key).empty()) fail(n.source(), key + " must be nonempty");
        for (auto&& e : array(n, key)) integer(e, key);
        break;
      case ParamType::interval: interval(n, key); break;
      case ParamType::interval_list:
        if (array(n, key).empty()) fail(n.source(), key + " must be nonempty");
        for (auto&& e : array(n, key)) interval(e, key);
        break;
      case ParamType::complex_list:
        for (auto&& e : array(n, key)) complex(e, key);
        break;
      case ParamType::pair_list:
        if (array(n, key).empty()) fail(n.source(), key + " must be nonempty");
        for (auto&& e : array(n, key)) {
          const auto& p = array(e, key);
          if (p.size() != 2) fail(e.source(), key + " entries must be [alpha, beta]");
          number(*p.get(0), key);
          number(*p.get(1), key);
        }
        break;
      case ParamType::grid: {
        const auto& t = table(n, key);
        only_keys(t, {"from", "to", "step"}, key);
        const double from = number(require(t, "from", key), "from");
        const double to = number(require(t, "to", key), "to");
        const double step = number(require(t, "step", key), "step");
        if (!(to >= from) || !(step > 0.0)) fail(n.source(), key + " needs from <= to and step > 0");
        if ((to - from) / step > 5e7) fail(n.source(), key + " has too many points");
        break;
      }
      case ParamType::test: {
        const auto& t = table(n, key);
        only_keys(t, {"kind", "sigma", "center", "modulation"}, key);
        const auto kind = string(require(t, "kind", key), "kind");
        if (kind != "gaussian" && kind != "modulated_gaussian")
          fail(t.source(), "test kind must be 'gaussian' or 'modulated_gaussian'");
        for (auto k : {"sigma", "center", "modulation"})
          if (auto v = t.get(k)) number(*v, k);
        break;
      }
    }
  }

  Generator generator(const toml::table& t, const std::string& where) const {
    const std::string kind = string(require(t, "kind", where), "kind");
    auto guard = [&](auto&& make) {
      try {
        return make();
      } catch (const Error& e) {
        fail(t.source(), e.what());
      }
    };
    if (kind == "sinc") {
      only_keys(t, {"kind"}, where);
      return Generator::sinc();
    }
    if (kind == "sinc_power") {
      only_keys(t, {"kind", "n"}, where);
      const auto n = integer(require(t, "n", where), "n");
      return guard([&] { return Generator::sinc_power(static_cast<int>(n)); });
    }
    if (kind == "gaussian") {
      only_keys(t, {"kind", "sigma"}, where);
      const double s = number_or(t, "sigma", 1.0);
      return guard([&] { return Generator::gaussian(s); });
    }
    if (kind == "bspline") {
      only_keys(t, {"kind", "order"}, where);
      const auto o = integer(require(t, "order", where), "order");
      return guard([&] { return Generator::bspline(static_cast<int>(o)); });
    }
    if (kind == "sampled") {
      only_keys(t, {"kind", "step", "origin", "samples", "freq_support"}, where);
      const double step = number(require(t, "step", where), "step");
      const double origin = number_or(t, "origin", 0.0);
      std::vector<cplx> samples;
      for (auto&& e : array(require(t, "samples", where), "samples")) samples.push_back(complex(e, "samples"));
      std::optional<Interval> support;
      if (auto s = t.get("freq_support")) support = interval(*s, "freq_support");
      return guard([&] { return Generator::sampled(step, origin, samples, support); });
    }
    if (kind == "combination") {
      only_keys(t, {"kind", "base", "terms"}, where);
      Generator base = generator(table(require(t, "base", where), "base"), where + ".base");
      std::vector<Generator::Term> terms;
      for (auto&& e : array(require(t, "terms", where), "terms")) {
        const auto& tt = table(e, "term");
        only_keys(tt, {"coefficient", "shift"}, where + ".terms");
        terms.push_back({complex(require(tt, "coefficient", "term"), "coefficient"), number_or(tt, "shift", 0.0)});
      }
      return guard([&] { return Generator::combination(base, terms); });
    }
    fail(require(t, "kind", where).source(), "unknown generator kind '" + kind + "'");
  }

  PointSet point_set(const toml::table& t) const {
    const std::string where = "[set]";
    const std::string kind = string(require(t, "kind", where), "kind");
    auto guard = [&](auto&& make) {
      try {
        return make();
      } catch (const Error& e) {
        fail(t.source(), e.what());
      }
    };
    if (kind == "lattice") {
      only_keys(t, {"kind", "step", "offset"}, where);
      const double step = number(require(t, "step", where), "step");
      const double offset = number_or(t, "offset", 0.0);
      return guard([&] { return PointSet::lattice(step, offset); });
    }
    if (kind == "union") {
      only_keys(t, {"kind", "progressions"}, where);
      std::vector<PointSet::Progression> ps;
      for (auto&& e : array(require(t, "progressions", where), "progressions")) {
        const auto& p = table(e, "progression");
        only_keys(p, {"step", "offset"}, "progression");
        ps.push_back({number(require(p, "step", "progression"), "step"), number_or(p, "offset", 0.0)});
      }
      return guard([&] { return PointSet::union_of_progressions(ps); });
    }
    if (kind == "perturbed_lattice") {
      only_keys(t, {"kind", "step", "delta", "omega", "phase", "offset"}, where);
      const double step = number(require(t, "step", where), "step");
      const double delta = number(require(t, "delta", where), "delta");
      const double omega = number_or(t, "omega", 1.0);
      const double phase = number_or(t, "phase", 0.0);
      const double offset = number_or(t, "offset", 0.0);
      return guard([&] { return PointSet::perturbed_lattice(step, delta, omega, phase, offset); });
    }
    if (kind == "trig_zero_set") {
      only_keys(t, {"kind", "a", "b"}, where);
      const double a = number(require(t, "a", where), "a");
      const double b = number(require(t, "b", where), "b");
      return guard([&] { return PointSet::trig_zero_set(a, b); });
    }
    if (kind == "explicit") {
      only_keys(t, {"kind", "points"}, where);
      std::vector<double> pts;
      for (auto&& e : array(require(t, "points", where), "points")) pts.push_back(number(e, "points"));
      return guard([&] { return PointSet::explicit_points(pts); });
    }
    fail(require(t, "kind", where).source(), "unknown set kind '" + kind + "'");
  }

  PoissonComb comb(const toml::table& t) const {
    const std::string where = "[comb]";
    if (auto preset = t.get("preset")) {
      only_keys(t, {"preset", "period"}, where);
      const std::string name = string(*preset, "preset");
      const double a = number_or(t, "period", 1.0);
      if (!(a > 0.0)) fail(t.source(), "comb period must be positive");
      if (name == "dirac") return dirac_comb(a);
      if (name == "alternating") return alternating_comb(a);
      fail(preset->source(), "unknown comb preset '" + name + "'");
    }
    only_keys(t, {"period", "components"}, where);
    PoissonComb c;
    c.period = number(require(t, "period", where), "period");
    if (!(c.period > 0.0)) fail(t.source(), "comb period must be positive");
    for (auto&& e : array(require(t, "components", where), "components")) {
      const auto& ct = table(e, "component");
      only_keys(ct, {"offset", "terms"}, "component");
      CombComponent comp{number_or(ct, "offset", 0.0), {}};
      for (auto&& te : array(require(ct, "terms", "component"), "terms")) {
        const auto& tt = table(te, "term");
        only_keys(tt, {"coefficient", "frequency"}, "term");
        comp.terms.push_back({complex(require(tt, "coefficient", "term"), "coefficient"), number_or(tt, "frequency", 0.0)});
      }
      c.components.push_back(std::move(comp));
    }
    try {
      return canonicalize(std::move(c));
    } catch (const Error& e) {
      fail(t.source(), e.what());
    }
  }

 private:
  std::string source_;
};

nlohmann::json to_json(const toml::node& n) {
  if (auto t = n.as_table()) {
    nlohmann::json j = nlohmann::json::object();
    for (auto&& [k, v] : *t) j[std::string(k.str())] = to_json(v);
    return j;
  }
  if (auto a = n.as_array()) {
    nlohmann::json j = nlohmann::json::array();
    for (auto&& v : *a) j.push_back(to_json(v));
    return j;
  }
  if (auto i = n.as_integer()) return i->get();
  if (auto f = n.as_floating_point()) return f->get();
  if (auto b = n.as_boolean()) return b->get();
  if (auto s = n.as_string()) return s->get();
  return nullptr;
}

}  // namespace

const std::vector<std::string>& operation_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, spec] : op_table()) v.push_back(k);
    return v;
  }();
  return ids;
}

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
  toml::table doc;
  try {
    doc = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source_name << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    throw Error(ErrorCode::config, os.str());
  }
  const Reader rd(source_name);
  rd.only_keys(doc, {"seed", "generator", "set", "comb", "operation", "output"}, "scenario");

  Scenario sc;
  sc.source = source_name;
  sc.echo = to_json(doc);
  if (auto s = doc.get("seed")) {
    const auto v = rd.integer(*s, "seed");
    if (v < 0) rd.fail(s->source(), "seed must be nonnegative");
    sc.seed = static_cast<std::uint64_t>(v);
  }

  const auto& op = rd.table(rd.require(doc, "operation", "scenario"), "[operation]");
  const auto& id_node = rd.require(op, "id", "[operation]");
  sc.operation = rd.string(id_node, "operation id");
  const auto it = op_table().find(sc.operation);
  if (it == op_table().end()) rd.fail(id_node.source(), "unknown operation '" + sc.operation + "'");
  const OpSpec& spec = it->second;
  for (auto&& [k, v] : op) {
    if (k.str() == "id") continue;
    const auto p = spec.params.find(std::string(k.str()));
    if (p == spec.params.end())
      rd.fail(k.source(), "unknown parameter '" + std::string(k.str()) + "' for operation " + sc.operation);
    rd.check_param(v, p->second.type, std::string(k.str()));
    sc.params[std::string(k.str())] = to_json(v);
  }
  for (const auto& [k, p] : spec.params) {
    if (p.required && !op.get(k)) rd.fail(op.source(), "operation " + sc.operation + " requires '" + k + "'");
  }

  auto section = [&](const char* key, unsigned flag) -> const toml::table* {
    const toml::node* n = doc.get(key);
    if (!n) {
      if (spec.needs & flag)
        rd.fail(doc.source(), std::string("operation ") + sc.operation + " requires a [" + key + "] section");
      return nullptr;
    }
    return &rd.table(*n, std::string("[") + key + "]");
  };
  if (const auto* g = section("generator", kGen)) sc.generator = rd.generator(*g, "[generator]");
  if (const auto* s = section("set", kSet)) sc.set = rd.point_set(*s);
  if (const auto* c = section("comb", kComb)) sc.comb = rd.comb(*c);

  if (const toml::node* o = doc.get("output")) {
    const auto& t = rd.table(*o, "[output]");
    rd.only_keys(t, {"dir", "name", "csv"}, "[output]");
    if (auto d = t.get("dir")) sc.output.dir = rd.string(*d, "dir");
    if (auto n = t.get("name")) sc.output.name = rd.string(*n, "name");
    if (auto c = t.get("csv")) {
      if (!c->is_boolean()) rd.fail(c->source(), "csv must be a boolean");
      sc.output.csv = c->as_boolean()->get();
    }
    if (sc.output.name.empty() || sc.output.name.find('/') != std::string::npos)
      rd.fail(t.source(), "output name must be a plain file stem");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::config, path.string() + ":1:1: cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str(), path.string());
  if (sc.echo.contains("output") && sc.echo["output"].contains("name")) return sc;
  sc.output.name = path.stem().string();
  return sc;
}

}  // namespace shiftstab

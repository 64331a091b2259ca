#include "shiftstab/dispatch.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "shiftstab/crystalline.hpp"
#include "shiftstab/error.hpp"
#include "shiftstab/interpolation.hpp"
#include "shiftstab/stability.hpp"

#ifndef SHIFTSTAB_VERSION
#define SHIFTSTAB_VERSION "dev"
#endif

namespace shiftstab {

namespace {

using nlohmann::json;

class Params {
 public:
  Params(const json& j, double grid_scale) : j_(j), scale_(grid_scale) {}

  bool has(const char* k) const { return j_.contains(k); }
  double number(const char* k, double fallback) const { return has(k) ? j_[k].get<double>() : fallback; }
  double number(const char* k) const { return j_.at(k).get<double>(); }
  long long integer(const char* k, long long fallback) const { return has(k) ? j_[k].get<long long>() : fallback; }
  std::string string(const char* k) const { return j_.at(k).get<std::string>(); }

  std::vector<double> numbers(const char* k) const {
    const auto& v = j_.at(k);
    if (v.is_array()) return v.get<std::vector<double>>();
    return {v.get<double>()};
  }
  Interval interval(const char* k) const { return to_interval(j_.at(k)); }
  std::vector<Interval> intervals(const char* k) const {
    std::vector<Interval> out;
    for (const auto& e : j_.at(k)) out.push_back(to_interval(e));
    return out;
  }
  std::vector<cplx> complexes(const char* k) const {
    std::vector<cplx> out;
    for (const auto& e : j_.at(k)) {
      if (e.is_array()) out.emplace_back(e[0].get<double>(), e[1].get<double>());
      else out.emplace_back(e.get<double>(), 0.0);
    }
    return out;
  }
  std::vector<double> grid(const char* k) const {
    const auto& g = j_.at(k);
    return make_grid(g["from"].get<double>(), g["to"].get<double>(), g["step"].get<double>());
  }

  /// Grid resolution knobs honor --grid-scale.
  int count(const char* k, long long fallback) const {
    const double v = std::round(static_cast<double>(integer(k, fallback)) * scale_);
    if (v < 1.0 || v > 1e8) throw Error(ErrorCode::resource_limit, std::string(k) + " out of range after grid scaling");
    return static_cast<int>(v);
  }
  double step(const char* k, double fallback) const { return number(k, fallback) / scale_; }

  static std::vector<double> make_grid(double from, double to, double step) {
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(from + i * step);
    return g;
  }

 private:
  static Interval to_interval(const json& e) { return {e[0].get<double>(), e[1].get<double>()}; }
  const json& j_;
  double scale_;
};

json interval_json(Interval iv) { return json::array({num(iv.lo), num(iv.hi)}); }

json spectrum_json(const SpectrumSet& s) {
  json iv = json::array();
  for (const auto& i : s.intervals()) iv.push_back(interval_json(i));
  return {{"intervals", iv}, {"measure", num(s.measure())}};
}

json ladder_json(const std::vector<LadderRung>& ladder) {
  json out = json::array();
  for (const auto& r : ladder) {
    out.push_back({{"size", r.size}, {"window", interval_json(r.window)}, {"lambda_min", num(r.lambda_min)},
                   {"lambda_max", num(r.lambda_max)}});
  }
  return out;
}

Table ladder_table(const std::string& name, const std::vector<LadderRung>& ladder) {
  Table t{name, {"size", "window_lo", "window_hi", "lambda_min", "lambda_max"}, {}};
  for (const auto& r : ladder)
    t.rows.push_back({r.size, num(r.window.lo), num(r.window.hi), num(r.lambda_min), num(r.lambda_max)});
  return t;
}

json set_json(const PointSet& set) {
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, PointSet::Lattice>) {
          return {{"kind", "lattice"}, {"step", num(k.step)}, {"offset", num(k.offset)}};
        } else if constexpr (std::is_same_v<T, PointSet::UnionOfProgressions>) {
          json ps = json::array();
          for (const auto& p : k.progressions) ps.push_back({{"step", num(p.step)}, {"offset", num(p.offset)}});
          return {{"kind", "union"}, {"progressions", ps}};
        } else if constexpr (std::is_same_v<T, PointSet::PerturbedLattice>) {
          return {{"kind", "perturbed_lattice"}, {"step", num(k.step)}, {"delta", num(k.delta)},
                  {"omega", num(k.omega)}, {"phase", num(k.phase)}, {"offset", num(k.offset)}};
        } else if constexpr (std::is_same_v<T, PointSet::TrigZeroSet>) {
          return {{"kind", "trig_zero_set"}, {"a", num(k.a)}, {"b", num(k.b)}};
        } else {
          json pts = json::array();
          for (double p : k.points) pts.push_back(num(p));
          return {{"kind", "explicit"}, {"points", pts}};
        }
      },
      set.kind());
}

json comb_json(const PoissonComb& c) {
  json comps = json::array();
  for (const auto& comp : c.components) {
    json terms = json::array();
    for (const auto& t : comp.terms) terms.push_back({{"coefficient", num(t.coefficient)}, {"frequency", num(t.frequency)}});
    comps.push_back({{"offset", num(comp.offset)}, {"terms", terms}});
  }
  return {{"period", num(c.period)}, {"components", comps}};
}

Table comb_table(const std::string& name, const PoissonComb& c) {
  Table t{name, {"offset", "frequency", "coefficient_re", "coefficient_im"}, {}};
  for (const auto& comp : c.components)
    for (const auto& term : comp.terms)
      t.rows.push_back({num(comp.offset), num(term.frequency), num(term.coefficient.real()), num(term.coefficient.imag())});
  return t;
}

std::vector<Interval> ladder_windows(const Params& p, const PointSet& set) {
  if (p.has("windows")) return p.intervals("windows");
  std::vector<std::size_t> sizes{11, 21, 41};
  if (p.has("sizes")) {
    sizes.clear();
    for (double s : p.numbers("sizes")) {
      if (s < 2) throw Error(ErrorCode::invalid_argument, "ladder sizes must be >= 2");
      sizes.push_back(static_cast<std::size_t>(s));
    }
  }
  return centered_windows(set, sizes);
}

struct Context {
  const Scenario& sc;
  const Params& p;
  std::uint64_t seed;
  RunReport& rep;
  json& results;
  json& verdicts;
  json& notes;

  const Generator& gen() const { return *sc.generator; }
  const PointSet& set() const { return *sc.set; }
  const PoissonComb& comb() const { return *sc.comb; }
};

using Handler = std::function<void(Context&)>;

void values_op(Context& c, const char* key, const std::function<cplx(double)>& f) {
  Table t{"values", {key, "re", "im"}, {}};
  json vals = json::array();
  for (double x : c.p.numbers(key)) {
    const cplx v = f(x);
    t.rows.push_back({num(x), num(v.real()), num(v.imag())});
    vals.push_back({{key, num(x)}, {"value", num(v)}});
  }
  c.results["values"] = vals;
  c.rep.tables.push_back(std::move(t));
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"eval_time", [](Context& c) { values_op(c, "x", [&](double x) { return eval_time(c.gen(), x); }); }},
      {"eval_freq", [](Context& c) { values_op(c, "t", [&](double t) { return eval_freq(c.gen(), t); }); }},
      {"autocorrelation",
       [](Context& c) { values_op(c, "x", [&](double x) { return autocorrelation(c.gen(), x); }); }},
      {"wiener_norm",
       [](Context& c) {
         const auto mode_s = c.p.string("mode");
         if (mode_s != "time_domain" && mode_s != "freq_squared")
           throw Error(ErrorCode::config, "mode must be 'time_domain' or 'freq_squared'");
         const auto mode = mode_s == "time_domain" ? AmalgamMode::time_domain : AmalgamMode::freq_squared;
         const auto prof = wiener_norm(c.gen(), mode, static_cast<int>(c.p.integer("cells", 64)),
                                       c.p.count("probes", kDefaultProbesPerCell));
         c.results = {{"mode", mode_s}, {"total", num(prof.total)}, {"tail", num(prof.tail)},
                      {"upper_bound", num(prof.upper_bound())}, {"divergent", prof.divergent},
                      {"partial_sums", json::array()}};
         for (double s : prof.partial_sums) c.results["partial_sums"].push_back(num(s));
         c.verdicts["in_amalgam"] = !prof.divergent;
         Table t{"cells", {"cell", "sup"}, {}};
         for (std::size_t i = 0; i < prof.cell_sups.size(); ++i)
           t.rows.push_back({prof.first_cell + static_cast<int>(i), num(prof.cell_sups[i])});
         c.rep.tables.push_back(std::move(t));
       }},
      {"freq_zero_set",
       [](Context& c) {
         const double step = std::min(0.01, c.p.step("step", 0.005));
         const auto z = freq_zero_set(c.gen(), c.p.interval("window"), step, c.p.number("tolerance", 1e-12),
                                      static_cast<int>(c.p.integer("cap", 100)));
         json zeros = json::array(), nulls = json::array();
         for (double x : z.zeros) zeros.push_back(num(x));
         for (const auto& iv : z.null_intervals) nulls.push_back(interval_json(iv));
         c.results = {{"zeros", zeros}, {"null_intervals", nulls}, {"locally_finite", z.locally_finite},
                      {"first_cell", z.first_cell}, {"per_unit_counts", z.per_unit_counts}};
         c.verdicts["locally_finite"] = z.locally_finite;
       }},
      {"level_set",
       [](Context& c) {
         const auto s = level_set(c.gen(), c.p.number("r"), c.p.interval("window"), c.p.step("step", 1e-3));
         c.results = spectrum_json(s);
       }},
      {"enumerate",
       [](Context& c) {
         const auto pts = enumerate(c.set(), c.p.interval("window"));
         c.results = {{"count", pts.size()}};
         Table t{"points", {"index", "point"}, {}};
         for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({i, num(pts[i])});
         c.rep.tables.push_back(std::move(t));
       }},
      {"separation_constant",
       [](Context& c) {
         const auto s = separation_constant(c.set(), c.p.interval("window"));
         c.results = {{"defined", s.has_value()}, {"separation", s ? num(*s) : json(nullptr)},
                      {"separated_set", is_separated(c.set())}};
         if (!is_separated(c.set())) c.notes.push_back("union of incommensurable progressions is not separated");
       }},
      {"beurling_densities",
       [](Context& c) {
         const auto d = beurling_densities(c.set(), c.p.numbers("radii"), static_cast<int>(c.p.integer("probes", 64)),
                                           c.p.number("center", 0.0));
         c.results = {{"upper", num(d.upper)}, {"lower", num(d.lower)}, {"exact", d.exact}};
         Table t{"density_ladder", {"radius", "sup_ratio", "inf_ratio"}, {}};
         for (const auto& r : d.ladder) t.rows.push_back({num(r.radius), num(r.sup_ratio), num(r.inf_ratio)});
         c.rep.tables.push_back(std::move(t));
       }},
      {"translate_set",
       [](Context& c) {
         const auto t = translate_set(c.set(), c.p.number("x"));
         c.results = {{"set", set_json(t)}, {"description", t.describe()}};
       }},
      {"weak_limit_params",
       [](Context& c) {
         const auto w = weak_limit_params(c.set(), c.p.number("s"), static_cast<int>(c.p.integer("k_max", 5000)),
                                          c.p.count("torus_grid", 512));
         c.results = {{"orbit_points", w.orbit.size()}, {"covering_radius", num(w.covering_radius)}};
         Table t{"orbit", {"a", "b"}, {}};
         for (const auto& [a, b] : w.orbit) t.rows.push_back({num(a), num(b)});
         c.rep.tables.push_back(std::move(t));
       }},
      {"periodization",
       [](Context& c) {
         const auto prof = periodization(c.gen(), c.p.number("alpha", 1.0), c.p.count("grid_points", 1024),
                                         static_cast<int>(c.p.integer("cells", 16)));
         c.results = {{"alpha", num(prof.alpha)}, {"min", num(prof.min_value)}, {"max", num(prof.max_value)},
                      {"argmin", num(prof.argmin)}, {"argmax", num(prof.argmax)}, {"tail_bound", num(prof.tail_bound)}};
         if (std::holds_alternative<Generator::Sampled>(c.gen().kind()))
           c.notes.push_back("grid_extrema: extrema are grid values; essential bounds are not controlled for sampled generators");
         Table t{"profile", {"t", "value"}, {}};
         for (std::size_t i = 0; i < prof.grid.size(); ++i) t.rows.push_back({num(prof.grid[i]), num(prof.values[i])});
         c.rep.tables.push_back(std::move(t));
       }},
      {"integer_shift_verdict",
       [](Context& c) {
         const auto r = integer_shift_verdict(c.gen(), c.p.count("b_grid", 512), static_cast<int>(c.p.integer("k", 16)),
                                              c.p.number("tolerance", 1e-8));
         c.verdicts["integer_shifts"] = to_string(r.verdict);
         c.results = {{"witness_b", num(r.witness_b)}, {"min_m", num(r.min_m)}};
       }},
      {"gramian_section",
       [](Context& c) {
         const auto g = gramian_section(c.gen(), c.set(), c.p.interval("window"));
         c.results = {{"size", g.points.size()}, {"lambda_min", num(g.lambda_min)}, {"lambda_max", num(g.lambda_max)},
                      {"relative_residual", num(g.eigen.relative_residual)},
                      {"hermitian_defect", num(hermitian_defect(g.entries))}, {"separated_set", is_separated(c.set())}};
         Table t{"points", {"index", "point"}, {}};
         for (std::size_t i = 0; i < g.points.size(); ++i) t.rows.push_back({i, num(g.points[i])});
         c.rep.tables.push_back(std::move(t));
       }},
      {"l2_stability_estimate",
       [](Context& c) {
         const auto r = l2_stability_estimate(c.gen(), c.set(), ladder_windows(c.p, c.set()));
         c.verdicts["l2_stability"] = to_string(r.verdict);
         c.results = {{"p", 2}, {"c1", num(r.c1)}, {"c2", num(r.c2)}, {"rationale", r.rationale},
                      {"separated_set", r.separated}, {"ladder", ladder_json(r.ladder)},
                      {"thresholds", {{"floor", kLadderFloor}, {"decay", kLadderDecay}, {"stabilization", kLadderStabilization}}}};
         c.rep.tables.push_back(ladder_table("ladder", r.ladder));
       }},
      {"synthesize",
       [](Context& c) {
         const auto grid = c.p.grid("grid");
         const auto v = synthesize(c.gen(), c.set(), c.p.interval("window"), c.p.complexes("coefficients"), grid);
         Table t{"synthesis", {"x", "re", "im"}, {}};
         for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({num(grid[i]), num(v[i].real()), num(v[i].imag())});
         c.results = {{"grid_points", grid.size()}};
         c.rep.tables.push_back(std::move(t));
       }},
      {"l2_norm_consistency",
       [](Context& c) {
         const auto pts = enumerate(c.set(), c.p.interval("window"));
         const auto domain = c.p.interval("domain");
         const double limit = c.p.number("limit", kDefaultTruncationLimit);
         std::vector<std::vector<cplx>> draws;
         if (c.p.has("coefficients")) draws.push_back(c.p.complexes("coefficients"));
         const auto n_random = c.p.integer("random_draws", 0);
         if (draws.empty() && n_random <= 0)
           throw Error(ErrorCode::config, "l2_norm_consistency needs 'coefficients' or 'random_draws'");
         std::mt19937_64 rng(c.seed);
         std::normal_distribution<double> normal;
         for (long long d = 0; d < n_random; ++d) {
           std::vector<cplx> cs(pts.size());
           for (auto& x : cs) x = {normal(rng), normal(rng)};
           draws.push_back(std::move(cs));
         }
         Table t{"consistency", {"draw", "quadratic_form", "quadrature", "relative_difference", "truncation_bound"}, {}};
         double worst = 0.0;
         for (std::size_t d = 0; d < draws.size(); ++d) {
           const auto r = l2_norm_consistency(c.gen(), pts, draws[d], domain, limit);
           const double rel = r.quadratic_form > 0.0 ? std::abs(r.quadrature - r.quadratic_form) / r.quadratic_form : 0.0;
           worst = std::max(worst, rel);
           t.rows.push_back({d, num(r.quadratic_form), num(r.quadrature), num(rel), num(r.truncation_bound)});
         }
         c.results = {{"draws", draws.size()}, {"worst_relative_difference", num(worst)}};
         c.rep.tables.push_back(std::move(t));
       }},
      {"linf_stability_search",
       [](Context& c) {
         const auto pts = enumerate(c.set(), c.p.interval("window"));
         const auto r = linf_stability_search(c.gen(), pts, c.p.integer("budget", 10000), c.seed,
                                              c.p.step("grid_step", 0.01));
         c.results = {{"upper_bound", num(r.bound)}, {"evaluations", r.evaluations}, {"best_stage", r.best_stage}};
         c.notes.push_back("l-infinity result is an upper bound on the lower stability constant, not the constant");
         Table t{"witness", {"point", "re", "im"}, {}};
         for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({num(pts[i]), num(r.witness[i].real()), num(r.witness[i].imag())});
         c.rep.tables.push_back(std::move(t));
       }},
      {"progression_union_upper_check",
       [](Context& c) {
         std::vector<std::pair<double, double>> progs;
         for (const auto& e : c.sc.params.at("progressions")) progs.emplace_back(e[0].get<double>(), e[1].get<double>());
         const auto r = progression_union_upper_check(c.gen(), progs);
         c.verdicts["bounded"] = r.bounded;
         json sups = json::array();
         for (double s : r.sups) sups.push_back(num(s));
         c.results = {{"sups", sups}, {"diagnostics", r.diagnostics}};
       }},
      {"exponential_gram",
       [](Context& c) {
         const SpectrumSet s(c.p.intervals("spectrum"));
         const auto g = exponential_gram(c.set(), s, c.p.interval("window"));
         c.results = {{"size", g.points.size()}, {"lambda_min", num(g.lambda_min)}, {"lambda_max", num(g.lambda_max)},
                      {"relative_residual", num(g.eigen.relative_residual)}, {"spectrum", spectrum_json(s)}};
       }},
      {"interpolation_verdict_interval",
       [](Context& c) {
         const auto r = interpolation_verdict_interval(
             c.set(), c.p.interval("interval"), c.p.number("margin", 0.05),
             c.p.has("radii") ? c.p.numbers("radii") : kDefaultDensityRadii, static_cast<int>(c.p.integer("probes", 64)));
         c.verdicts["interpolation"] = to_string(r.verdict);
         c.results = {{"method", to_string(r.method)}, {"rationale", r.rationale},
                      {"density_upper", num(r.densities->upper)}, {"density_lower", num(r.densities->lower)},
                      {"density_exact", r.densities->exact}};
       }},
      {"interpolation_lower_bound",
       [](Context& c) {
         const SpectrumSet s(c.p.intervals("spectrum"));
         const auto r = interpolation_lower_bound(c.set(), s, ladder_windows(c.p, c.set()));
         c.verdicts["interpolation"] = to_string(r.verdict);
         c.results = {{"method", to_string(r.method)}, {"rationale", r.rationale}, {"ladder", ladder_json(r.ladder)},
                      {"lower_bound", num(r.ladder.back().lambda_min)}};
         c.rep.tables.push_back(ladder_table("ladder", r.ladder));
       }},
      {"stability_r_scan",
       [](Context& c) {
         const auto r_grid = c.p.has("r_grid") ? c.p.numbers("r_grid") : default_r_grid(c.gen());
         const auto r = stability_r_scan(c.gen(), c.set(), r_grid, ladder_windows(c.p, c.set()),
                                         c.p.step("level_step", kLevelSetStep));
         c.verdicts["r_scan"] = to_string(r.overall);
         c.verdicts["l2_stability"] = to_string(r.direct.verdict);
         c.verdicts["pathways_consistent"] = r.consistent;
         json rows = json::array();
         Table t{"r_scan", {"r", "level_measure", "verdict", "last_lambda_min"}, {}};
         for (const auto& row : r.rows) {
           const double last = row.report.ladder.empty() ? 0.0 : row.report.ladder.back().lambda_min;
           rows.push_back({{"r", num(row.r)}, {"level_set", spectrum_json(row.level_set)},
                           {"verdict", to_string(row.report.verdict)}, {"ladder", ladder_json(row.report.ladder)}});
           t.rows.push_back({num(row.r), num(row.level_set.measure()), to_string(row.report.verdict), num(last)});
         }
         c.results = {{"rows", rows}, {"rationale", r.rationale}, {"direct_ladder", ladder_json(r.direct.ladder)},
                      {"c1", num(r.direct.c1)}, {"c2", num(r.direct.c2)}};
         c.rep.tables.push_back(std::move(t));
         c.rep.tables.push_back(ladder_table("direct_ladder", r.direct.ladder));
       }},
      {"comb_fourier",
       [](Context& c) {
         const auto t = comb_fourier(c.comb());
         c.results = {{"input", comb_json(c.comb())}, {"transform", comb_json(t)}};
         c.rep.tables.push_back(comb_table("transform", t));
       }},
      {"verify_poisson",
       [](Context& c) {
         TestFunction test = TestFunction::gaussian(1.0);
         if (c.sc.params.contains("test")) {
           const auto& tj = c.sc.params["test"];
           const double sigma = tj.value("sigma", 1.0);
           test = tj.at("kind") == "gaussian"
                      ? TestFunction::gaussian(sigma)
                      : TestFunction::modulated(sigma, tj.value("center", 0.0), tj.value("modulation", 0.0));
         }
         const int n = static_cast<int>(c.p.integer("truncation", 30));
         const auto r = verify_poisson(c.comb(), test, n);
         const auto r2 = verify_poisson(c.comb(), test, 2 * n);
         c.results = {{"truncation", n}, {"left", num(r.left)}, {"right", num(r.right)}, {"residual", num(r.residual)},
                      {"residual_doubled", num(r2.residual)}, {"test", r.test_id}};
       }},
      {"vanishing_combination_residual",
       [](Context& c) {
         std::vector<double> probes = Params::make_grid(-20.0, 20.0, 0.01 / 1.0);
         if (c.p.has("probes")) probes = c.p.grid("probes");
         const auto r = vanishing_combination_residual(c.gen(), c.comb(), static_cast<int>(c.p.integer("truncation", 200)), probes);
         c.results = {{"residual", num(r.residual)}, {"interior_tail_bound", num(r.interior_tail_bound)},
                      {"crude_tail_bound", num(r.crude_tail_bound)}};
         c.notes.push_back("instance check on a single comb; weak limits are not explored");
       }},
      {"trig_zero_set",
       [](Context& c) {
         const auto r = trig_zero_set(c.p.number("a"), c.p.number("b"), c.p.interval("window"));
         int top = 0;
         for (int k : r.per_unit_counts) top = std::max(top, k);
         c.results = {{"count", r.points.size()}, {"separation", r.has_separation ? num(r.separation) : json(nullptr)},
                      {"max_per_unit", top}, {"first_cell", r.first_cell}, {"per_unit_counts", r.per_unit_counts}};
         Table t{"points", {"index", "point"}, {}};
         for (std::size_t i = 0; i < r.points.size(); ++i) t.rows.push_back({i, num(r.points[i])});
         c.rep.tables.push_back(std::move(t));
       }},
      {"ap_intersection_diagnostic",
       [](Context& c) {
         const auto pts = enumerate(c.set(), c.p.interval("window"));
         const auto r = ap_intersection_diagnostic(pts, c.p.number("alpha"), c.p.number("beta", 0.0), c.p.number("eps", 1e-6));
         json hits = json::array();
         for (double h : r.hits) hits.push_back(num(h));
         c.results = {{"hits", r.count}, {"hit_points", hits}};
       }},
  };
  return table;
}

}  // namespace

RunReport run_operation(const Scenario& sc, const RunOptions& opts) {
  if (!(opts.grid_scale > 0.0) || !std::isfinite(opts.grid_scale))
    throw Error(ErrorCode::config, "grid scale must be positive");
  const auto h = handlers().find(sc.operation);
  if (h == handlers().end()) throw Error(ErrorCode::unsupported_request, "no handler for operation " + sc.operation);

  RunReport rep;
  const std::uint64_t seed = opts.seed.value_or(sc.seed);
  json results = json::object(), verdicts = json::object(), notes = json::array();
  const Params params(sc.params, opts.grid_scale);
  Context ctx{sc, params, seed, rep, results, verdicts, notes};
  h->second(ctx);

  rep.doc = {{"schema_version", kReportSchemaVersion},
             {"tool", {{"name", "shiftstab"}, {"version", SHIFTSTAB_VERSION}}},
             {"seed", seed},
             {"grid_scale", opts.grid_scale},
             {"operation", sc.operation},
             {"scenario", sc.echo},
             {"verdicts", verdicts},
             {"results", results},
             {"notes", notes}};
  return rep;
}

}  // namespace shiftstab

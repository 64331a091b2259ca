#include "shiftstab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftstab/error.hpp"
#include "shiftstab/kernels.hpp"

namespace shiftstab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Answer answer_of(Verdict v) {
  switch (v) {
    case Verdict::stable: return Answer::yes;
    case Verdict::unstable: return Answer::no;
    case Verdict::inconclusive: return Answer::inconclusive;
  }
  return Answer::inconclusive;
}

}  // namespace

const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(InterpolationMethod m) {
  return m == InterpolationMethod::density ? "density" : "gram-ladder";
}

GramianSection exponential_gram(const std::vector<double>& points, const SpectrumSet& spectrum) {
  if (spectrum.empty()) throw Error(ErrorCode::invalid_argument, "spectrum must be nonempty");
  if (points.size() < 2) throw Error(ErrorCode::invalid_argument, "section needs at least 2 points");
  if (points.size() > kMaxSectionPoints) throw Error(ErrorCode::resource_limit, "section above 4096 points");
  const auto& pieces = spectrum.intervals();
  auto entry = [&pieces](double d) {
    cplx s{};
    for (const auto& iv : pieces) {
      const double len = iv.hi - iv.lo;
      s += expi(kPi * d * (iv.lo + iv.hi)) * (len * sinc(d * len));
    }
    return s;
  };
  GramianSection g;
  g.points = points;
  g.entries = kernels::hermitian_fill(points, entry);
  g.entries.diagonal().setConstant(cplx(spectrum.measure(), 0.0));
  g.eigen = extremal_eigenvalues(g.entries);
  g.lambda_min = g.eigen.lambda_min;
  g.lambda_max = g.eigen.lambda_max;
  return g;
}

GramianSection exponential_gram(const PointSet& set, const SpectrumSet& spectrum, Interval window) {
  return exponential_gram(enumerate(set, window), spectrum);
}

InterpolationReport interpolation_verdict_interval(const PointSet& set, Interval ab, double margin,
                                                   const std::vector<double>& radii, int offset_probes) {
  if (!(ab.hi > ab.lo)) throw Error(ErrorCode::invalid_argument, "interval needs b > a");
  if (!(margin > 0.0)) throw Error(ErrorCode::invalid_argument, "margin must be positive");
  InterpolationReport rep;
  rep.method = InterpolationMethod::density;
  const auto est = beurling_densities(set, radii, offset_probes);
  rep.densities = est;
  const double len = ab.length();

  bool settled = est.exact;
  double dplus_low = est.upper;
  if (!est.exact) {
    const auto& l = est.ladder;
    if (l.size() >= 2) {
      const double a = l[l.size() - 2].sup_ratio;
      const double b = l.back().sup_ratio;
      settled = std::abs(b - a) <= kLadderStabilization * b;
      dplus_low = std::min(a, b);
    }
  }
  if (est.upper + margin < len && settled) {
    rep.verdict = Answer::yes;
    rep.rationale = "D+ = " + fmt(est.upper) + " < b - a = " + fmt(len);
  } else if (dplus_low - margin > len) {
    rep.verdict = Answer::no;
    rep.rationale = "D+ >= " + fmt(dplus_low) + " > b - a = " + fmt(len);
  } else {
    rep.verdict = Answer::inconclusive;
    rep.rationale = "D+ = " + fmt(est.upper) + " within margin of b - a = " + fmt(len);
  }
  return rep;
}

InterpolationReport interpolation_lower_bound(const PointSet& set, const SpectrumSet& spectrum,
                                              const std::vector<Interval>& windows) {
  if (windows.empty()) throw Error(ErrorCode::invalid_argument, "window ladder is empty");
  InterpolationReport rep;
  rep.method = InterpolationMethod::gram_ladder;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (i > 0) {
      const auto& a = windows[i - 1];
      const auto& b = windows[i];
      if (!(b.lo <= a.lo && a.hi <= b.hi)) throw Error(ErrorCode::invalid_argument, "window ladder must be nested");
    }
    const auto g = exponential_gram(set, spectrum, windows[i]);
    rep.ladder.push_back({windows[i], g.points.size(), g.lambda_min, g.lambda_max});
  }
  const auto d = decide_ladder(rep.ladder);
  rep.verdict = answer_of(d.verdict);
  rep.rationale = d.rationale;
  return rep;
}

std::vector<double> default_r_grid(const Generator& gen) {
  const double top = freq_sup(gen);
  std::vector<double> r(8);
  const double lo = std::log(0.01 * top);
  const double hi = std::log(0.9 * top);
  for (int i = 0; i < 8; ++i) r[i] = std::exp(lo + (hi - lo) * i / 7.0);
  return r;
}

Interval level_window(const Generator& gen, double r) {
  if (const auto s = gen.freq_support()) return *s;
  const auto prof = wiener_norm(gen, AmalgamMode::freq_squared, 64, 256);
  for (int c = 1; c <= 64; ++c) {
    if (prof.sup_beyond(c) <= r * r) return {-static_cast<double>(c), static_cast<double>(c)};
  }
  return {-64.0, 64.0};
}

RScanReport stability_r_scan(const Generator& gen, const PointSet& set, const std::vector<double>& r_grid,
                             const std::vector<Interval>& windows, double level_step) {
  if (r_grid.empty()) throw Error(ErrorCode::invalid_argument, "r grid is empty");
  if (!gen.freq_support()) {
    if (wiener_norm(gen, AmalgamMode::freq_squared, 64, 256).divergent)
      throw Error(ErrorCode::unsupported_generator, "|F^|^2 fails the amalgam Cauchy test");
  }
  RScanReport rep;
  bool any_yes = false;
  bool all_no = true;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "levels r must be positive");
    RScanRow row;
    row.r = r;
    row.level_set = level_set(gen, r, level_window(gen, r), level_step);
    if (row.level_set.empty()) {
      row.report.method = InterpolationMethod::gram_ladder;
      row.report.verdict = Answer::no;
      row.report.rationale = "empty level set";
    } else {
      row.report = interpolation_lower_bound(set, row.level_set, windows);
    }
    any_yes = any_yes || row.report.verdict == Answer::yes;
    all_no = all_no && row.report.verdict == Answer::no;
    rep.rows.push_back(std::move(row));
  }
  rep.direct = l2_stability_estimate(gen, set, windows);
  if (any_yes) {
    rep.overall = Verdict::stable;
    rep.rationale = "some level set admits interpolation";
  } else if (all_no && rep.direct.verdict == Verdict::unstable) {
    rep.overall = Verdict::unstable;
    rep.rationale = "no level set admits interpolation and the Gramian ladder decays";
  } else {
    rep.overall = Verdict::inconclusive;
    rep.rationale = all_no ? "level sets fail but the Gramian ladder is not unstable" : "mixed level-set results";
  }
  const bool both = rep.overall != Verdict::inconclusive && rep.direct.verdict != Verdict::inconclusive;
  rep.consistent = !both || rep.overall == rep.direct.verdict;
  return rep;
}

}  // namespace shiftstab

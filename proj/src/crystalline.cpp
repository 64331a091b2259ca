#include "shiftstab/crystalline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftstab/error.hpp"
#include "shiftstab/kernels.hpp"
#include "shiftstab/point_sets.hpp"

namespace shiftstab {

namespace {

double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0 - kCombMergeTolerance) f = 0.0;
  return f;
}

int atoms_per_unit(const PoissonComb& comb) {
  return static_cast<int>(comb.components.size()) * static_cast<int>(std::floor(1.0 / comb.period) + 1.0);
}

}  // namespace

PoissonComb canonicalize(PoissonComb comb) {
  const double a = comb.period;
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::invalid_argument, "comb period must be positive");
  std::vector<CombComponent> reduced;
  for (auto& comp : comb.components) {
    if (!std::isfinite(comp.offset)) throw Error(ErrorCode::invalid_argument, "comb offsets must be finite");
    double m = std::floor(comp.offset / a);
    double x0 = comp.offset - m * a;
    if (a - x0 <= kCombMergeTolerance) {
      x0 = 0.0;
      m += 1.0;
    }
    CombComponent c{x0, {}};
    for (const auto& t : comp.terms) {
      if (!std::isfinite(t.frequency) || !std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag()))
        throw Error(ErrorCode::invalid_argument, "comb terms must be finite");
      // a n + x = a (n + m) + x0, so P(n) re-indexed picks up e^{-2 pi i w m}.
      const double w = frac(t.frequency);
      c.terms.push_back({t.coefficient * expi(-kTwoPi * t.frequency * m), w});
    }
    reduced.push_back(std::move(c));
  }
  std::sort(reduced.begin(), reduced.end(), [](const auto& l, const auto& r) { return l.offset < r.offset; });

  PoissonComb out{a, {}};
  for (auto& comp : reduced) {
    if (!out.components.empty() && comp.offset - out.components.back().offset <= kCombMergeTolerance) {
      auto& terms = out.components.back().terms;
      terms.insert(terms.end(), comp.terms.begin(), comp.terms.end());
    } else {
      out.components.push_back(std::move(comp));
    }
  }
  for (auto& comp : out.components) {
    std::sort(comp.terms.begin(), comp.terms.end(), [](const auto& l, const auto& r) { return l.frequency < r.frequency; });
    std::vector<ExpTerm> merged;
    for (const auto& t : comp.terms) {
      if (!merged.empty() && t.frequency - merged.back().frequency <= kCombMergeTolerance) {
        merged.back().coefficient += t.coefficient;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const ExpTerm& t) { return t.coefficient == cplx{}; });
    comp.terms = std::move(merged);
  }
  std::erase_if(out.components, [](const CombComponent& c) { return c.terms.empty(); });
  return out;
}

PoissonComb dirac_comb(double period) { return canonicalize({period, {{0.0, {{cplx(1.0), 0.0}}}}}); }

PoissonComb alternating_comb(double period) { return canonicalize({period, {{0.0, {{cplx(1.0), 0.5}}}}}); }

PoissonComb comb_fourier(const PoissonComb& comb) {
  const PoissonComb c = canonicalize(comb);
  const double a = c.period;
  PoissonComb out{1.0 / a, {}};
  for (const auto& comp : c.components) {
    for (const auto& t : comp.terms) {
      const cplx coef = t.coefficient / a * expi(-kTwoPi * comp.offset * t.frequency / a);
      out.components.push_back({t.frequency / a, {{coef, frac(-comp.offset / a)}}});
    }
  }
  return canonicalize(std::move(out));
}

std::vector<Atom> comb_atoms(const PoissonComb& comb, Interval window) {
  if (!(window.hi >= window.lo)) throw Error(ErrorCode::invalid_argument, "atom window must be an interval");
  const double a = comb.period;
  if (window.length() / a * std::max<std::size_t>(1, comb.components.size()) > 1e7)
    throw Error(ErrorCode::resource_limit, "too many comb atoms in the window");
  std::vector<Atom> atoms;
  for (const auto& comp : comb.components) {
    const double first = std::ceil((window.lo - comp.offset) / a);
    const double last = std::floor((window.hi - comp.offset) / a);
    for (double n = first; n <= last; n += 1.0) {
      const double pos = a * n + comp.offset;
      if (!window.contains(pos)) continue;
      cplx w{};
      for (const auto& t : comp.terms) w += t.coefficient * expi(kTwoPi * t.frequency * n);
      atoms.push_back({pos, w});
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.position < r.position; });
  std::vector<Atom> merged;
  for (const auto& at : atoms) {
    if (!merged.empty() && at.position - merged.back().position <= kCombMergeTolerance) {
      merged.back().weight += at.weight;
    } else {
      merged.push_back(at);
    }
  }
  return merged;
}

double coefficient_bound(const PoissonComb& comb) {
  double best = 0.0;
  for (const auto& comp : comb.components) {
    double s = 0.0;
    for (const auto& t : comp.terms) s += std::abs(t.coefficient);
    best = std::max(best, s);
  }
  return best;
}

TestFunction TestFunction::gaussian(double sigma) { return modulated(sigma, 0.0, 0.0); }

TestFunction TestFunction::modulated(double sigma, double center, double modulation) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(center) || !std::isfinite(modulation))
    throw Error(ErrorCode::invalid_argument, "test function needs sigma > 0 and finite parameters");
  return {sigma, center, modulation};
}

cplx TestFunction::time(double x) const {
  const double y = x - center;
  return expi(kTwoPi * modulation * x) * std::exp(-kPi * y * y / (sigma * sigma));
}

cplx TestFunction::freq(double t) const {
  const double u = t - modulation;
  return sigma * std::exp(-kPi * sigma * sigma * u * u) * expi(-kTwoPi * u * center);
}

std::string TestFunction::id() const {
  std::ostringstream os;
  os.precision(17);
  if (center == 0.0 && modulation == 0.0) {
    os << "gaussian(sigma=" << sigma << ")";
  } else {
    os << "modulated_gaussian(sigma=" << sigma << ", center=" << center << ", modulation=" << modulation << ")";
  }
  return os.str();
}

CrystallineCheckReport verify_poisson(const PoissonComb& comb, const TestFunction& test, int truncation) {
  if (truncation < 10) throw Error(ErrorCode::invalid_argument, "truncation N must be >= 10");
  const PoissonComb mu = canonicalize(comb);
  const PoissonComb mu_hat = comb_fourier(mu);
  const Interval w{-static_cast<double>(truncation), static_cast<double>(truncation)};
  CrystallineCheckReport rep;
  rep.truncation = truncation;
  rep.test_id = test.id();
  for (const auto& at : comb_atoms(mu, w)) rep.left += at.weight * test.freq(at.position);
  for (const auto& at : comb_atoms(mu_hat, w)) rep.right += at.weight * test.time(at.position);
  rep.residual = std::abs(rep.left - rep.right);
  return rep;
}

VanishingResidual vanishing_combination_residual(const Generator& gen, const PoissonComb& comb, int truncation,
                                                 const std::vector<double>& probes) {
  if (truncation < 1) throw Error(ErrorCode::invalid_argument, "truncation N must be positive");
  if (probes.empty()) throw Error(ErrorCode::invalid_argument, "probe grid is empty");
  if (!gen.continuous_time()) throw Error(ErrorCode::unsupported_generator, "generator is not continuous");
  const PoissonComb mu = canonicalize(comb);
  double xmax = 0.0;
  for (double x : probes) xmax = std::max(xmax, std::abs(x));
  int cells = 64;
  while (cells < truncation + xmax + 2.0) cells *= 2;
  const auto prof = wiener_norm(gen, AmalgamMode::time_domain, cells, 256);
  if (prof.divergent) throw Error(ErrorCode::unsupported_generator, "generator is not in the Wiener amalgam W");

  VanishingResidual out;
  const auto atoms = comb_atoms(mu, {-static_cast<double>(truncation), static_cast<double>(truncation)});
  std::vector<double> pos;
  std::vector<cplx> wts;
  for (const auto& at : atoms) {
    pos.push_back(at.position);
    wts.push_back(at.weight);
  }
  const auto vals = kernels::synthesize([&gen](double x) { return eval_time(gen, x); }, pos, wts, probes);
  for (const auto& v : vals) out.residual = std::max(out.residual, std::abs(v));

  const double scale = coefficient_bound(mu) * atoms_per_unit(mu);
  out.crude_tail_bound = prof.upper_bound() * scale;
  const double gap = truncation - xmax;
  out.interior_tail_bound = gap > 0.0 ? prof.sum_beyond(std::floor(gap)) * scale : out.crude_tail_bound;
  return out;
}

TrigZeroReport trig_zero_set(double a, double b, Interval window) {
  TrigZeroReport rep;
  rep.points = enumerate(PointSet::trig_zero_set(a, b), window);
  if (rep.points.size() >= 2) {
    rep.has_separation = true;
    rep.separation = rep.points[1] - rep.points[0];
    for (std::size_t i = 2; i < rep.points.size(); ++i)
      rep.separation = std::min(rep.separation, rep.points[i] - rep.points[i - 1]);
  }
  rep.first_cell = static_cast<int>(std::floor(window.lo));
  const int last_cell = static_cast<int>(std::ceil(window.hi)) - 1;
  rep.per_unit_counts.assign(std::max(1, last_cell - rep.first_cell + 1), 0);
  for (double z : rep.points) {
    const int c = static_cast<int>(std::floor(z)) - rep.first_cell;
    if (c >= 0 && c < static_cast<int>(rep.per_unit_counts.size())) ++rep.per_unit_counts[c];
  }
  return rep;
}

ApHits ap_intersection_diagnostic(const std::vector<double>& points, double alpha, double beta, double eps) {
  if (!(alpha > 0.0) || !(eps > 0.0) || !(eps < 0.5 * alpha) || !std::isfinite(beta))
    throw Error(ErrorCode::invalid_argument, "need alpha > 0 and 0 < eps < alpha/2");
  ApHits out;
  for (double p : points) {
    const double n = std::round((p - beta) / alpha);
    if (std::abs(p - (alpha * n + beta)) <= eps) out.hits.push_back(p);
  }
  out.count = out.hits.size();
  return out;
}

}  // namespace shiftstab

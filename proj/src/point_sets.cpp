#include "shiftstab/point_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <sstream>

#include "shiftstab/error.hpp"
#include "shiftstab/numerics.hpp"

namespace shiftstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTrigGrid = 0.01;
constexpr long kMaxDenominator = 1000;

void check_window(Interval w) {
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.hi > w.lo))
    throw Error(ErrorCode::invalid_argument, "window must be a nonempty bounded interval");
  if (w.length() > kMaxWindowLength)
    throw Error(ErrorCode::resource_limit, "window longer than 1e6 units");
}

void check_count(double n) {
  if (n > static_cast<double>(kMaxEnumeratedPoints))
    throw Error(ErrorCode::resource_limit, "enumeration would exceed the point limit");
}

std::vector<double> progression_points(double step, double offset, Interval w) {
  const double first = std::ceil((w.lo - offset) / step);
  const double last = std::floor((w.hi - offset) / step);
  std::vector<double> out;
  if (last < first) return out;
  check_count(last - first + 1);
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (double n = first; n <= last; n += 1.0) {
    const double p = offset + n * step;
    if (w.contains(p)) out.push_back(p);
  }
  return out;
}

void merge_close(std::vector<double>& pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts) {
    if (out.empty() || p - out.back() > kMergeTolerance) out.push_back(p);
  }
  pts.swap(out);
}

std::vector<double> trig_roots(double a, double b, Interval w) {
  check_count(w.length() / kTrigGrid);
  const auto m = static_cast<std::size_t>(std::ceil(w.length() / kTrigGrid));
  auto h = [a, b](double z) { return h_ab(a, b, z); };
  std::vector<double> out;
  double z0 = w.lo;
  double h0 = h(z0);
  if (h0 == 0.0) out.push_back(z0);
  for (std::size_t i = 1; i <= m; ++i) {
    const double z1 = std::min(w.hi, w.lo + i * kTrigGrid);
    const double h1 = h(z1);
    if (h1 == 0.0) {
      out.push_back(z1);
    } else if (h0 != 0.0 && (h0 < 0.0) != (h1 < 0.0)) {
      out.push_back(bisect_root(h, z0, z1));
    }
    z0 = z1;
    h0 = h1;
  }
  return out;
}

// Best rational approximation p/q of x with q <= kMaxDenominator, by continued fractions.
std::optional<std::pair<long, long>> rational(double x) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(r);
    const long p2 = static_cast<long>(a) * p1 + p0;
    const long q2 = static_cast<long>(a) * q1 + q0;
    if (q2 > kMaxDenominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) <= 1e-9 * std::max(1.0, std::abs(x)))
      return std::make_pair(p1, q1);
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

// Groups progressions into commensurability classes; each class gets its common period.
struct ProgressionClass {
  std::vector<PointSet::Progression> members;
  double period = 0.0;
};

std::vector<ProgressionClass> commensurability_classes(const std::vector<PointSet::Progression>& ps) {
  std::vector<ProgressionClass> classes;
  std::vector<std::vector<std::pair<long, long>>> ratios;
  for (const auto& p : ps) {
    bool placed = false;
    for (std::size_t c = 0; c < classes.size() && !placed; ++c) {
      if (auto r = rational(p.step / classes[c].members.front().step)) {
        classes[c].members.push_back(p);
        ratios[c].push_back(*r);
        placed = true;
      }
    }
    if (!placed) {
      classes.push_back({{p}, 0.0});
      ratios.push_back({{1, 1}});
    }
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    long num = 1, den = 0;
    for (auto [p, q] : ratios[c]) {
      num = std::lcm(num, p);
      den = std::gcd(den, q);
    }
    classes[c].period = classes[c].members.front().step * static_cast<double>(num) / den;
  }
  return classes;
}

std::optional<double> union_density(const std::vector<PointSet::Progression>& ps) {
  double total = 0.0;
  for (const auto& cls : commensurability_classes(ps)) {
    std::vector<double> residues;
    for (const auto& p : cls.members) {
      const double copies = std::round(cls.period / p.step);
      if (copies > 1e6) return std::nullopt;
      for (double j = 0; j < copies; j += 1.0) {
        double r = std::fmod(p.offset + j * p.step, cls.period);
        if (r < 0.0) r += cls.period;
        residues.push_back(r);
      }
    }
    std::sort(residues.begin(), residues.end());
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
      if (i == 0 || residues[i] - residues[i - 1] > kMergeTolerance) ++distinct;
    }
    // Wraparound: a residue at ~period coincides with one at ~0.
    if (residues.size() > 1 && distinct > 1 &&
        cls.period - residues.back() + residues.front() <= kMergeTolerance)
      --distinct;
    total += static_cast<double>(distinct) / cls.period;
  }
  return total;
}

}  // namespace

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double h_ab(double a, double b, double z) { return std::sin(kPi * z + a) - 0.5 * std::sin(z + b); }

PointSet PointSet::lattice(double step, double offset) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::invalid_argument, "lattice step must be positive");
  if (!std::isfinite(offset)) throw Error(ErrorCode::invalid_argument, "lattice offset must be finite");
  return PointSet(Lattice{step, offset});
}

PointSet PointSet::union_of_progressions(std::vector<Progression> progressions) {
  if (progressions.empty()) throw Error(ErrorCode::invalid_argument, "union needs at least one progression");
  for (const auto& p : progressions) {
    if (!(p.step > 0.0) || !std::isfinite(p.step) || !std::isfinite(p.offset))
      throw Error(ErrorCode::invalid_argument, "progression step must be positive and offset finite");
  }
  return PointSet(UnionOfProgressions{std::move(progressions)});
}

PointSet PointSet::perturbed_lattice(double step, double delta, double omega, double phase, double offset) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::invalid_argument, "perturbed lattice step must be positive");
  if (!(std::abs(delta) < 0.5 * step)) throw Error(ErrorCode::invalid_argument, "perturbation must satisfy |delta| < step/2");
  if (!std::isfinite(omega) || !std::isfinite(phase) || !std::isfinite(offset))
    throw Error(ErrorCode::invalid_argument, "perturbed lattice parameters must be finite");
  return PointSet(PerturbedLattice{step, delta, omega, phase, offset});
}

PointSet PointSet::trig_zero_set(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::invalid_argument, "h_{a,b} parameters must be finite");
  return PointSet(TrigZeroSet{a, b});
}

PointSet PointSet::explicit_points(std::vector<double> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw Error(ErrorCode::invalid_argument, "explicit points must be finite");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw Error(ErrorCode::invalid_argument, "explicit points must be strictly increasing");
  }
  return PointSet(Explicit{std::move(points)});
}

std::string PointSet::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Lattice& l) { os << "lattice(step=" << l.step << ", offset=" << l.offset << ")"; },
                 [&](const UnionOfProgressions& u) { os << "union(" << u.progressions.size() << " progressions)"; },
                 [&](const PerturbedLattice& p) {
                   os << "perturbed_lattice(step=" << p.step << ", delta=" << p.delta << ")";
                 },
                 [&](const TrigZeroSet& t) { os << "trig_zero_set(a=" << t.a << ", b=" << t.b << ")"; },
                 [&](const Explicit& e) { os << "explicit(" << e.points.size() << " points)"; },
             },
             kind_);
  return os.str();
}

std::vector<double> enumerate(const PointSet& set, Interval window) {
  check_window(window);
  return std::visit(
      overloaded{
          [&](const PointSet::Lattice& l) { return progression_points(l.step, l.offset, window); },
          [&](const PointSet::UnionOfProgressions& u) {
            std::vector<double> all;
            for (const auto& p : u.progressions) {
              auto pts = progression_points(p.step, p.offset, window);
              all.insert(all.end(), pts.begin(), pts.end());
              check_count(static_cast<double>(all.size()));
            }
            merge_close(all);
            return all;
          },
          [&](const PointSet::PerturbedLattice& p) {
            const double pad = std::abs(p.delta);
            const double first = std::ceil((window.lo - p.offset - pad) / p.step);
            const double last = std::floor((window.hi - p.offset + pad) / p.step);
            std::vector<double> out;
            if (last < first) return out;
            check_count(last - first + 1);
            for (double n = first; n <= last; n += 1.0) {
              const double x = p.offset + n * p.step + p.delta * std::sin(p.omega * n + p.phase);
              if (window.contains(x)) out.push_back(x);
            }
            return out;
          },
          [&](const PointSet::TrigZeroSet& t) { return trig_roots(t.a, t.b, window); },
          [&](const PointSet::Explicit& e) {
            std::vector<double> out;
            std::copy_if(e.points.begin(), e.points.end(), std::back_inserter(out),
                         [&](double x) { return window.contains(x); });
            return out;
          },
      },
      set.kind());
}

std::optional<double> separation_constant(const PointSet& set, Interval window) {
  const auto pts = enumerate(set, window);
  if (pts.size() < 2) return std::nullopt;
  double best = pts[1] - pts[0];
  for (std::size_t i = 2; i < pts.size(); ++i) best = std::min(best, pts[i] - pts[i - 1]);
  return best;
}

bool is_separated(const PointSet& set) {
  if (const auto* u = std::get_if<PointSet::UnionOfProgressions>(&set.kind()))
    return commensurability_classes(u->progressions).size() == 1;
  return true;
}

std::optional<double> exact_density(const PointSet& set) {
  if (const auto* l = std::get_if<PointSet::Lattice>(&set.kind())) return 1.0 / l->step;
  if (const auto* u = std::get_if<PointSet::UnionOfProgressions>(&set.kind())) return union_density(u->progressions);
  return std::nullopt;
}

DensityEstimate beurling_densities(const PointSet& set, const std::vector<double>& radii, int offset_probes,
                                   double center) {
  if (radii.empty()) throw Error(ErrorCode::invalid_argument, "radius ladder must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw Error(ErrorCode::invalid_argument, "radius ladder must be positive and increasing");
  }
  if (offset_probes < 1) throw Error(ErrorCode::invalid_argument, "offset probes must be positive");

  const double rmax = radii.back();
  const double half = 5.0 * rmax;
  const auto pts = enumerate(set, {center - half, center + half + rmax});

  DensityEstimate est;
  for (double r : radii) {
    DensityRung rung{r, 0.0, std::numeric_limits<double>::infinity()};
    for (int j = 0; j < offset_probes; ++j) {
      const double x = offset_probes == 1 ? center
                                          : center - half + 2.0 * half * j / (offset_probes - 1);
      // Open window (x, x + r).
      const auto lo = std::upper_bound(pts.begin(), pts.end(), x);
      const auto hi = std::lower_bound(pts.begin(), pts.end(), x + r);
      const double ratio = static_cast<double>(std::max<long>(0, hi - lo)) / r;
      rung.sup_ratio = std::max(rung.sup_ratio, ratio);
      rung.inf_ratio = std::min(rung.inf_ratio, ratio);
    }
    est.ladder.push_back(rung);
  }
  if (auto d = exact_density(set)) {
    est.upper = est.lower = *d;
    est.exact = true;
  } else {
    est.upper = est.ladder.back().sup_ratio;
    est.lower = est.ladder.back().inf_ratio;
  }
  return est;
}

PointSet translate_set(const PointSet& set, double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "translation must be finite");
  return std::visit(
      overloaded{
          [&](const PointSet::Lattice& l) { return PointSet::lattice(l.step, l.offset - x); },
          [&](const PointSet::UnionOfProgressions& u) {
            auto ps = u.progressions;
            for (auto& p : ps) p.offset -= x;
            return PointSet::union_of_progressions(std::move(ps));
          },
          [&](const PointSet::PerturbedLattice& p) {
            return PointSet::perturbed_lattice(p.step, p.delta, p.omega, p.phase, p.offset - x);
          },
          [&](const PointSet::TrigZeroSet& t) {
            return PointSet::trig_zero_set(wrap_two_pi(t.a + kPi * x), wrap_two_pi(t.b + x));
          },
          [&](const PointSet::Explicit& e) {
            auto pts = e.points;
            for (auto& p : pts) p -= x;
            return PointSet::explicit_points(std::move(pts));
          },
      },
      set.kind());
}

WeakLimitOrbit weak_limit_params(const PointSet& set, double s, int k_max, int torus_grid) {
  const auto* t = std::get_if<PointSet::TrigZeroSet>(&set.kind());
  if (!t) throw Error(ErrorCode::unsupported_set, "weak-limit parameters exist only for trig zero sets");
  if (k_max < 0 || !std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "need finite s and K >= 0");
  if (torus_grid < 8 || torus_grid > 4096) throw Error(ErrorCode::invalid_argument, "torus grid must be in [8, 4096]");

  WeakLimitOrbit out;
  std::vector<std::pair<double, double>> raw;
  raw.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double x = k * s;
    raw.emplace_back(wrap_two_pi(t->a + kPi * x), wrap_two_pi(t->b + x));
  }
  std::sort(raw.begin(), raw.end());
  for (const auto& p : raw) {
    const bool dup = std::any_of(out.orbit.rbegin(), out.orbit.rend(), [&](const auto& q) {
      return std::abs(q.first - p.first) <= kMergeTolerance && std::abs(q.second - p.second) <= kMergeTolerance;
    });
    if (!dup) out.orbit.push_back(p);
  }

  // Bucketed nearest-point search on the torus.
  const int nb = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(out.orbit.size()))), 1, 256);
  const double bw = kTwoPi / nb;
  std::vector<std::vector<std::pair<double, double>>> buckets(static_cast<std::size_t>(nb) * nb);
  auto bucket_of = [&](double v) { return std::min(nb - 1, static_cast<int>(v / bw)); };
  for (const auto& p : out.orbit) buckets[bucket_of(p.first) * nb + bucket_of(p.second)].push_back(p);
  auto tdist = [](double u, double v) {
    const double d = std::abs(u - v);
    return std::min(d, kTwoPi - d);
  };

  double radius = 0.0;
  for (int i = 0; i < torus_grid; ++i) {
    const double gx = kTwoPi * i / torus_grid;
    for (int j = 0; j < torus_grid; ++j) {
      const double gy = kTwoPi * j / torus_grid;
      const int bx = bucket_of(gx), by = bucket_of(gy);
      double best = std::numeric_limits<double>::infinity();
      for (int ring = 0; ring <= nb / 2 + 1; ++ring) {
        for (int dx = -ring; dx <= ring; ++dx) {
          for (int dy = -ring; dy <= ring; ++dy) {
            if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
            const int cx = ((bx + dx) % nb + nb) % nb;
            const int cy = ((by + dy) % nb + nb) % nb;
            for (const auto& p : buckets[cx * nb + cy]) best = std::min(best, std::hypot(tdist(p.first, gx), tdist(p.second, gy)));
          }
        }
        if (best <= ring * bw) break;
      }
      radius = std::max(radius, best);
    }
  }
  out.covering_radius = radius;
  return out;
}

}  // namespace shiftstab

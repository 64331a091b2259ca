#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shiftstab/error.hpp"
#include "shiftstab/stability.hpp"

using namespace shiftstab;

namespace {

Generator sinc_difference() {
  return Generator::combination(Generator::sinc(), {{cplx(1.0), 0.0}, {cplx(-1.0), 1.0}});
}

std::vector<Interval> ladder(const PointSet& s, std::vector<std::size_t> sizes) { return centered_windows(s, sizes); }

LadderRung rung(std::size_t n, double lo, double hi) { return {{-1.0 * n, 1.0 * n}, n, lo, hi}; }

}  // namespace

TEST_CASE("decide_ladder thresholds") {
  CHECK(decide_ladder({rung(11, 0.5, 1), rung(21, 0.49, 1), rung(41, 0.488, 1)}).verdict == Verdict::stable);
  CHECK(decide_ladder({rung(11, 1e-3, 1), rung(21, 1e-5, 1), rung(41, 1e-8, 1)}).verdict == Verdict::unstable);
  // Already at machine noise on the first rung: still unstable (numerical zero).
  CHECK(decide_ladder({rung(11, 1e-15, 1), rung(21, -1e-15, 1), rung(41, 2e-16, 1)}).verdict == Verdict::unstable);
  // Small but steady, no decay: inconclusive.
  CHECK(decide_ladder({rung(11, 5e-7, 1), rung(21, 4.9e-7, 1), rung(41, 4.8e-7, 1)}).verdict == Verdict::inconclusive);
  // Still moving more than 5%: inconclusive.
  CHECK(decide_ladder({rung(11, 0.5, 1), rung(21, 0.3, 1), rung(41, 0.2, 1)}).verdict == Verdict::inconclusive);
  CHECK(decide_ladder({rung(11, 0.5, 1)}).verdict == Verdict::inconclusive);
}

TEST_CASE("centered_windows holds the N points nearest 0 and nests") {
  const auto w = centered_windows(PointSet::lattice(1.0), {11, 21, 41});
  REQUIRE(w.size() == 3);
  CHECK(enumerate(PointSet::lattice(1.0), w[0]).size() == 11);
  CHECK(enumerate(PointSet::lattice(1.0), w[2]).size() == 41);
  CHECK(w[1].lo <= w[0].lo);
  CHECK(w[2].hi >= w[1].hi);
}

TEST_CASE("periodization examples") {
  SUBCASE("sinc tiles to 1") {
    const auto p = periodization(Generator::sinc(), 1.0, 1024, 8);
    CHECK(p.min_value == 1.0);
    CHECK(p.max_value == 1.0);
  }
  SUBCASE("sinc^2: triangle profile (1-t)^2 + t^2") {
    const auto p = periodization(Generator::sinc_power(2), 1.0, 1024, 16);
    CHECK(std::abs(p.min_value - 0.5) < 1e-6);
    CHECK(std::abs(p.argmin - 0.5) < 1e-9);
    CHECK(std::abs(p.max_value - 1.0) < 1e-6);
    CHECK(std::abs(p.argmax) < 1e-9);
    for (std::size_t i = 0; i < p.grid.size(); i += 37)
      CHECK(std::abs(p.values[i] - oracle::periodized_triangle_sq(p.grid[i])) < 1e-12);
  }
  SUBCASE("B-spline of order 2: sum sinc^4(t + k) with extrema 1/3 and 1") {
    // sinc^4 tails decay like k^-4: 16 cells leave ~1.5e-6, covered by the reported tail bound.
    const auto p16 = periodization(Generator::bspline(2), 1.0, 1024, 16);
    for (std::size_t i = 0; i < p16.grid.size(); i += 101)
      CHECK(std::abs(p16.values[i] - oracle::periodized_sinc4(p16.grid[i])) <= p16.tail_bound);
    const auto p = periodization(Generator::bspline(2), 1.0, 1024, 64);
    CHECK(std::abs(p.min_value - 1.0 / 3.0) < 1e-6);
    CHECK(std::abs(p.max_value - 1.0) < 1e-6);
    for (std::size_t i = 0; i < p.grid.size(); i += 101)
      CHECK(std::abs(p.values[i] - oracle::periodized_sinc4(p.grid[i])) < 1e-6);
  }
  SUBCASE("sinc difference: 4 sin^2(pi t)") {
    const auto p = periodization(sinc_difference(), 1.0, 1024, 8);
    CHECK(std::abs(p.min_value) < 1e-12);
    CHECK(std::abs(p.argmin) < 1e-9);
    CHECK(std::abs(p.max_value - 4.0) < 1e-9);
    CHECK(std::abs(p.argmax - 0.5) < 1e-9);
  }
}

TEST_CASE("periodization invariants") {
  const Generator gens[] = {Generator::gaussian(1.0), Generator::sinc_power(3), Generator::bspline(3)};
  for (const auto& g : gens) {
    const auto p = periodization(g, 0.8, 256, 16);
    double lo = 1e300, hi = -1e300;
    for (double v : p.values) {
      CHECK(v >= 0.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(p.min_value == lo);
    CHECK(p.max_value == hi);
    CHECK(p.tail_bound >= 0.0);
  }
}

TEST_CASE("integer_shift_verdict examples") {
  CHECK(integer_shift_verdict(Generator::gaussian(1.0), 512, 16, 1e-8).verdict == Verdict::stable);
  const auto d = integer_shift_verdict(sinc_difference(), 512, 16, 1e-8);
  CHECK(d.verdict == Verdict::unstable);
  CHECK(std::abs(d.witness_b - std::round(d.witness_b)) < 1e-3);
  CHECK(integer_shift_verdict(Generator::sinc(), 512, 16, 1e-8).verdict == Verdict::stable);
}

TEST_CASE("integer_shift_verdict is invariant under doubling the b grid") {
  const Generator gens[] = {Generator::gaussian(1.0), Generator::gaussian(0.4), Generator::sinc(), sinc_difference(),
                            Generator::sinc_power(3)};
  for (const auto& g : gens) {
    CHECK(integer_shift_verdict(g, 256, 16, 1e-8).verdict == integer_shift_verdict(g, 512, 16, 1e-8).verdict);
  }
}

TEST_CASE("gramian_section examples") {
  SUBCASE("sinc on Z is the identity") {
    const auto g = gramian_section(Generator::sinc(), PointSet::lattice(1.0), {-10.5, 10.5});
    REQUIRE(g.points.size() == 21);
    CHECK((g.entries - Eigen::MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(g.lambda_min - 1.0) < 1e-12);
    CHECK(std::abs(g.lambda_max - 1.0) < 1e-12);
  }
  SUBCASE("gaussian on Z: Jacobi oracle eigenvalues inside the periodization bracket") {
    const auto gen = Generator::gaussian(1.0);
    const auto g = gramian_section(gen, PointSet::lattice(1.0), {-10.5, 10.5});
    const auto ev = oracle::jacobi_eigenvalues(g.entries);
    CHECK(std::abs(g.lambda_min - ev.front()) < 1e-12);
    CHECK(std::abs(g.lambda_max - ev.back()) < 1e-12);
    // Frozen oracle values for the 21-point section.
    CHECK(ev.front() == doctest::Approx(0.41865088967597824).epsilon(1e-10));
    CHECK(ev.back() == doctest::Approx(1.0006403673871833).epsilon(1e-10));
    const auto p = periodization(gen, 1.0, 4096, 16);
    CHECK(ev.front() >= p.min_value - 1e-12);
    CHECK(ev.back() <= p.max_value + 1e-12);
  }
  SUBCASE("sinc^2 on (1/4)Z is near-degenerate") {
    const auto g = gramian_section(Generator::sinc_power(2), PointSet::lattice(0.25), {0, 8});
    CHECK(g.lambda_min < 1e-3);
    const auto ev = oracle::jacobi_eigenvalues(g.entries);
    CHECK(std::abs(g.lambda_min - ev.front()) < 1e-10);
  }
}

TEST_CASE("gramian entries are autocorrelations at differences and Hermitian") {
  const auto gen = Generator::combination(Generator::gaussian(1.0), {{cplx(1.0, 0.5), 0.0}, {cplx(-0.3), 0.6}});
  const auto g = gramian_section(gen, PointSet::perturbed_lattice(1.0, 0.2), {-5, 5});
  CHECK(hermitian_defect(g.entries) < 1e-10);
  for (std::size_t i = 0; i < g.points.size(); ++i)
    for (std::size_t j = 0; j < g.points.size(); ++j)
      CHECK(std::abs(g.entries(i, j) - autocorrelation(gen, g.points[i] - g.points[j])) < 1e-12);
  CHECK(g.lambda_min <= g.lambda_max);
  CHECK(g.eigen.residual_ok());
}

TEST_CASE("l2_stability_estimate examples") {
  const auto z = PointSet::lattice(1.0);
  SUBCASE("sinc on Z") {
    const auto r = l2_stability_estimate(Generator::sinc(), z, ladder(z, {11, 21, 41}));
    CHECK(r.verdict == Verdict::stable);
    CHECK(std::abs(r.c1 - 1.0) < 1e-9);
    CHECK(std::abs(r.c2 - 1.0) < 1e-9);
  }
  SUBCASE("sinc^2 on Z: C1^2 near the profile minimum 1/2") {
    const auto r = l2_stability_estimate(Generator::sinc_power(2), z, ladder(z, {11, 21, 41}));
    CHECK(r.verdict == Verdict::stable);
    CHECK(std::abs(r.c1 * r.c1 - 0.5) < 0.05);
    CHECK(r.c1 <= r.c2);
  }
  SUBCASE("B-spline of order 2 on Z: C1^2 near 1/3") {
    const auto r = l2_stability_estimate(Generator::bspline(2), z, ladder(z, {11, 21, 41}));
    CHECK(r.verdict == Verdict::stable);
    CHECK(std::abs(r.c1 * r.c1 - 1.0 / 3.0) < 1.0 / 30.0);
  }
  SUBCASE("sinc^2 on (1/4)Z is unstable") {
    const auto q = PointSet::lattice(0.25);
    const auto r = l2_stability_estimate(Generator::sinc_power(2), q, ladder(q, {11, 21, 41}));
    CHECK(r.verdict == Verdict::unstable);
    CHECK(r.ladder.back().lambda_min < kLadderFloor);
  }
  SUBCASE("windows must nest strictly") {
    CHECK_THROWS_AS(l2_stability_estimate(Generator::sinc(), z, {{-5, 5}, {-5, 5}}), Error);
  }
}

TEST_CASE("synthesize examples and linearity") {
  const auto s = Generator::sinc();
  const auto z = PointSet::lattice(1.0);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto v = synthesize(s, z, {-0.5, 0.5}, {cplx(1.0)}, grid);
  CHECK(std::abs(v[0] - 1.0) < 1e-12);
  CHECK(std::abs(v[1] - 2.0 / oracle::pi) < 1e-12);
  CHECK(std::abs(v[2]) < 1e-12);

  const auto w = synthesize(s, z, {-0.5, 1.5}, {cplx(1.0), cplx(-1.0)}, {0.5});
  CHECK(std::abs(w[0]) < 1e-12);

  const auto zero = synthesize(Generator::gaussian(1.0), z, {-3, 3}, std::vector<cplx>(7), grid);
  for (const auto& x : zero) CHECK(x == cplx(0.0));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  const auto gen = Generator::sinc_power(3);
  const auto pts = enumerate(PointSet::perturbed_lattice(1.0, 0.1), {-6, 6});
  std::vector<cplx> a(pts.size()), b(pts.size()), ab(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a[i] = {n(rng), n(rng)};
    b[i] = {n(rng), n(rng)};
    ab[i] = a[i] + b[i];
  }
  std::vector<double> g;
  for (double x = -8; x <= 8; x += 0.13) g.push_back(x);
  const auto fa = synthesize(gen, pts, a, g), fb = synthesize(gen, pts, b, g), fab = synthesize(gen, pts, ab, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(fab[i] - fa[i] - fb[i]) < 1e-12);
}

TEST_CASE("l2_norm_consistency examples") {
  const auto z = PointSet::lattice(1.0);
  SUBCASE("sinc with a loose truncation limit") {
    const auto pts = enumerate(z, {-0.5, 1.5});
    const auto r = l2_norm_consistency(Generator::sinc(), pts, {cplx(1.0), cplx(1.0)}, {-40, 40}, 1.0);
    CHECK(std::abs(r.quadratic_form - 2.0) < 1e-3);
    CHECK(std::abs(r.quadrature - 2.0) < 1e-3);
  }
  SUBCASE("sinc over [-40, 40] violates the default limit") {
    const auto pts = enumerate(z, {-0.5, 1.5});
    CHECK_THROWS_AS(l2_norm_consistency(Generator::sinc(), pts, {cplx(1.0), cplx(1.0)}, {-40, 40}), Error);
  }
  SUBCASE("gaussian on two explicit points") {
    const auto r = l2_norm_consistency(Generator::gaussian(1.0), {0.0, 0.7}, {cplx(1.0), cplx(-1.0)}, {-20, 20});
    CHECK(std::abs(r.quadratic_form - r.quadrature) < 1e-6);
    // Oracle: 2 (A(0) - A(0.7)) with A(x) = e^{-pi x^2 / 2} / sqrt 2.
    const double o = 2 * (std::sqrt(0.5) - std::sqrt(0.5) * std::exp(-oracle::pi * 0.49 / 2));
    CHECK(std::abs(r.quadratic_form - o) < 1e-12);
  }
  SUBCASE("zero coefficients") {
    const auto r = l2_norm_consistency(Generator::gaussian(1.0), {0.0, 0.7}, {cplx(0.0), cplx(0.0)}, {-20, 20});
    CHECK(r.quadratic_form == 0.0);
    CHECK(r.quadrature == 0.0);
  }
}

TEST_CASE("l2_norm_consistency agrees within the truncation bound over 100 draws") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> n;
  const auto pts = enumerate(PointSet::lattice(1.0), {-5, 5});
  for (const auto& gen : {Generator::gaussian(1.0), Generator::sinc_power(2)}) {
    const Interval domain = std::holds_alternative<Generator::Gaussian>(gen.kind()) ? Interval{-25, 25} : Interval{-205, 205};
    for (int d = 0; d < 100; ++d) {
      std::vector<cplx> c(pts.size());
      for (auto& x : c) x = {n(rng), n(rng)};
      const auto r = l2_norm_consistency(gen, pts, c, domain, 1e-3);
      CHECK(std::abs(r.quadratic_form - r.quadrature) <= r.truncation_bound + 1e-10 * r.quadratic_form);
    }
  }
}

TEST_CASE("linf_stability_search examples") {
  const auto pts13 = [](double a) { return enumerate(PointSet::lattice(a), centered_windows(PointSet::lattice(a), {13})[0]); };
  SUBCASE("sinc^2 on Z stays bounded below") {
    const auto pts = pts13(1.0);
    REQUIRE(pts.size() == 13);
    const auto r = linf_stability_search(Generator::sinc_power(2), pts, 10000, 1);
    CHECK(r.bound >= 0.1);
    CHECK(r.bound <= 1.0 + 1e-12);  // interpolating generator: the sup is at least max |c_j|
    CHECK(r.witness.size() == pts.size());
  }
  SUBCASE("sinc^2 on (1/4)Z finds a small witness") {
    const auto r = linf_stability_search(Generator::sinc_power(2), pts13(0.25), 10000, 1);
    CHECK(r.bound <= 0.05);
  }
  SUBCASE("gaussian on Z") {
    const auto r = linf_stability_search(Generator::gaussian(1.0), pts13(1.0), 10000, 1);
    CHECK(r.bound >= 0.05);
  }
  SUBCASE("same seed, same answer") {
    const auto a = linf_stability_search(Generator::gaussian(1.0), pts13(1.0), 3000, 42);
    const auto b = linf_stability_search(Generator::gaussian(1.0), pts13(1.0), 3000, 42);
    CHECK(a.bound == b.bound);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("progression_union_upper_check examples") {
  const auto one = progression_union_upper_check(Generator::sinc_power(2), {{1.0, 0.0}});
  CHECK(one.bounded);
  REQUIRE(one.sups.size() == 1);
  CHECK(std::abs(one.sups[0] - 1.0) < 1e-6);

  const auto two = progression_union_upper_check(Generator::sinc_power(2), {{1.0, 0.0}, {std::sqrt(2.0), 0.0}});
  CHECK(two.bounded);
  for (double s : two.sups) CHECK(std::isfinite(s));

  // Without a declared support the trapezoid transform is periodic, so |F^|^2 is not in W.
  const auto heavy = Generator::sampled(0.5, -0.5, {cplx(0.5), cplx(1.0), cplx(0.5)});
  CHECK_FALSE(progression_union_upper_check(heavy, {{1.0, 0.0}}).bounded);
}

TEST_CASE("property: Cauchy interlacing along nested ladders") {
  const Generator gens[] = {Generator::sinc(), Generator::sinc_power(2), Generator::gaussian(0.7), Generator::bspline(3),
                            sinc_difference()};
  const PointSet sets[] = {PointSet::lattice(1.0), PointSet::lattice(0.4), PointSet::perturbed_lattice(0.8, 0.15),
                           PointSet::trig_zero_set(0, 0), PointSet::union_of_progressions({{1, 0}, {2, 0.5}})};
  for (const auto& g : gens) {
    for (const auto& s : sets) {
      const auto r = l2_stability_estimate(g, s, ladder(s, {7, 15, 31, 63}));
      for (std::size_t i = 1; i < r.ladder.size(); ++i) {
        CHECK(r.ladder[i].lambda_min <= r.ladder[i - 1].lambda_min + 1e-9);
        CHECK(r.ladder[i].lambda_max >= r.ladder[i - 1].lambda_max - 1e-9);
      }
      if (r.verdict != Verdict::unstable) CHECK(r.c1 <= r.c2);
    }
  }
}

TEST_CASE("property: on Z the last rung sits inside the periodization bracket") {
  const Generator gens[] = {Generator::sinc(), Generator::sinc_power(2), Generator::sinc_power(3), Generator::gaussian(1.0),
                            Generator::bspline(2), Generator::bspline(4)};
  const auto z = PointSet::lattice(1.0);
  for (const auto& g : gens) {
    const auto p = periodization(g, 1.0, 2048, 16);
    const auto r = l2_stability_estimate(g, z, ladder(z, {11, 21, 41}));
    const double slack = p.tail_bound + 0.05 * p.max_value;
    CAPTURE(g.describe());
    CHECK(r.ladder.back().lambda_min >= p.min_value - slack);
    CHECK(r.ladder.back().lambda_min <= p.min_value + slack);
    CHECK(r.ladder.back().lambda_max <= p.max_value + slack);
    CHECK(r.ladder.back().lambda_max >= p.max_value - slack);
  }
}

TEST_CASE("property: the Gramian is positive semidefinite on probed vectors") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n;
  const auto g = gramian_section(Generator::sinc_power(2), PointSet::lattice(0.3), {-6, 6});
  for (int d = 0; d < 200; ++d) {
    Eigen::VectorXcd c(g.entries.rows());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = cplx(n(rng), n(rng));
    const cplx q = c.adjoint() * g.entries * c;
    CHECK(q.real() >= -1e-12 * c.squaredNorm());
  }
}

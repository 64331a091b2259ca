#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shiftstab/error.hpp"
#include "shiftstab/generators.hpp"

using namespace shiftstab;

namespace {

Generator sinc_difference() {
  return Generator::combination(Generator::sinc(), {{cplx(1.0), 0.0}, {cplx(-1.0), 1.0}});
}

Generator sinc_sq_difference() {
  return Generator::combination(Generator::sinc_power(2), {{cplx(1.0), 0.0}, {cplx(-1.0), 1.0}});
}

std::vector<double> probes() {
  std::vector<double> p;
  for (double x = -7.3; x <= 7.3; x += 0.37) p.push_back(x);
  return p;
}

}  // namespace

TEST_CASE("eval_time: closed-form values") {
  CHECK(eval_time(Generator::sinc(), 0.0) == cplx(1.0));
  CHECK(std::abs(eval_time(Generator::sinc(), 1.0)) < 1e-16);
  CHECK(std::abs(eval_time(Generator::gaussian(1.0), 0.5) - std::exp(-oracle::pi / 4)) < 1e-12);
  CHECK(std::abs(eval_time(Generator::bspline(2), 0.25) - 0.75) < 1e-15);
}

TEST_CASE("eval_freq: indicator, triangle, gaussian") {
  const auto s = Generator::sinc();
  CHECK(eval_freq(s, 0.25) == cplx(1.0));
  CHECK(eval_freq(s, 0.75) == cplx(0.0));
  // Half-open support: the left edge is in, the right edge is out.
  CHECK(eval_freq(s, -0.5) == cplx(1.0));
  CHECK(eval_freq(s, 0.5) == cplx(0.0));
  CHECK(std::abs(eval_freq(Generator::sinc_power(2), 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(eval_freq(Generator::gaussian(2.0), 0.3) - 2.0 * std::exp(-oracle::pi * 4 * 0.09)) < 1e-15);
  CHECK(std::abs(eval_freq(Generator::bspline(3), 0.4) - std::pow(oracle::sinc(0.4), 3)) < 1e-15);
}

TEST_CASE("eval_freq of sinc^2 matches brute-force quadrature of its Fourier integral") {
  const auto g = Generator::sinc_power(2);
  for (double t : {0.0, 0.3, 0.7}) {
    // sinc^2 decays like x^-2; integrate over [-400, 400] and accept the tail error.
    const double v = oracle::simpson(
        [&](double x) { return std::pow(oracle::sinc(x), 2) * std::cos(2 * oracle::pi * x * t); }, -400.0, 400.0, 400000);
    CHECK(std::abs(eval_freq(g, t).real() - v) < 2e-3);
    CHECK(std::abs(eval_freq(g, t).real() - oracle::triangle(t)) < 1e-15);
  }
}

TEST_CASE("analytic kinds agree with independent closed forms at probe points") {
  for (double x : probes()) {
    CHECK(std::abs(eval_time(Generator::sinc(), x) - oracle::sinc(x)) < 1e-15);
    CHECK(std::abs(eval_time(Generator::sinc_power(3), x) - std::pow(oracle::sinc(x), 3)) < 1e-15);
    CHECK(std::abs(eval_time(Generator::gaussian(1.5), x) - std::exp(-oracle::pi * x * x / 2.25)) < 1e-15);
    CHECK(std::abs(eval_freq(Generator::sinc_power(2), x) - oracle::triangle(x)) < 1e-15);
  }
}

TEST_CASE("SincPower(1) coincides with Sinc") {
  const auto a = Generator::sinc_power(1), b = Generator::sinc();
  for (double x : probes()) {
    CHECK(std::abs(eval_time(a, x) - eval_time(b, x)) < 1e-15);
    CHECK(std::abs(eval_freq(a, x) - eval_freq(b, x)) < 1e-15);
  }
}

TEST_CASE("eval_freq of SincPower(n) matches the brute-force indicator convolution") {
  for (int n : {2, 3, 4}) {
    const oracle::IndicatorConvolution conv(n, 1e-3);
    const auto g = Generator::sinc_power(n);
    double worst = 0.0;
    for (double t = -n / 2.0; t <= n / 2.0; t += 0.0137) worst = std::max(worst, std::abs(eval_freq(g, t).real() - conv(t)));
    CAPTURE(n);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("sampled generator: zero outside the grid extent, linear inside") {
  const auto g = Generator::sampled(0.5, -1.0, {cplx(1.0), cplx(3.0), cplx(-1.0)});
  CHECK(eval_time(g, -1.5) == cplx(0.0));
  CHECK(eval_time(g, 0.5) == cplx(0.0));
  CHECK(std::abs(eval_time(g, -0.75) - 2.0) < 1e-15);
  CHECK(std::abs(eval_time(g, 0.0) - (-1.0)) < 1e-15);
  // Trapezoid of the Fourier integral at t = 0 is h * (f0/2 + f1 + f2/2).
  CHECK(std::abs(eval_freq(g, 0.0) - 0.5 * (0.5 + 3.0 - 0.5)) < 1e-15);
}

TEST_CASE("factories reject invalid parameters") {
  CHECK_THROWS_AS(Generator::sinc_power(0), Error);
  CHECK_THROWS_AS(Generator::gaussian(-1.0), Error);
  CHECK_THROWS_AS(Generator::bspline(17), Error);
  CHECK_THROWS_AS(Generator::sampled(0.0, 0.0, {cplx(1.0)}), Error);
  CHECK_THROWS_AS(Generator::combination(Generator::sinc(), {}), Error);
}

TEST_CASE("wiener_norm examples") {
  SUBCASE("sinc time domain diverges") {
    const auto p = wiener_norm(Generator::sinc(), AmalgamMode::time_domain, 64, 256);
    CHECK(p.divergent);
    CHECK(std::isinf(p.upper_bound()));
  }
  SUBCASE("sinc squared-transform sums the two cells adjacent to 0") {
    const auto p = wiener_norm(Generator::sinc(), AmalgamMode::freq_squared, 8, 256);
    CHECK_FALSE(p.divergent);
    CHECK(p.total == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("gaussian time domain matches the edge-value series") {
    double series = 0.0;
    for (int k = 0; k < 40; ++k) series += std::exp(-oracle::pi * k * k);
    const auto p = wiener_norm(Generator::gaussian(1.0), AmalgamMode::time_domain, 32, 256);
    CHECK(std::abs(p.total - 2 * series) < 1e-8);
    CHECK(p.total >= 0.0);
  }
}

TEST_CASE("wiener_norm is stable under doubling probes past 1024") {
  for (const auto& g : {Generator::gaussian(1.0), Generator::sinc_power(2), Generator::sinc_power(3)}) {
    for (auto mode : {AmalgamMode::time_domain, AmalgamMode::freq_squared}) {
      const auto a = wiener_norm(g, mode, 32, 1024);
      const auto b = wiener_norm(g, mode, 32, 2048);
      CHECK(std::abs(a.total - b.total) < 1e-10);
    }
  }
}

TEST_CASE("autocorrelation examples") {
  CHECK(std::abs(autocorrelation(Generator::sinc(), 0.0) - 1.0) < 1e-12);
  CHECK(std::abs(autocorrelation(Generator::sinc(), 3.0)) < 1e-12);
  CHECK(std::abs(autocorrelation(Generator::gaussian(1.0), 0.0) - std::sqrt(0.5)) < 1e-10);
  CHECK(std::abs(autocorrelation(Generator::sinc_power(2), 0.0) - 2.0 / 3.0) < 1e-12);
  // B_2 * B_2 = B_4: B_4(0) = 2/3, B_4(1) = 1/6.
  CHECK(std::abs(autocorrelation(Generator::bspline(2), 1.0) - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("autocorrelation matches brute-force time-domain convolution") {
  const auto g = Generator::gaussian(0.8);
  const auto diff = sinc_sq_difference();
  for (double x : {0.0, 0.4, 1.3, -2.1}) {
    const auto o = oracle::autocorrelation([&](double y) { return eval_time(g, y); }, x, 12.0, 24000);
    CHECK(std::abs(autocorrelation(g, x) - o) < 1e-10);
    const auto od = oracle::autocorrelation([&](double y) { return eval_time(diff, y); }, x, 600.0, 600000);
    CHECK(std::abs(autocorrelation(diff, x) - od) < 1e-5);
  }
}

TEST_CASE("autocorrelation is Hermitian at every probe") {
  const Generator gens[] = {Generator::sinc(), Generator::sinc_power(3), Generator::gaussian(1.2),
                            Generator::bspline(3), sinc_difference(),
                            Generator::combination(Generator::gaussian(1.0), {{cplx(1.0, 1.0), 0.0}, {cplx(0.5), 0.7}})};
  for (const auto& g : gens) {
    for (double x : {0.3, 1.1, 2.7}) {
      CHECK(std::abs(autocorrelation(g, -x) - std::conj(autocorrelation(g, x))) < 1e-10);
    }
  }
}

TEST_CASE("autocorrelation at 0 equals the frequency quadrature of |F^|^2") {
  const Generator gens[] = {Generator::sinc(), Generator::sinc_power(2), Generator::sinc_power(4), sinc_difference()};
  for (const auto& g : gens) {
    const auto support = *g.freq_support();
    // Sinc-type transforms are half-open indicators; stop just short of the right edge.
    const double q = oracle::simpson([&](double t) { return std::norm(eval_freq(g, t)); }, support.lo,
                                     std::nextafter(support.hi, support.lo), 200000);
    const cplx a = autocorrelation(g, 0.0);
    CHECK(a.real() > 0.0);
    CHECK(std::abs(a.imag()) < 1e-12);
    CHECK(std::abs(a.real() - q) < 1e-8);
  }
}

TEST_CASE("freq_zero_set examples") {
  SUBCASE("gaussian has no zeros") {
    const auto z = freq_zero_set(Generator::gaussian(1.0), {-5, 5}, 0.005, 1e-12);
    CHECK(z.zeros.empty());
    CHECK(z.null_intervals.empty());
    CHECK(z.locally_finite);
  }
  SUBCASE("triangle vanishes outside (-1, 1)") {
    const auto z = freq_zero_set(Generator::sinc_power(2), {-3, 3}, 0.005, 1e-12);
    CHECK(z.zeros.empty());
    REQUIRE(z.null_intervals.size() == 2);
    CHECK(z.null_intervals[0].lo == -3.0);
    CHECK(std::abs(z.null_intervals[0].hi + 1.0) < 1e-6);
    CHECK(std::abs(z.null_intervals[1].lo - 1.0) < 1e-6);
    CHECK(z.null_intervals[1].hi == 3.0);
  }
  SUBCASE("sinc difference: isolated zero at 0 plus the null exterior") {
    const auto z = freq_zero_set(sinc_difference(), {-2, 2}, 0.005, 1e-9);
    REQUIRE(z.zeros.size() == 1);
    CHECK(std::abs(z.zeros[0]) < 1e-9);
    REQUIRE(z.null_intervals.size() == 2);
    CHECK(std::abs(z.null_intervals[0].hi + 0.5) < 1e-2);
    CHECK(std::abs(z.null_intervals[1].lo - 0.5) < 1e-2);
  }
}

TEST_CASE("freq_zero_set invariants: increasing zeros below tolerance") {
  // F^(t) = sinc(t)^3 (1 - e^{-2 pi i t}) has zeros at every nonzero integer and at 0.
  const auto g = Generator::combination(Generator::bspline(3), {{cplx(1.0), 0.0}, {cplx(-1.0), 1.0}});
  const double tol = 1e-9;
  const auto z = freq_zero_set(g, {-6.5, 6.5}, 0.005, tol);
  CHECK(z.zeros.size() == 13);
  for (std::size_t i = 1; i < z.zeros.size(); ++i) CHECK(z.zeros[i] > z.zeros[i - 1]);
  for (double x : z.zeros) CHECK(std::abs(eval_freq(g, x)) < tol);
  CHECK(z.locally_finite);
}

TEST_CASE("level_set examples and monotonicity") {
  const auto s = level_set(Generator::sinc(), 0.5, {-2, 2}, 0.001);
  REQUIRE(s.intervals().size() == 1);
  CHECK(std::abs(s.intervals()[0].lo + 0.5) < 1e-9);
  CHECK(std::abs(s.intervals()[0].hi - 0.5) < 1e-9);
  CHECK(std::abs(s.measure() - 1.0) < 1e-9);

  const auto apex = level_set(Generator::sinc_power(2), 0.999, {-2, 2}, 0.001);
  REQUIRE(apex.intervals().size() == 1);
  CHECK(std::abs(apex.measure() - 0.002) < 1e-9);

  CHECK(level_set(Generator::gaussian(1.0), 2.0, {-2, 2}, 0.001).empty());

  const Generator gens[] = {Generator::sinc_power(2), Generator::gaussian(1.0), sinc_difference()};
  for (const auto& g : gens) {
    double prev = 1e300;
    for (double r : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9, 1.5}) {
      const double m = level_set(g, r, {-4, 4}, 0.001).measure();
      CHECK(m <= prev + 1e-12);
      prev = m;
    }
  }
}

TEST_CASE("freq_sup") {
  CHECK(freq_sup(Generator::sinc_power(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(freq_sup(sinc_difference()) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(freq_sup(Generator::gaussian(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
}

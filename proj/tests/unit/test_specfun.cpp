#include <cmath>
#include <random>

#include "doctest.h"
#include "twolayer/errors.hpp"
#include "twolayer/specfun.hpp"

using namespace twolayer;
using namespace twolayer::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("bessel_j at the origin and at one") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-15));
}

TEST_CASE("hankel1 reference values at one") {
  const Complex h0 = hankel1(0, 1.0);
  const Complex h1 = hankel1(1, 1.0);
  CHECK(std::abs(h0 - Complex(0.7651976865579666, 0.0882569642156769)) < 1e-14);
  CHECK(std::abs(h1 - Complex(0.4400505857449335, -0.7812128213002887)) < 1e-14);
}

TEST_CASE("bessel values against 30-digit references") {
  // mpmath at 30 digits
  const double ref[][5] = {
      {0.5, 0.93846980724081290423, 0.24226845767487388638, -0.44451873350670655715, -1.4714723926702430692},
      {7.3, 0.28821694763501438437, 0.08257043049325788024, 0.062773886374037648286, -0.28459437186807209037},
      {33.3, 0.063338485947520899644, 0.12386214790148026, 0.12289749913503750069, -0.061500722807785380471},
      {69.83581590166114, 0.095265794762546237443, -0.0056540807676910049765, -0.0063359532356795770717,
       -0.095313596555327566872},
      {96.84718880879467, -0.019423528779351284617, 0.078615986870444542995, 0.078715214586474446983,
       0.019830165510220296337},
  };
  // J1(69.8...) is close to a zero, so errors are scaled by the local
  // amplitude sqrt(2 / (pi z)) as well.
  for (const auto& r : ref) {
    const BesselSet b = bessel_set(r[0]);
    const double amp = std::min(1.0, std::sqrt(2.0 / (kPi * r[0])));
    auto err = [&](double v, double x) { return std::abs(v - x) / std::max(std::abs(x), amp); };
    CHECK(err(b.j0, r[1]) <= 1e-13);
    CHECK(err(b.j1, r[2]) <= 1e-13);
    CHECK(err(b.y0, r[3]) <= 1e-12);
    CHECK(err(b.y1, r[4]) <= 1e-12);
  }
}

TEST_CASE("bessel functions agree with the standard library") {
  // libstdc++ special functions are an independent implementation. Near a
  // zero only the error relative to the local amplitude is meaningful.
  // libstdc++ itself is off by up to ~1.3e-13 near z = 97, hence the slack.
  double worst_j = 0.0, worst_y = 0.0;
  for (double z = 1e-3; z <= 100.0; z *= 1.037) {
    const BesselSet b = bessel_set(z);
    const double amp = std::min(1.0, std::sqrt(2.0 / (kPi * z)));
    auto err = [&](double v, double ref) { return std::abs(v - ref) / std::max(std::abs(ref), amp); };
    worst_j = std::max({worst_j, err(b.j0, std::cyl_bessel_j(0.0, z)), err(b.j1, std::cyl_bessel_j(1.0, z))});
    worst_y = std::max({worst_y, err(b.y0, std::cyl_neumann(0.0, z)), err(b.y1, std::cyl_neumann(1.0, z))});
  }
  CHECK(worst_j < 3e-13);
  CHECK(worst_y < 1e-12);
}

TEST_CASE("hankel1 relative accuracy on [1e-8, 100]") {
  double worst = 0.0;
  for (double z = 1e-8; z <= 100.0; z *= 1.09) {
    const Complex ref(std::cyl_bessel_j(0.0, z), std::cyl_neumann(0.0, z));
    const Complex ref1(std::cyl_bessel_j(1.0, z), std::cyl_neumann(1.0, z));
    worst = std::max({worst, std::abs(hankel1(0, z) - ref) / std::abs(ref), std::abs(hankel1(1, z) - ref1) / std::abs(ref1)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("hankel1 derivative relation") {
  for (double z : {0.3, 1.7, 6.0, 27.0, 60.0}) {
    const double h = 1e-5 * z;
    const Complex d = (hankel1(0, z + h) - hankel1(0, z - h)) / (2.0 * h);
    CHECK(std::abs(d + hankel1(1, z)) < 1e-7 * std::abs(hankel1(1, z)));
  }
}

TEST_CASE("hankel1 rejects non-positive arguments") {
  CHECK_THROWS_AS(hankel1(0, 0.0), DomainError);
  CHECK_THROWS_AS(hankel1(1, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_set(std::nan("")), DomainError);
}

TEST_CASE("Wronskian J1 Y0 - J0 Y1 = 2 / (pi z)") {
  for (double z = 0.1; z <= 50.0; z += 0.0731) {
    const BesselSet b = bessel_set(z);
    const double w = b.j1 * b.y0 - b.j0 * b.y1;
    CHECK(rel(w, 2.0 / (kPi * z)) < 1e-10);
  }
}

TEST_CASE("branch square roots") {
  CHECK(sqrt_branch1(0.0) == Complex(0.0));
  CHECK(std::abs(sqrt_branch1(-1.0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(sqrt_branch1(4.0) - 2.0) < 1e-15);
  CHECK(sqrt_branch2(0.0) == Complex(0.0));
  CHECK(std::abs(sqrt_branch2(-1.0) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(sqrt_branch2(4.0) - 2.0) < 1e-15);
  CHECK_THROWS_AS(sqrt_branch1(Complex(0.0, 2.0)), DomainError);
  CHECK_THROWS_AS(sqrt_branch2(Complex(0.0, -2.0)), DomainError);
}

TEST_CASE("branch square roots square back on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(u(rng), u(rng));
    if (z.real() == 0.0) continue;
    const Complex s1 = sqrt_branch1(z);
    const Complex s2 = sqrt_branch2(z);
    CHECK(std::abs(s1 * s1 - z) < 1e-13 * std::abs(z));
    CHECK(std::abs(s2 * s2 - z) < 1e-13 * std::abs(z));
    // Arguments inside the stated ranges: S1 avoids (pi/4, 3pi/4], S2 avoids (-3pi/4, -pi/4].
    const double a1 = std::arg(s1), a2 = std::arg(s2);
    CHECK(!(a1 > kPi / 4 + 1e-12 && a1 < 3 * kPi / 4));
    CHECK(!(a2 < -kPi / 4 - 1e-12 && a2 > -3 * kPi / 4));
  }
}

TEST_CASE("vertical wavenumber on the real axis") {
  CHECK(std::abs(vertical_wavenumber(0.0, 1.0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(vertical_wavenumber(2.0, 1.0) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(vertical_wavenumber(0.5, 1.0) - Complex(0.0, -std::sqrt(0.75))) < 1e-15);
  for (double a : {0.5, 2.7, 3.5}) {
    for (double xi = -10 * a; xi <= 10 * a; xi += 0.0137 * a) {
      const Complex s = vertical_wavenumber(xi, a);
      CHECK(s.real() >= 0.0);
      CHECK(s.imag() <= 0.0);
      const double target = xi * xi - a * a;
      CHECK(std::abs(s * s - target) <= 1e-12 * std::max(std::abs(target), a * a));
    }
  }
}

TEST_CASE("critical angle") {
  CHECK(critical_angle(2.0, 1.0) == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(critical_angle(1.0, 2.0) == doctest::Approx(kPi / 3).epsilon(1e-15));
  // arccos(2.7/3.5) to 16 digits (mpmath)
  CHECK(critical_angle(3.5, 2.7) == doctest::Approx(0.6897131539706121).epsilon(1e-14));
  CHECK_THROWS_AS(critical_angle(2.0, 2.0), DomainError);
}

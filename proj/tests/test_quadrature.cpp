#include <doctest.h>

#include <cmath>

#include "movingslab/quadrature.hpp"
#include "approx.hpp"
#include "support.hpp"

using movingslab::gauss_legendre;

TEST_CASE("low orders")
{
   const auto one = gauss_legendre(-1.0, 1.0, 1);
   CHECK(one.nodes[0] == 0.0);
   CHECK(one.weights[0] == testing::approx(2.0).epsilon(1e-15));

   // Symmetric two-point rule: w = 1 and x^2 = 1/3 from the x^0 and x^2 moments.
   const auto two = gauss_legendre(-1.0, 1.0, 2);
   CHECK(two.nodes[0] == testing::approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
   CHECK(two.nodes[1] == testing::approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
   CHECK(two.nodes[1] == testing::approx(0.5773503).epsilon(1e-7));
   CHECK(two.weights[0] == testing::approx(1.0).epsilon(1e-15));

   const auto half = gauss_legendre(0.0, 1.0, 2);
   CHECK(half.integrate([](double x) { return x * x * x; }) == testing::approx(0.25).epsilon(1e-15));
}

TEST_CASE("polynomial exactness")
{
   testing::Sampler rng(17);
   for (int n = 1; n <= 64; ++n)
   {
      const double lo = rng.uniform(-1.0, 0.5);
      const double hi = rng.uniform(lo + 1e-3, 1.0);
      const auto rule = gauss_legendre(lo, hi, n);
      REQUIRE(rule.size() == n);
      REQUIRE(std::abs(rule.weights.sum() - (hi - lo)) < 1e-12);
      for (Eigen::Index i = 0; i < rule.size(); ++i)
      {
         REQUIRE(rule.nodes[i] > lo);
         REQUIRE(rule.nodes[i] < hi);
         REQUIRE(rule.weights[i] > 0.0);
         if (i > 0)
            REQUIRE(rule.nodes[i] > rule.nodes[i - 1]);
      }
      // Shifted monomials stay well scaled at high degree.
      const double mid = 0.5 * (lo + hi);
      const double h = 0.5 * (hi - lo);
      for (int k = 0; k <= 2 * n - 1; ++k)
      {
         const double got = rule.integrate([&](double x) { return std::pow((x - mid) / h, k); });
         const double exact = k % 2 == 1 ? 0.0 : 2.0 * h / (k + 1);
         REQUIRE(std::abs(got - exact) < 1e-12 * std::max(1.0, 2.0 * h));
      }
   }
}

TEST_CASE("invalid rules")
{
   CHECK_THROWS_AS(gauss_legendre(0.0, 1.0, 0), std::domain_error);
   CHECK_THROWS_AS(gauss_legendre(1.0, 0.0, 4), std::domain_error);
   CHECK_THROWS_AS(gauss_legendre(0.0, 1.5, 4), std::domain_error);
   CHECK_THROWS_AS(gauss_legendre(-1.5, 0.0, 4), std::domain_error);
}

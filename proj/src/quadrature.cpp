#include "movingslab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

namespace movingslab {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_and_derivative(Eigen::Index n, double x)
{
   double p_prev = 1.0;
   double p = x;
   for (Eigen::Index k = 2; k <= n; ++k)
   {
      const double kd = static_cast<double>(k);
      const double p_next = ((2.0 * kd - 1.0) * x * p - (kd - 1.0) * p_prev) / kd;
      p_prev = p;
      p = p_next;
   }
   const double nd = static_cast<double>(n);
   const double dp = nd * (x * p - p_prev) / (x * x - 1.0);
   return {p, dp};
}

}  // namespace

AngularQuadrature gauss_legendre(double lo, double hi, Eigen::Index n)
{
   if (n < 1)
      throw std::domain_error("Gauss-Legendre needs at least one node");
   if (!(lo < hi) || lo < -1.0 || hi > 1.0)
      throw std::domain_error("Gauss-Legendre interval must satisfy -1 <= lo < hi <= 1");

   Eigen::VectorXd x(n);
   Eigen::VectorXd w(n);
   if (n == 1)
   {
      x[0] = 0.0;
      w[0] = 2.0;
   }
   else
   {
      Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index k = 1; k < n; ++k)
      {
         const double kd = static_cast<double>(k);
         const double b = kd / std::sqrt(4.0 * kd * kd - 1.0);
         jacobi(k, k - 1) = b;
         jacobi(k - 1, k) = b;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
      x = solver.eigenvalues();

      for (Eigen::Index i = 0; i < n; ++i)
      {
         double xi = x[i];
         for (int iter = 0; iter < 3; ++iter)
         {
            const auto [p, dp] = legendre_and_derivative(n, xi);
            xi -= p / dp;
         }
         x[i] = xi;
         const auto dp = legendre_and_derivative(n, xi).second;
         w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
      }
      // Enforce the x -> -x symmetry of the rule.
      for (Eigen::Index i = 0; i < n / 2; ++i)
      {
         const Eigen::Index j = n - 1 - i;
         const double xm = 0.5 * (x[j] - x[i]);
         const double wm = 0.5 * (w[i] + w[j]);
         x[i] = -xm;
         x[j] = xm;
         w[i] = wm;
         w[j] = wm;
      }
      if (n % 2 == 1)
         x[n / 2] = 0.0;
   }

   const double half = 0.5 * (hi - lo);
   const double mid = 0.5 * (hi + lo);
   AngularQuadrature rule;
   rule.nodes = (mid + half * x.array()).matrix();
   rule.weights = half * w;
   return rule;
}

}  // namespace movingslab

#ifndef MOVINGSLAB_QUADRATURE_HPP
#define MOVINGSLAB_QUADRATURE_HPP

#include <Eigen/Core>

namespace movingslab {

/// Nodes and positive weights for integrating over a direction-cosine interval.
struct AngularQuadrature
{
   Eigen::VectorXd nodes;
   Eigen::VectorXd weights;

   Eigen::Index size() const noexcept { return nodes.size(); }

   template <typename F>
   double integrate(F&& f) const
   {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < nodes.size(); ++i)
         sum += weights[i] * f(nodes[i]);
      return sum;
   }
};

/// n-point Gauss-Legendre rule on (lo, hi), exact for polynomials of degree
/// 2n - 1. Nodes are returned in ascending order.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix
/// (Golub-Welsch) and are then polished by Newton iteration on P_n.
AngularQuadrature gauss_legendre(double lo, double hi, Eigen::Index n);

}  // namespace movingslab

#endif  // MOVINGSLAB_QUADRATURE_HPP

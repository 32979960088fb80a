#pragma once

#include <Eigen/Dense>

namespace bentchain {

struct SymmetricEigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Rotations are applied row-by-row until the off-diagonal Frobenius norm
/// drops below `rel_tol` times the Frobenius norm of the input. Only the
/// upper triangle is read. Eigenpairs are returned sorted by eigenvalue.
/// Throws NumericalError if `max_sweeps` is exhausted.
SymmetricEigensystem jacobi_eigensystem(const Eigen::MatrixXd& a,
                                        double rel_tol = 1e-15,
                                        int max_sweeps = 64);

}  // namespace bentchain

#include "bentchain/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "bentchain/errors.hpp"

namespace bentchain {
namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigensystem jacobi_eigensystem(const Eigen::MatrixXd& input, double rel_tol,
                                        int max_sweeps) {
  if (input.rows() != input.cols()) {
    throw NumericalError("jacobi_eigensystem: matrix is not square");
  }
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = input.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  const double target = rel_tol * (scale > 0.0 ? scale : 1.0);
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep == max_sweeps) {
      throw NumericalError("jacobi_eigensystem: no convergence after " +
                           std::to_string(max_sweeps) + " sweeps");
    }
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from the stable form of tan(2φ) = 2 a_pq / (a_qq − a_pp).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace bentchain

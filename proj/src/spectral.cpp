#include "dsm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <sstream>

namespace dsm {

SpectralDecomposition svd(const Eigen::Ref<const CMatrix>& m) {
  if (m.size() == 0) throw std::invalid_argument("svd: empty matrix");
  if (m.rows() != m.cols()) throw std::invalid_argument("svd: matrix must be square");
  if (m.rows() > 10000) throw std::invalid_argument("svd: matrix too large");

  Eigen::BDCSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success)
    throw numerical_error("svd: decomposition did not converge");

  SpectralDecomposition decomp{solver.singularValues(), solver.matrixU(), solver.matrixV()};

  // Contract check: Frobenius residual (>= spectral norm) within 1e-10 s_1.
  const Real s1 = decomp.s(0);
  const Real residual =
      (m - decomp.U * decomp.s.asDiagonal() * decomp.V.adjoint()).norm();
  const Eigen::Index n = m.rows();
  const Real ortho =
      std::max((decomp.U.adjoint() * decomp.U - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(),
               (decomp.V.adjoint() * decomp.V - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
  if (residual > 1e-10 * s1 + 1e-300 || ortho > 1e-10) {
    std::ostringstream msg;
    msg << "svd: accuracy contract violated (residual " << residual
        << ", orthonormality defect " << ortho << ")";
    throw numerical_error(msg.str());
  }
  return decomp;
}

CMatrix half_power_matrix(const SpectralDecomposition& decomp) {
  return decomp.V * decomp.s.cwiseSqrt().asDiagonal() * decomp.V.adjoint();
}

namespace {

CMatrix hermitian_abs(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error("f_sharp: Hermitian eigendecomposition did not converge");
  return solver.eigenvectors() * solver.eigenvalues().cwiseAbs().asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

CMatrix f_sharp(const Eigen::Ref<const CMatrix>& m) {
  if (m.size() == 0) throw std::invalid_argument("f_sharp: empty matrix");
  if (m.rows() != m.cols()) throw std::invalid_argument("f_sharp: matrix must be square");
  const CMatrix re = (m + m.adjoint()) / Real(2);
  const CMatrix im = (m - m.adjoint()) / Complex(0, 2);
  return hermitian_abs(re) + hermitian_abs(im);
}

}  // namespace dsm

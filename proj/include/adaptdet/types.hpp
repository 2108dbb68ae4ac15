#pragma once

#include <complex>

#include <Eigen/Dense>

namespace adaptdet {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class Hypothesis { h0, h1 };

}  // namespace adaptdet

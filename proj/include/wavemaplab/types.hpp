#pragma once

#include <Eigen/Dense>
#include <complex>

namespace wml {

using Real = double;
using Complex = std::complex<Real>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

constexpr Real pi = 3.14159265358979323846;

}  // namespace wml

#pragma once

#include <complex>

#include <Eigen/Core>

namespace brlkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

}  // namespace brlkit

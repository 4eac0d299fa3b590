#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qgh {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// cot/csc argument, Dirichlet eigenvalue or a dispersion pole too close
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// z sits (numerically) on the spectrum of the problem being solved
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qgh

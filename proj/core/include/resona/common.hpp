#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace resona {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.5772156649015329;

// Bad input, bad geometry, bad configuration.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Solver failure, ill conditioning, no convergence.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(op) {}
    const std::string& operation() const { return op_; }

private:
    std::string op_;
};

}  // namespace resona

#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace schemex {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense 0/1 matrix (attention masks, link matrices, gold targets).
using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace schemex

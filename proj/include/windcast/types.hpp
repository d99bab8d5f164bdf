#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace windcast {

template <class Scalar = double>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar = double>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecX = Vec<double>;
using MatX = Mat<double>;
using ArrX = Eigen::ArrayXd;
using index_t = Eigen::Index;

} // namespace windcast

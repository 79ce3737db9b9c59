// Copyright 2026 The vibqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vibqpe/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace vibqpe {
namespace {

std::size_t shape_size(const DenseTensor::Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

DenseTensor::DenseTensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(shape_size(shape_), fill) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_size(shape_)) {
    throw std::invalid_argument("tensor data length does not match its shape");
  }
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw std::out_of_range("tensor index has wrong order");
  }
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    if (index[axis] >= shape_[axis]) {
      throw std::out_of_range("tensor index out of range");
    }
    flat = flat * shape_[axis] + index[axis];
  }
  return flat;
}

DenseTensor::Index DenseTensor::multi_index(std::size_t flat) const {
  Index index(shape_.size(), 0);
  for (std::size_t axis = shape_.size(); axis-- > 0;) {
    index[axis] = flat % shape_[axis];
    flat /= shape_[axis];
  }
  return index;
}

double& DenseTensor::operator()(std::span<const std::size_t> index) { return data_[flat_index(index)]; }

double DenseTensor::operator()(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }

Eigen::MatrixXd DenseTensor::unfold(std::size_t axis) const {
  if (axis >= order()) {
    throw std::out_of_range("unfold axis out of range");
  }
  const auto rows = static_cast<Eigen::Index>(shape_[axis]);
  const auto cols = static_cast<Eigen::Index>(rows == 0 ? 0 : size() / shape_[axis]);
  Eigen::MatrixXd out(rows, cols);
  Index index(order(), 0);
  if (size() == 0) {
    return out;
  }
  std::size_t flat = 0;
  do {
    std::size_t col = 0;
    for (std::size_t a = 0; a < order(); ++a) {
      if (a != axis) {
        col = col * shape_[a] + index[a];
      }
    }
    out(static_cast<Eigen::Index>(index[axis]), static_cast<Eigen::Index>(col)) = data_[flat++];
  } while (next_index(index, shape_));
  return out;
}

DenseTensor DenseTensor::fold(const Eigen::MatrixXd& unfolded, std::size_t axis, Shape shape) {
  DenseTensor out(std::move(shape));
  if (axis >= out.order() || static_cast<std::size_t>(unfolded.rows()) != out.shape_[axis] ||
      static_cast<std::size_t>(unfolded.size()) != out.size()) {
    throw std::invalid_argument("fold: matrix does not match target shape");
  }
  if (out.size() == 0) {
    return out;
  }
  Index index(out.order(), 0);
  std::size_t flat = 0;
  do {
    std::size_t col = 0;
    for (std::size_t a = 0; a < out.order(); ++a) {
      if (a != axis) {
        col = col * out.shape_[a] + index[a];
      }
    }
    out.data_[flat++] = unfolded(static_cast<Eigen::Index>(index[axis]), static_cast<Eigen::Index>(col));
  } while (next_index(index, out.shape_));
  return out;
}

DenseTensor DenseTensor::mode_product(std::size_t axis, const Eigen::MatrixXd& matrix) const {
  if (static_cast<std::size_t>(matrix.cols()) != shape_.at(axis)) {
    throw std::invalid_argument("mode_product: matrix columns must match the axis length");
  }
  Shape shape = shape_;
  shape[axis] = static_cast<std::size_t>(matrix.rows());
  return fold(matrix * unfold(axis), axis, std::move(shape));
}

double DenseTensor::frobenius_norm() const {
  double scale = 0.0;
  for (double v : data_) {
    scale = std::max(scale, std::fabs(v));
  }
  if (scale == 0.0) {
    return 0.0;
  }
  double sum = 0.0;
  for (double v : data_) {
    const double r = v / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

DenseTensor DenseTensor::operator-(const DenseTensor& other) const {
  if (shape_ != other.shape_) {
    throw std::invalid_argument("tensor shapes differ");
  }
  DenseTensor out(shape_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = data_[i] - other.data_[i];
  }
  return out;
}

bool next_index(DenseTensor::Index& index, const DenseTensor::Shape& shape) {
  for (std::size_t axis = shape.size(); axis-- > 0;) {
    if (++index[axis] < shape[axis]) {
      return true;
    }
    index[axis] = 0;
  }
  return false;
}

DenseTensor reconstruct_cp(std::span<const Eigen::MatrixXd> factors, const Eigen::VectorXd& weights) {
  DenseTensor::Shape shape;
  for (const auto& f : factors) {
    if (f.cols() != weights.size()) {
      throw std::invalid_argument("reconstruct_cp: factor rank does not match weights");
    }
    shape.push_back(static_cast<std::size_t>(f.rows()));
  }
  DenseTensor out(shape);
  if (out.size() == 0) {
    return out;
  }
  DenseTensor::Index index(shape.size(), 0);
  std::size_t flat = 0;
  do {
    double value = 0.0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
      double term = weights(k);
      for (std::size_t n = 0; n < factors.size(); ++n) {
        term *= factors[n](static_cast<Eigen::Index>(index[n]), k);
      }
      value += term;
    }
    out[flat++] = value;
  } while (next_index(index, shape));
  return out;
}

}  // namespace vibqpe

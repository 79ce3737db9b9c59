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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vibqpe {

/// Dense real tensor stored row-major (last axis fastest).
///
/// Mode-n unfoldings put axis n on the rows and the remaining axes, in
/// increasing order and row-major, on the columns. `fold` inverts `unfold`.
class DenseTensor {
 public:
  using Shape = std::vector<std::size_t>;
  using Index = std::vector<std::size_t>;

  DenseTensor() = default;
  explicit DenseTensor(Shape shape, double fill = 0.0);
  DenseTensor(Shape shape, std::vector<double> data);

  std::size_t order() const { return shape_.size(); }
  const Shape& shape() const { return shape_; }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  double& operator()(std::span<const std::size_t> index);
  double operator()(std::span<const std::size_t> index) const;
  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  Index multi_index(std::size_t flat) const;

  Eigen::MatrixXd unfold(std::size_t axis) const;
  static DenseTensor fold(const Eigen::MatrixXd& unfolded, std::size_t axis, Shape shape);

  /// Y = X ×_axis M, i.e. Y_(axis) = M · X_(axis). The result's axis length is M.rows().
  DenseTensor mode_product(std::size_t axis, const Eigen::MatrixXd& matrix) const;

  double frobenius_norm() const;
  DenseTensor operator-(const DenseTensor& other) const;

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  Shape shape_;
  std::vector<double> data_;
};

/// Advances a row-major multi-index; returns false after the last index.
bool next_index(DenseTensor::Index& index, const DenseTensor::Shape& shape);

/// Σ_k w_k ⊗_n F_n[:, k] for factor matrices F_n of shape (dim_n × rank).
DenseTensor reconstruct_cp(std::span<const Eigen::MatrixXd> factors, const Eigen::VectorXd& weights);

}  // namespace vibqpe

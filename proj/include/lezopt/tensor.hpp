#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace lezopt {

/// Dense row-major (vehicle type, age, zone) tensor of doubles.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int types, int ages, int zones, double fill = 0.0)
      : types_(types),
        ages_(ages),
        zones_(zones),
        data_(static_cast<std::size_t>(types) * ages * zones, fill) {}

  double& operator()(int v, int a, int z) { return data_[index(v, a, z)]; }
  double operator()(int v, int a, int z) const { return data_[index(v, a, z)]; }

  int types() const { return types_; }
  int ages() const { return ages_; }
  int zones() const { return zones_; }
  bool same_shape(const Tensor3& o) const {
    return types_ == o.types_ && ages_ == o.ages_ && zones_ == o.zones_;
  }
  void fill(double x) { data_.assign(data_.size(), x); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t index(int v, int a, int z) const {
    assert(v >= 0 && v < types_ && a >= 0 && a < ages_ && z >= 0 && z < zones_);
    return (static_cast<std::size_t>(v) * ages_ + a) * zones_ + z;
  }

  int types_ = 0, ages_ = 0, zones_ = 0;
  std::vector<double> data_;
};

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

}  // namespace lezopt

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hippolab {

using Vec = std::vector<double>;
using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Dense real matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool square() const { return rows_ == cols_; }
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

Vec matvec(const Matrix& a, const Vec& x);
Matrix transpose(const Matrix& a);

/// Max row-sum norm.
double norm_inf(const Matrix& a);
/// Max column-sum norm.
double norm_1(const Matrix& a);
/// Largest entry magnitude.
double max_abs(const Matrix& a);

double norm_inf(const Vec& x);
double dot(const Vec& a, const Vec& b);

}  // namespace hippolab

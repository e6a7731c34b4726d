#include "hippolab/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace hippolab {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

static void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= b.data()[i];
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix r(n, m);
  // ikj order keeps the inner loop contiguous in both b and r.
  for (std::size_t i = 0; i < n; ++i) {
    double* ri = &r.data()[i * m];
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a(i, p);
      if (aip == 0.0) continue;
      const double* bp = &b.data()[p * m];
      for (std::size_t j = 0; j < m; ++j) ri[j] += aip * bp[j];
    }
  }
  return r;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix r = a;
  for (double& v : r.data()) v *= s;
  return r;
}

Vec matvec(const Matrix& a, const Vec& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec shape mismatch");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = &a.data()[i * a.cols()];
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

double norm_inf(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs(const Matrix& a) {
  double best = 0.0;
  for (double v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

double norm_inf(const Vec& x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace hippolab

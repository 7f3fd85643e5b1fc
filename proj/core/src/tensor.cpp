#include "hermlab/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "hermlab/error.hpp"

namespace hermlab {

namespace {

int checked_dim(int n) {
  if (n < 1) throw DimensionError("tensor dimension must be positive, got " + std::to_string(n));
  return n;
}

}  // namespace

double frobenius(std::span<const Complex> values) {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return std::sqrt(sum);
}

ComplexTensor3::ComplexTensor3(int n)
    : n_(checked_dim(n)), data_(static_cast<std::size_t>(n) * n * n) {}

double ComplexTensor3::frobenius() const { return hermlab::frobenius(data_); }

double ComplexTensor3::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexTensor3::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexTensor3 ComplexTensor3::conj() const {
  ComplexTensor3 out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

namespace {

// (a - b)/2, returning a itself when b == -a so antisymmetric data is a fixed point.
double half_difference(double a, double b) { return a == -b ? a : 0.5 * a - 0.5 * b; }

}  // namespace

ComplexTensor3 ComplexTensor3::antisymmetrized() const {
  ComplexTensor3 out(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      for (int k = i + 1; k < n_; ++k) {
        const Complex a = (*this)(j, i, k);
        const Complex b = (*this)(j, k, i);
        const Complex v{half_difference(a.real(), b.real()), half_difference(a.imag(), b.imag())};
        out(j, i, k) = v;
        out(j, k, i) = -v;
      }
  return out;
}

ComplexTensor3& ComplexTensor3::operator+=(const ComplexTensor3& other) {
  if (other.n_ != n_) throw DimensionError("tensor dimension mismatch in +=");
  for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += other.data_[p];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator-=(const ComplexTensor3& other) {
  if (other.n_ != n_) throw DimensionError("tensor dimension mismatch in -=");
  for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= other.data_[p];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator*=(Complex factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

ComplexTensor4::ComplexTensor4(int n)
    : n_(checked_dim(n)), data_(static_cast<std::size_t>(n) * n * n * n) {}

double ComplexTensor4::frobenius() const { return hermlab::frobenius(data_); }

double ComplexTensor4::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace hermlab

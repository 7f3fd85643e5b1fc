#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hermlab {

using Complex = std::complex<double>;

/// Dense n×n×n complex array.
///
/// Index convention, used everywhere in the library: `t(upper, lower1, lower2)`
/// with all indices zero-based. So `C(j, i, k)` holds C^j_{ik}.
class ComplexTensor3 {
 public:
  ComplexTensor3() = default;
  explicit ComplexTensor3(int n);

  int dim() const noexcept { return n_; }

  Complex& operator()(int upper, int lower1, int lower2) {
    return data_[(static_cast<std::size_t>(upper) * n_ + lower1) * n_ + lower2];
  }
  const Complex& operator()(int upper, int lower1, int lower2) const {
    return data_[(static_cast<std::size_t>(upper) * n_ + lower1) * n_ + lower2];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  double frobenius() const;
  double max_abs() const;
  bool all_finite() const;

  /// Entrywise complex conjugate.
  ComplexTensor3 conj() const;
  /// (t(j,i,k) - t(j,k,i)) / 2 for i < k, mirrored with a flipped sign (zero signs included);
  /// the diagonal is +0. Exact on already antisymmetric input.
  ComplexTensor3 antisymmetrized() const;

  ComplexTensor3& operator+=(const ComplexTensor3& other);
  ComplexTensor3& operator-=(const ComplexTensor3& other);
  ComplexTensor3& operator*=(Complex factor);

  friend ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3& b) { return a += b; }
  friend ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3& b) { return a -= b; }
  friend ComplexTensor3 operator*(Complex f, ComplexTensor3 a) { return a *= f; }
  friend ComplexTensor3 operator*(ComplexTensor3 a, Complex f) { return a *= f; }
  friend ComplexTensor3 operator-(ComplexTensor3 a) { return a *= -1.0; }

  bool operator==(const ComplexTensor3&) const = default;

 private:
  int n_ = 0;
  std::vector<Complex> data_;
};

/// Dense n^4 complex array indexed `t(upper, lower1, lower2, lower3)`.
/// Covariant derivatives use it as T^j_{ik,l} -> t(j, i, k, l).
class ComplexTensor4 {
 public:
  ComplexTensor4() = default;
  explicit ComplexTensor4(int n);

  int dim() const noexcept { return n_; }

  Complex& operator()(int a, int b, int c, int d) {
    return data_[((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  const Complex& operator()(int a, int b, int c, int d) const {
    return data_[((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  double frobenius() const;
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<Complex> data_;
};

double frobenius(std::span<const Complex> values);

}  // namespace hermlab

#pragma once

// Bilinear ("polarized") forms of the quadratic identities. Evaluating with
// both slots equal gives the identity itself; the flat-search Jacobian uses
// d/dx Q(x,x) = Q(h,x) + Q(x,h).

#include <complex>

#include "hermlab/tensor.hpp"

namespace hermlab::detail {

/// Jacobi identities in (C, D). Families: 0 = {e,e,e}, 1 = {e,ē,e} on the (0,1)
/// part, 2 = the conjugate-coefficient identity. Calls sink(family, i, j, k, l, value).
template <class Sink>
void jacobi_polarized(const ComplexTensor3& c1, const ComplexTensor3& d1, const ComplexTensor3& c2,
                      const ComplexTensor3& d2, Sink&& sink) {
  const int n = c1.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex v{};
          for (int r = 0; r < n; ++r)
            v += c1(r, i, j) * c2(l, r, k) + c1(r, j, k) * c2(l, r, i) + c1(r, k, i) * c2(l, r, j);
          sink(0, i, j, k, l, v);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex v{};
          for (int r = 0; r < n; ++r)
            v += c1(r, i, k) * d2(l, j, r) + d1(r, j, i) * d2(l, r, k) - d1(r, j, k) * d2(l, r, i);
          sink(1, i, j, k, l, v);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex v{};
          for (int r = 0; r < n; ++r)
            v += c1(r, i, k) * std::conj(d2(r, j, l)) - c1(j, r, k) * std::conj(d2(i, r, l)) +
                 c1(j, r, i) * std::conj(d2(k, r, l)) - d1(l, r, i) * std::conj(d2(k, j, r)) +
                 d1(l, r, k) * std::conj(d2(i, j, r));
          sink(2, i, j, k, l, v);
        }
}

/// Flatness identities of a left-invariant unitary frame. Family 0 is
///   sum_r C^r_{ik} G^l_{jr} + G^r_{ji} G^l_{rk} - G^r_{jk} G^l_{ri},
/// family 1 is
///   sum_r D^j_{ri} conj(G^k_{lr}) + G^l_{kr} conj(D^i_{rj}) + G^l_{ri} conj(G^k_{rj}) - G^r_{ki} conj(G^r_{lj}).
template <class Sink>
void flatness_polarized(const ComplexTensor3& c1, const ComplexTensor3& d1, const ComplexTensor3& g1,
                        const ComplexTensor3& d2, const ComplexTensor3& g2, Sink&& sink) {
  const int n = c1.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex v{};
          for (int r = 0; r < n; ++r)
            v += c1(r, i, k) * g2(l, j, r) + g1(r, j, i) * g2(l, r, k) - g1(r, j, k) * g2(l, r, i);
          sink(0, i, j, k, l, v);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex v{};
          for (int r = 0; r < n; ++r)
            v += d1(j, r, i) * std::conj(g2(k, l, r)) + g1(l, k, r) * std::conj(d2(i, r, j)) +
                 g1(l, r, i) * std::conj(g2(k, r, j)) - g1(r, k, i) * std::conj(g2(r, l, j));
          sink(1, i, j, k, l, v);
        }
}

}  // namespace hermlab::detail

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace ymh {

using cplx = std::complex<double>;

// Dense r x r complex blocks stored row-major.  These run inside the site
// kernels, so they work on raw pointers instead of a matrix class.

inline void mat_zero(int r, cplx* out) {
  for (int i = 0; i < r * r; ++i) out[i] = cplx(0.0, 0.0);
}

inline void mat_copy(int r, const cplx* a, cplx* out) {
  for (int i = 0; i < r * r; ++i) out[i] = a[i];
}

inline void mat_axpy(int r, cplx s, const cplx* a, cplx* out) {
  for (int i = 0; i < r * r; ++i) out[i] += s * a[i];
}

inline void mat_scale(int r, cplx s, cplx* out) {
  for (int i = 0; i < r * r; ++i) out[i] *= s;
}

/// out += s * a * b
inline void mat_mul_acc(int r, cplx s, const cplx* a, const cplx* b, cplx* out) {
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const cplx aik = s * a[i * r + k];
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < r; ++j) out[i * r + j] += aik * b[k * r + j];
    }
}

/// out += s * [a, b]
inline void mat_comm_acc(int r, cplx s, const cplx* a, const cplx* b, cplx* out) {
  mat_mul_acc(r, s, a, b, out);
  mat_mul_acc(r, -s, b, a, out);
}

inline void mat_adjoint(int r, const cplx* a, cplx* out) {
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i * r + j] = std::conj(a[j * r + i]);
}

/// tr(a * b^dagger)
inline cplx mat_dot(int r, const cplx* a, const cplx* b) {
  cplx s(0.0, 0.0);
  for (int i = 0; i < r * r; ++i) s += a[i] * std::conj(b[i]);
  return s;
}

inline cplx mat_trace(int r, const cplx* a) {
  cplx s(0.0, 0.0);
  for (int i = 0; i < r; ++i) s += a[i * r + i];
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting; r is tiny.
cplx mat_det(int r, const cplx* a);

}  // namespace ymh

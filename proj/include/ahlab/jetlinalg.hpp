#pragma once

#include <vector>

#include "ahlab/jet.hpp"

namespace ah {

/// Row-major square or rectangular matrix of jets.
using JetMatrix = std::vector<Jet>;

/// Solves A X = B for X, where A is m x m and B is m x k, all jets at a
/// common base point and order. Gaussian elimination with partial pivoting
/// on the magnitude of constant terms; a pivot below 1e-12 of the column
/// scale raises `kind` with `context` in the message.
inline JetMatrix jet_solve(int m, JetMatrix A, JetMatrix B, int k,
                           ErrorKind kind, const char* context) {
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    double best = 0.0;
    double scale = 0.0;
    for (int r = col; r < m; ++r) {
      const double mag = std::abs(A[r * m + col].value());
      scale = std::max(scale, A[r * m + col].max_abs_coeff());
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot < 0 || best < 1e-12 * std::max(1.0, scale))
      fail(kind, std::string(context) + ": singular system");
    if (pivot != col) {
      for (int c = 0; c < m; ++c) std::swap(A[pivot * m + c], A[col * m + c]);
      for (int c = 0; c < k; ++c) std::swap(B[pivot * k + c], B[col * k + c]);
    }
    const Jet inv = A[col * m + col].reciprocal();
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const Jet factor = A[r * m + col] * inv;
      if (factor.max_abs_coeff() == 0.0) continue;
      for (int c = col; c < m; ++c)
        A[r * m + c] -= factor * A[col * m + c];
      for (int c = 0; c < k; ++c)
        B[r * k + c] -= factor * B[col * k + c];
    }
  }
  JetMatrix X(B.size());
  for (int r = 0; r < m; ++r) {
    const Jet inv = A[r * m + r].reciprocal();
    for (int c = 0; c < k; ++c) X[r * k + c] = B[r * k + c] * inv;
  }
  return X;
}

}  // namespace ah

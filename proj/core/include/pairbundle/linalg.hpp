#pragma once

#include "pairbundle/core.hpp"

#include <array>

namespace pb {

// B = U diag(sigma) U^T with U unitary and sigma descending.
struct Takagi {
  Mat2 U;
  std::array<double, 2> sigma{};
};
Takagi takagi(const SymMat2& B);

// Singular values, descending.
std::array<double, 2> singular_values(const Mat2& M);

// Rank-one split M ~ s * u * v^* from the dominant singular triple.
struct RankOne {
  double s = 0.0;
  Vec2 u, v;
};
RankOne dominant_triple(const Mat2& M);

// Hermitian eigenproblem, ascending eigenvalues.
struct HermEig {
  std::array<double, 2> values{};
  Mat2 vectors;
};
HermEig hermitian_eig(const Mat2& H);

// Unit vector orthogonal to u.
Vec2 orthogonal_complement(const Vec2& u);

}  // namespace pb

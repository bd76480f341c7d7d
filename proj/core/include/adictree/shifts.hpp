#pragma once

#include "adictree/op.hpp"

namespace adictree {

/// The shift, with columns populated for source levels 0..N-1 (level N maps
/// out of the truncation and is zero).
TruncatedOperator make_shift(const TruncatedSpace& space, ShiftKind kind);

/// The closed-form co-shift built directly from the per-kind case analysis,
/// independent of transposition. For the Bunce-Deddens, Hensel and Serre
/// shifts this coincides with the matrix adjoint; for the Bernoulli shift it
/// is the formal left inverse, which is s times the matrix adjoint.
TruncatedOperator make_shift_adjoint(const TruncatedSpace& space, ShiftKind kind);

/// The Bernoulli-shift generator S_j = s M_{chi_j} S, an honest isometry
/// mapping E_(n,x) to E_(n+1, s x + j).
TruncatedOperator cuntz_generator(const TruncatedSpace& space, int j);

/// The word S_(n,x) = S_{x_0} S_{x_1} ... S_{x_{n-1}} over the base-s digits
/// x = x_0 + x_1 s + ...; maps E_(k,z) to E_(k+n, s^n z + x).
TruncatedOperator cuntz_word(const TruncatedSpace& space, int n, std::int64_t x);

enum class ProjectionFamily {
  BunceDeddens,  // P_n = U^n (I - U U*) U*^n
  Hensel,        // rank-one projections onto E_(n,0)
  Serre,         // P_n = W^n (I - W W*) W*^n
};

/// The n-th member of a projection family. Hensel member 0 is the rank-one
/// projection onto the root basis vector.
TruncatedOperator projection(const TruncatedSpace& space, ProjectionFamily family, int n);

/// Rank-one projection onto E_(0,0).
TruncatedOperator root_projection(const TruncatedSpace& space);

enum class MatrixUnitFamily {
  Bernoulli,  // S_(n,x) P_(0,0) S_(m,y)*
  Serre,      // s^{(n+m)/2} M_{chi_{n,x}} W^n W*^m M_{chi_{m,y}}
};

/// The matrix unit mapping E_(m,y) to E_(n,x), built from the family's
/// generating formula (not as a bare rank-one operator).
TruncatedOperator matrix_unit(const TruncatedSpace& space, MatrixUnitFamily family, int n,
                              std::int64_t x, int m, std::int64_t y);

}  // namespace adictree

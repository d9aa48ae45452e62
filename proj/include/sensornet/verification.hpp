#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sensornet/instance.hpp"

namespace sensornet {

using NumericMatrix = Eigen::MatrixXd;

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Random realization of a pattern: nonzeros i.i.d. uniform on [0.5, 1.5],
/// zeros exactly zero. Deterministic per (pattern, seed).
NumericMatrix realize_numeric(const StructuredMatrix& pattern, std::uint64_t seed);

/// Realizes the network pattern with a self-loop added at every sensor, then
/// normalizes each row to sum to one.
NumericMatrix make_row_stochastic(const StructuredMatrix& w_pattern, std::uint64_t seed);

/// blockdiag(H_1^T H_1, ..., H_m^T H_m) of a realized H. Every row of the
/// pattern must hold exactly one nonzero, else Error(constraint).
NumericMatrix build_DH(const StructuredMatrix& h_pattern, std::uint64_t seed);

/// Same, from an already realized H.
NumericMatrix build_DH(const NumericMatrix& h);

struct ObservabilityRank {
  bool observable = false;
  Index rank = 0;
};

/// Right multiplication Q -> Q * A for a system matrix that need not be stored.
using RightMultiply = std::function<NumericMatrix(const NumericMatrix&)>;

/// Kalman observability by subspace expansion: start from the row space of C
/// and repeatedly append its image under A^T, re-orthonormalizing with an SVD.
/// Singular values at or below tolerance * largest are treated as zero.
ObservabilityRank kalman_rank_observable(const NumericMatrix& a_sys, const NumericMatrix& c,
                                         double tolerance = kDefaultRankTolerance);

ObservabilityRank kalman_rank_observable(const RightMultiply& a_sys, Index state_dim,
                                         const NumericMatrix& c,
                                         double tolerance = kDefaultRankTolerance);

/// Q -> Q (W kron A) without forming the Kronecker product.
RightMultiply kronecker_operator(const NumericMatrix& w, const NumericMatrix& a);

/// Dense products are formed up to this dimension; above it the operator is applied implicitly.
inline constexpr Index kDenseKroneckerLimit = 400;

struct VerificationReport {
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::vector<Index> rank_deficits;  // one per failed trial
  double tolerance = kDefaultRankTolerance;

  std::string to_json() const;
};

/// One numeric trial of (W kron A, D_H) observability for the given patterns.
/// A is re-drawn until numerically nonsingular. Returns the rank deficit
/// (0 means observable). No structural gate is applied.
Index distributed_rank_deficit(const StructuredMatrix& a_pattern,
                               const StructuredMatrix& h_pattern,
                               const StructuredMatrix& w_pattern, std::uint64_t trial_seed,
                               double tolerance = kDefaultRankTolerance);

/// Runs `trials` independent numeric trials of a design that passes the
/// structural gate. Throws Error(precondition) with the gate's reason otherwise.
VerificationReport verify_design_numeric(const ProblemInstance& instance,
                                         const DesignResult& design, std::size_t trials,
                                         std::uint64_t seed,
                                         double tolerance = kDefaultRankTolerance);

}  // namespace sensornet

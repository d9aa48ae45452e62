#include "sensornet/verification.hpp"

#include <random>
#include <string>

#include <json.hpp>

#include "sensornet/error.hpp"
#include "sensornet/observability.hpp"
#include "sensornet/random.hpp"

namespace sensornet {

namespace {

// Realizations of a structurally full-rank pattern are redrawn at most this often.
constexpr int kMaxRedraws = 64;
constexpr double kSingularRatio = 1e-12;

struct OrthonormalRows {
  NumericMatrix basis;  // rank x cols, orthonormal rows
  Index rank = 0;
};

OrthonormalRows orthonormalize(const NumericMatrix& rows, double tolerance) {
  OrthonormalRows out;
  if (rows.rows() == 0 || rows.cols() == 0) {
    out.basis.resize(0, rows.cols());
    return out;
  }
  Eigen::BDCSVD<NumericMatrix> svd(rows, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double largest = sigma.size() > 0 ? sigma(0) : 0.0;
  if (largest > 0.0) {
    while (out.rank < static_cast<Index>(sigma.size()) && sigma(out.rank) > tolerance * largest) {
      ++out.rank;
    }
  }
  out.basis = svd.matrixV().leftCols(out.rank).transpose();
  return out;
}

bool numerically_nonsingular(const NumericMatrix& a) {
  if (a.rows() == 0) return true;
  Eigen::BDCSVD<NumericMatrix> svd(a);
  const auto& sigma = svd.singularValues();
  return sigma(0) > 0.0 && sigma(sigma.size() - 1) > kSingularRatio * sigma(0);
}

NumericMatrix kronecker(const NumericMatrix& w, const NumericMatrix& a) {
  NumericMatrix out(w.rows() * a.rows(), w.cols() * a.cols());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      out.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = w(i, j) * a;
    }
  }
  return out;
}

}  // namespace

NumericMatrix realize_numeric(const StructuredMatrix& pattern, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.5, 1.5);
  NumericMatrix out = NumericMatrix::Zero(pattern.rows(), pattern.cols());
  for (const auto& [r, c] : pattern.nonzeros()) out(r, c) = value(rng);
  return out;
}

NumericMatrix make_row_stochastic(const StructuredMatrix& w_pattern, std::uint64_t seed) {
  if (!w_pattern.square()) throw Error(ErrorKind::shape, "network pattern must be square");
  auto augmented = w_pattern;
  for (Index i = 0; i < w_pattern.rows(); ++i) augmented = augmented.with(i, i);
  NumericMatrix w = realize_numeric(augmented, seed);
  for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) /= w.row(i).sum();
  return w;
}

NumericMatrix build_DH(const NumericMatrix& h) {
  const Eigen::Index m = h.rows();
  const Eigen::Index n = h.cols();
  NumericMatrix out = NumericMatrix::Zero(m * n, m * n);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.block(j * n, j * n, n, n) = h.row(j).transpose() * h.row(j);
  }
  return out;
}

NumericMatrix build_DH(const StructuredMatrix& h_pattern, std::uint64_t seed) {
  for (Index i = 0; i < h_pattern.rows(); ++i) {
    const auto count = h_pattern.row_support(i).size();
    if (count != 1) {
      throw Error(ErrorKind::constraint, "sensor " + std::to_string(i + 1) + " measures " +
                                             std::to_string(count) +
                                             " states, expected exactly one");
    }
  }
  return build_DH(realize_numeric(h_pattern, seed));
}

ObservabilityRank kalman_rank_observable(const RightMultiply& a_sys, Index state_dim,
                                         const NumericMatrix& c, double tolerance) {
  if (static_cast<Index>(c.cols()) != state_dim) {
    throw Error(ErrorKind::shape, "output matrix width differs from the state dimension");
  }
  auto current = orthonormalize(c, tolerance);
  // Each pass adds the next power's rows; the span stabilizes within state_dim passes.
  for (Index pass = 0; pass < state_dim && current.rank < state_dim && current.rank > 0; ++pass) {
    NumericMatrix stacked(2 * current.rank, state_dim);
    stacked << current.basis, a_sys(current.basis);
    auto grown = orthonormalize(stacked, tolerance);
    if (grown.rank <= current.rank) break;
    current = std::move(grown);
  }
  return {current.rank == state_dim, current.rank};
}

ObservabilityRank kalman_rank_observable(const NumericMatrix& a_sys, const NumericMatrix& c,
                                         double tolerance) {
  if (a_sys.rows() != a_sys.cols()) throw Error(ErrorKind::shape, "system matrix must be square");
  return kalman_rank_observable([&a_sys](const NumericMatrix& q) -> NumericMatrix { return q * a_sys; },
                                static_cast<Index>(a_sys.rows()), c, tolerance);
}

RightMultiply kronecker_operator(const NumericMatrix& w, const NumericMatrix& a) {
  // Row q of Q, read row-major as an m x n matrix V, maps to vec(W^T V A).
  return [w, a](const NumericMatrix& q) -> NumericMatrix {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Index m = w.rows();
    const Eigen::Index n = a.rows();
    NumericMatrix out(q.rows(), m * n);
    Eigen::RowVectorXd row(m * n);
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      row = q.row(r);
      RowMajor product = w.transpose() * Eigen::Map<const RowMajor>(row.data(), m, n) * a;
      out.row(r) = Eigen::Map<const Eigen::RowVectorXd>(product.data(), m * n);
    }
    return out;
  };
}

std::string VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["trials"] = trials;
  doc["passes"] = passes;
  doc["tolerance"] = tolerance;
  doc["rank_deficits"] = rank_deficits;
  return doc.dump(2) + "\n";
}

Index distributed_rank_deficit(const StructuredMatrix& a_pattern,
                               const StructuredMatrix& h_pattern,
                               const StructuredMatrix& w_pattern, std::uint64_t trial_seed,
                               double tolerance) {
  const Index n = a_pattern.rows();
  const Index m = w_pattern.rows();
  if (h_pattern.rows() != m || h_pattern.cols() != n) {
    throw Error(ErrorKind::shape, "measurement pattern must be m x n");
  }

  NumericMatrix a;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxRedraws) {
      throw Error(ErrorKind::precondition, "no nonsingular realization of the system pattern found");
    }
    a = realize_numeric(a_pattern, derive_seed(trial_seed, "A", attempt));
    if (numerically_nonsingular(a)) break;
  }
  const NumericMatrix w = make_row_stochastic(w_pattern, derive_seed(trial_seed, "W"));
  const NumericMatrix dh = build_DH(h_pattern, derive_seed(trial_seed, "H"));

  const Index dim = m * n;
  const auto result = dim <= kDenseKroneckerLimit
                          ? kalman_rank_observable(kronecker(w, a), dh, tolerance)
                          : kalman_rank_observable(kronecker_operator(w, a), dim, dh, tolerance);
  return dim - result.rank;
}

VerificationReport verify_design_numeric(const ProblemInstance& instance,
                                         const DesignResult& design, std::size_t trials,
                                         std::uint64_t seed, double tolerance) {
  if (trials < 1) throw Error(ErrorKind::validation, "trials must be at least 1");
  const auto gate = distributed_observability_gate(instance, design.measurement_pattern,
                                                   design.network_pattern);
  if (!gate) {
    throw Error(ErrorKind::precondition, "verification refused: " + gate.reason);
  }

  VerificationReport report;
  report.trials = trials;
  report.tolerance = tolerance;
  for (std::size_t t = 0; t < trials; ++t) {
    const Index deficit =
        distributed_rank_deficit(instance.system_pattern, design.measurement_pattern,
                                 design.network_pattern, derive_seed(seed, "trial", t), tolerance);
    if (deficit == 0) {
      ++report.passes;
    } else {
      report.rank_deficits.push_back(deficit);
    }
  }
  return report;
}

}  // namespace sensornet

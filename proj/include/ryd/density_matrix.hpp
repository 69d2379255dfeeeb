#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ryd {

using cplx = std::complex<double>;

// Basis convention used across the project: qubit 0 is the most significant
// bit of the computational-basis index. A basis state |b_0 b_1 ... b_{n-1}>
// has index sum_q b_q << (n-1-q).

/// Raw (possibly sub-normalized) outcome probabilities for a subset of qubits.
/// Entries are indexed by the measured bit pattern with qubit_subset[0] as the
/// most significant bit. Sums to trace(rho), not to 1, when rho is lossy.
struct OutcomeDistribution {
    std::vector<int> qubit_subset;
    std::vector<double> probabilities;
};

/// Dense 2^n x 2^n density matrix with trace in (0, 1]. Gate operators may be
/// trace-non-increasing (loss shows up as 1 - trace); channels are applied as
/// explicit Kraus sums. All mutation is done by in-place strided kernels.
class DensityMatrix {
  public:
    static constexpr int kMaxQubits = 10;

    DensityMatrix(int n_qubits, double eps_init);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    cplx at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    double trace() const;
    void renormalize();

    /// rho <- (M on targets) rho (M^dagger on targets). M is row-major
    /// 2^k x 2^k over the targets with targets[0] the most significant bit.
    /// Operator norm must be <= 1 + 1e-9 (trace may not grow).
    void apply_operator(std::span<const cplx> m, std::span<const int> targets);

    /// Diagonal operator: entries of modulus <= 1, same target ordering.
    void apply_diagonal(std::span<const cplx> diag, std::span<const int> targets);

    /// Dense single-qubit operator, row-major {m00, m01, m10, m11}.
    void apply_1q(const cplx m[4], int target);

    /// rho <- sum_j K_j rho K_j^dagger. Requires sum K^dag K <= I + 1e-10.
    /// Single-qubit channels use a fused superoperator kernel; larger targets
    /// fall back to the generic accumulation path.
    void apply_channel(std::span<const std::vector<cplx>> kraus, std::span<const int> targets);

    /// Probabilities of each bit pattern on `measured` (unrenormalized).
    OutcomeDistribution outcome_distribution(std::span<const int> measured) const;

    /// All-qubit diagonal, convenience for the benchmark harness.
    std::vector<double> diagonal_probabilities() const;

    /// Max elementwise |rho - rho^dagger|; 0 for exact Hermiticity.
    double hermiticity_defect() const;

    std::size_t mask(int qubit) const { return std::size_t{1} << (n_ - 1 - qubit); }

  private:
    void check_targets(std::span<const int> targets) const;
    /// Generic gather/scatter conjugation kernel, no norm precondition.
    void apply_kernel(std::span<const cplx> m, std::span<const int> targets);

    int n_;
    std::size_t dim_;
    std::vector<cplx> data_;
};

/// Spectral norm of a small d x d matrix (power iteration on M^dag M),
/// used for precondition screening of gate operators.
double operator_norm(std::span<const cplx> m, std::size_t d);

} // namespace ryd

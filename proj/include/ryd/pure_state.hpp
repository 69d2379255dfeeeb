#pragma once

#include "ryd/abstract_circuit.hpp"
#include "ryd/density_matrix.hpp"

#include <span>
#include <vector>

namespace ryd {

/// Unit-norm state vector used for ideal (error-free) reference runs.
class PureState {
  public:
    explicit PureState(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

    double norm() const;

    void apply_1q(const cplx m[4], int target);
    void apply_diagonal(std::span<const cplx> diag, std::span<const int> targets);
    void apply_unitary(std::span<const cplx> m, std::span<const int> targets);

    OutcomeDistribution outcome_distribution(std::span<const int> measured) const;
    std::vector<double> probabilities() const;

    std::size_t mask(int qubit) const { return std::size_t{1} << (n_ - 1 - qubit); }

  private:
    int n_;
    std::vector<cplx> amps_;
};

/// Ideal propagation of an abstract circuit from |0...0>. Rejects gates whose
/// matrices are not unitary. The returned distribution covers all qubits and
/// sums to 1 within numerical error.
OutcomeDistribution run_ideal(const AbstractCircuit& circuit);

/// Same, but returns the final state for callers that need marginals.
PureState run_ideal_state(const AbstractCircuit& circuit);

} // namespace ryd

#include "ryd/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ryd {

namespace {

// Insert a zero bit at `bit` into the compact index `i`. When expanding
// several bits the masks must be processed lowest first.
inline std::size_t insert_zero_bit(std::size_t i, std::size_t bit) {
    const std::size_t low = i & (bit - 1);
    return ((i & ~(bit - 1)) << 1) | low;
}

inline std::size_t insert_zero_bits(std::size_t i, std::span<const std::size_t> sorted_bits) {
    for (std::size_t b : sorted_bits) i = insert_zero_bit(i, b);
    return i;
}

} // namespace

DensityMatrix::DensityMatrix(int n_qubits, double eps_init) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("DensityMatrix: n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    if (eps_init < 0.0 || eps_init >= 1.0)
        throw std::invalid_argument("DensityMatrix: eps_init must be in [0, 1)");
    n_ = n_qubits;
    dim_ = std::size_t{1} << n_;
    data_.assign(dim_ * dim_, cplx{0.0, 0.0});
    // Preparation failure leaves an atom outside the computational basis, so
    // the lost weight is dropped from the state rather than kept as |1><1|
    // population; post-selection (renormalization) removes it entirely.
    double w = 1.0;
    for (int q = 0; q < n_; ++q) w *= (1.0 - eps_init);
    data_[0] = cplx{w, 0.0};
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i].real();
    return t;
}

void DensityMatrix::renormalize() {
    const double t = trace();
    if (t <= 1e-9) throw std::runtime_error("DensityMatrix: trace too small to renormalize");
    const double inv = 1.0 / t;
    for (auto& z : data_) z *= inv;
}

void DensityMatrix::check_targets(std::span<const int> targets) const {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_)
            throw std::invalid_argument("DensityMatrix: target qubit out of range");
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("DensityMatrix: duplicate target qubit");
    }
}

double operator_norm(std::span<const cplx> m, std::size_t d) {
    // Power iteration on M^dag M from a fixed dense start vector.
    std::vector<cplx> v(d), w(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = cplx{1.0 + 0.1 * static_cast<double>(i), 0.3};
    double lambda = 0.0;
    for (int it = 0; it < 60; ++it) {
        for (std::size_t r = 0; r < d; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t c = 0; c < d; ++c) acc += m[r * d + c] * v[c];
            w[r] = acc;
        }
        for (std::size_t c = 0; c < d; ++c) {
            cplx acc{0.0, 0.0};
            for (std::size_t r = 0; r < d; ++r) acc += std::conj(m[r * d + c]) * w[r];
            v[c] = acc;
        }
        double nrm = 0.0;
        for (const auto& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        lambda = nrm;
        for (auto& z : v) z /= nrm;
    }
    return std::sqrt(lambda);
}

void DensityMatrix::apply_1q(const cplx m[4], int target) {
    if (target < 0 || target >= n_) throw std::invalid_argument("apply_1q: target out of range");
    const std::size_t bit = mask(target);
    const std::size_t d = dim_;
    const double a_r = m[0].real(), a_i = m[0].imag();
    const double b_r = m[1].real(), b_i = m[1].imag();
    const double c_r = m[2].real(), c_i = m[2].imag();
    const double e_r = m[3].real(), e_i = m[3].imag();

    auto* p = reinterpret_cast<double*>(data_.data());

    // Row pass: rho <- M rho
    for (std::size_t h = 0; h < d / 2; ++h) {
        const std::size_t r0 = insert_zero_bit(h, bit);
        const std::size_t r1 = r0 | bit;
        double* row0 = p + 2 * r0 * d;
        double* row1 = p + 2 * r1 * d;
        for (std::size_t c = 0; c < d; ++c) {
            const double xr = row0[2 * c], xi = row0[2 * c + 1];
            const double yr = row1[2 * c], yi = row1[2 * c + 1];
            row0[2 * c] = a_r * xr - a_i * xi + b_r * yr - b_i * yi;
            row0[2 * c + 1] = a_r * xi + a_i * xr + b_r * yi + b_i * yr;
            row1[2 * c] = c_r * xr - c_i * xi + e_r * yr - e_i * yi;
            row1[2 * c + 1] = c_r * xi + c_i * xr + e_r * yi + e_i * yr;
        }
    }
    // Column pass: rho <- rho M^dag, i.e. out(r,c) = sum_k rho(r,k) conj(M(c,k))
    for (std::size_t r = 0; r < d; ++r) {
        double* row = p + 2 * r * d;
        for (std::size_t h = 0; h < d / 2; ++h) {
            const std::size_t c0 = insert_zero_bit(h, bit);
            const std::size_t c1 = c0 | bit;
            const double xr = row[2 * c0], xi = row[2 * c0 + 1];
            const double yr = row[2 * c1], yi = row[2 * c1 + 1];
            // x' = x conj(a) + y conj(b); y' = x conj(c) + y conj(e)
            row[2 * c0] = a_r * xr + a_i * xi + b_r * yr + b_i * yi;
            row[2 * c0 + 1] = a_r * xi - a_i * xr + b_r * yi - b_i * yr;
            row[2 * c1] = c_r * xr + c_i * xi + e_r * yr + e_i * yi;
            row[2 * c1 + 1] = c_r * xi - c_i * xr + e_r * yi - e_i * yr;
        }
    }
}

void DensityMatrix::apply_diagonal(std::span<const cplx> diag, std::span<const int> targets) {
    check_targets(targets);
    const std::size_t k = targets.size();
    if (diag.size() != (std::size_t{1} << k))
        throw std::invalid_argument("apply_diagonal: size mismatch");
    for (const auto& z : diag)
        if (std::abs(z) > 1.0 + 1e-9)
            throw std::invalid_argument("apply_diagonal: entry modulus exceeds 1");

    // Per-index diagonal factor lookup.
    std::vector<cplx> val(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t sub = 0;
        for (std::size_t t = 0; t < k; ++t)
            sub = (sub << 1) | ((i >> (n_ - 1 - targets[t])) & 1u);
        val[i] = diag[sub];
    }
    const std::size_t d = dim_;
    for (std::size_t r = 0; r < d; ++r) {
        const cplx vr = val[r];
        cplx* row = data_.data() + r * d;
        for (std::size_t c = 0; c < d; ++c) row[c] *= vr * std::conj(val[c]);
    }
}

void DensityMatrix::apply_operator(std::span<const cplx> m, std::span<const int> targets) {
    check_targets(targets);
    const std::size_t k = targets.size();
    const std::size_t kd = std::size_t{1} << k;
    if (m.size() != kd * kd) throw std::invalid_argument("apply_operator: size mismatch");
    if (operator_norm(m, kd) > 1.0 + 1e-9)
        throw std::invalid_argument("apply_operator: operator norm exceeds 1 (trace could grow)");

    if (k == 1) {
        const cplx m2[4] = {m[0], m[1], m[2], m[3]};
        apply_1q(m2, targets[0]);
        return;
    }
    // Check for a diagonal operator and use the cheap kernel.
    bool is_diag = true;
    for (std::size_t r = 0; r < kd && is_diag; ++r)
        for (std::size_t c = 0; c < kd; ++c)
            if (r != c && std::norm(m[r * kd + c]) > 0.0) {
                is_diag = false;
                break;
            }
    if (is_diag) {
        std::vector<cplx> diag(kd);
        for (std::size_t i = 0; i < kd; ++i) diag[i] = m[i * kd + i];
        apply_diagonal(diag, targets);
        return;
    }
    apply_kernel(m, targets);
}

void DensityMatrix::apply_kernel(std::span<const cplx> m, std::span<const int> targets) {
    const std::size_t k = targets.size();
    const std::size_t kd = std::size_t{1} << k;
    // Generic k-qubit kernel: gather, multiply, scatter on rows then columns.
    std::vector<std::size_t> bits(k);
    for (std::size_t t = 0; t < k; ++t) bits[t] = mask(targets[t]);
    std::vector<std::size_t> sorted_bits = bits;
    std::sort(sorted_bits.begin(), sorted_bits.end());

    const std::size_t d = dim_;
    const std::size_t rest = d >> k;
    std::vector<std::size_t> offset(kd);
    for (std::size_t s = 0; s < kd; ++s) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < k; ++t)
            if ((s >> (k - 1 - t)) & 1u) off |= bits[t];
        offset[s] = off;
    }

    std::vector<cplx> g(kd), out(kd);
    // Row pass
    for (std::size_t h = 0; h < rest; ++h) {
        const std::size_t base = insert_zero_bits(h, sorted_bits);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t s = 0; s < kd; ++s) g[s] = data_[(base | offset[s]) * d + c];
            for (std::size_t r = 0; r < kd; ++r) {
                cplx acc{0.0, 0.0};
                for (std::size_t s = 0; s < kd; ++s) acc += m[r * kd + s] * g[s];
                out[r] = acc;
            }
            for (std::size_t s = 0; s < kd; ++s) data_[(base | offset[s]) * d + c] = out[s];
        }
    }
    // Column pass with M^dag
    for (std::size_t r = 0; r < d; ++r) {
        cplx* row = data_.data() + r * d;
        for (std::size_t h = 0; h < rest; ++h) {
            const std::size_t base = insert_zero_bits(h, sorted_bits);
            for (std::size_t s = 0; s < kd; ++s) g[s] = row[base | offset[s]];
            for (std::size_t cth = 0; cth < kd; ++cth) {
                cplx acc{0.0, 0.0};
                for (std::size_t s = 0; s < kd; ++s) acc += g[s] * std::conj(m[cth * kd + s]);
                out[cth] = acc;
            }
            for (std::size_t s = 0; s < kd; ++s) row[base | offset[s]] = out[s];
        }
    }
}

void DensityMatrix::apply_channel(std::span<const std::vector<cplx>> kraus,
                                  std::span<const int> targets) {
    check_targets(targets);
    const std::size_t k = targets.size();
    const std::size_t kd = std::size_t{1} << k;
    if (kraus.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    for (const auto& km : kraus)
        if (km.size() != kd * kd) throw std::invalid_argument("apply_channel: size mismatch");

    // Completeness screening: sum K^dag K <= I within 1e-10, i.e. the largest
    // eigenvalue of the (PSD) sum stays below 1.
    std::vector<cplx> s_sum(kd * kd, cplx{0.0, 0.0});
    for (const auto& km : kraus)
        for (std::size_t r = 0; r < kd; ++r)
            for (std::size_t c = 0; c < kd; ++c) {
                cplx acc{0.0, 0.0};
                for (std::size_t s = 0; s < kd; ++s) acc += std::conj(km[s * kd + r]) * km[s * kd + c];
                s_sum[r * kd + c] += acc;
            }
    if (operator_norm(s_sum, kd) > 1.0 + 1e-10)
        throw std::invalid_argument("apply_channel: Kraus completeness violated (trace could grow)");

    if (k == 1) {
        // Superoperator on vec([A00,A01,A10,A11]): S = sum K (x) conj(K).
        cplx s[16] = {};
        for (const auto& km : kraus)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            s[(i * 2 + j) * 4 + (a * 2 + b)] += km[i * 2 + a] * std::conj(km[j * 2 + b]);
        // Nonzero structure (idle channels are sparse: ~5 of 16 entries).
        struct Term { int out, in; double re, im; };
        Term terms[16];
        int n_terms = 0;
        for (int o = 0; o < 4; ++o)
            for (int in = 0; in < 4; ++in)
                if (std::norm(s[o * 4 + in]) > 1e-60)
                    terms[n_terms++] = {o, in, s[o * 4 + in].real(), s[o * 4 + in].imag()};

        const std::size_t bit = mask(targets[0]);
        const std::size_t d = dim_;
        auto* p = reinterpret_cast<double*>(data_.data());
        for (std::size_t hr = 0; hr < d / 2; ++hr) {
            const std::size_t r0 = insert_zero_bit(hr, bit);
            const std::size_t r1 = r0 | bit;
            for (std::size_t hc = 0; hc < d / 2; ++hc) {
                const std::size_t c0 = insert_zero_bit(hc, bit);
                const std::size_t c1 = c0 | bit;
                const std::size_t idx[4] = {r0 * d + c0, r0 * d + c1, r1 * d + c0, r1 * d + c1};
                double ar[4], ai[4], br[4] = {}, bi[4] = {};
                for (int t = 0; t < 4; ++t) {
                    ar[t] = p[2 * idx[t]];
                    ai[t] = p[2 * idx[t] + 1];
                }
                for (int t = 0; t < n_terms; ++t) {
                    const Term& tm = terms[t];
                    br[tm.out] += tm.re * ar[tm.in] - tm.im * ai[tm.in];
                    bi[tm.out] += tm.re * ai[tm.in] + tm.im * ar[tm.in];
                }
                for (int t = 0; t < 4; ++t) {
                    p[2 * idx[t]] = br[t];
                    p[2 * idx[t] + 1] = bi[t];
                }
            }
        }
        return;
    }

    // Generic path: accumulate sum_j K_j rho K_j^dag using the operator kernel
    // on copies. Not performance critical (only 1-qubit channels are hot).
    std::vector<cplx> original = data_;
    std::vector<cplx> acc(dim_ * dim_, cplx{0.0, 0.0});
    for (const auto& km : kraus) {
        data_ = original;
        apply_kernel(km, targets);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += data_[i];
    }
    data_ = std::move(acc);
}

OutcomeDistribution DensityMatrix::outcome_distribution(std::span<const int> measured) const {
    check_targets(measured);
    const std::size_t k = measured.size();
    OutcomeDistribution dist;
    dist.qubit_subset.assign(measured.begin(), measured.end());
    dist.probabilities.assign(std::size_t{1} << k, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t sub = 0;
        for (std::size_t t = 0; t < k; ++t)
            sub = (sub << 1) | ((i >> (n_ - 1 - measured[t])) & 1u);
        dist.probabilities[sub] += data_[i * dim_ + i].real();
    }
    return dist;
}

std::vector<double> DensityMatrix::diagonal_probabilities() const {
    std::vector<double> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = data_[i * dim_ + i].real();
    return out;
}

double DensityMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])));
    return worst;
}

} // namespace ryd

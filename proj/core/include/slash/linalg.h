// Copyright 2026 The slashsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLASH_LINALG_H
#define SLASH_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

/// Dense complex linear algebra for small tensor-product Hilbert spaces.
///
/// Index convention: in a Kronecker product a (x) b the FIRST factor is the
/// slower-varying index, so basis |i>|j> lives at i * dim(b) + j. The photon
/// polarization basis is |V> = |0> (vertical, written as an up-down arrow in
/// optics texts) and |H> = |1> (horizontal).
namespace slash {

using Cplx = std::complex<double>;

/// Tolerance for algebraic identities (norms, traces, idempotence).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for eigenvalue positivity; eigensolvers accumulate more error.
inline constexpr double kEigenTol = 1e-10;

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class Ket {
   public:
    explicit Ket(std::vector<Cplx> amplitudes);
    Ket(std::initializer_list<Cplx> amplitudes);

    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return amps_.size();
    }
    const Cplx &operator[](std::size_t k) const {
        return amps_[k];
    }
    std::span<const Cplx> amplitudes() const {
        return amps_;
    }

    double norm() const;
    bool is_normalized(double tol = kAlgebraTol) const;
    /// Throws ContractViolation on the zero vector.
    Ket normalized() const;

    bool operator==(const Ket &other) const = default;

   private:
    std::vector<Cplx> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Cplx inner(const Ket &a, const Ket &b);

/// Square dense matrix stored row-major.
class Operator {
   public:
    /// Zero operator.
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<Cplx> row_major);
    /// Row-wise literal, e.g. Operator({{1, 0}, {0, 1}}).
    Operator(std::initializer_list<std::initializer_list<Cplx>> rows);

    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const Cplx> diag);
    /// |k><k|
    static Operator projector(const Ket &k);
    /// |a><b|
    static Operator outer(const Ket &a, const Ket &b);

    std::size_t dim() const {
        return dim_;
    }
    const Cplx &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    Cplx &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    std::span<const Cplx> entries() const {
        return entries_;
    }

    Operator adjoint() const;
    Cplx trace() const;
    /// Largest |entry|.
    double max_abs() const;

    Operator operator*(const Operator &rhs) const;
    Ket operator*(const Ket &rhs) const;
    Operator operator+(const Operator &rhs) const;
    Operator operator-(const Operator &rhs) const;
    Operator operator*(Cplx scale) const;
    Operator &operator+=(const Operator &rhs);

    bool operator==(const Operator &other) const = default;

   private:
    std::size_t dim_;
    std::vector<Cplx> entries_;
};

inline Operator operator*(Cplx scale, const Operator &op) {
    return op * scale;
}

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Operator &a, const Operator &b);

bool is_hermitian(const Operator &a, double tol = kAlgebraTol);

/// Ascending eigenvalues of the Hermitian part (A + A^dag) / 2.
std::vector<double> hermitian_eigenvalues(const Operator &a);
double min_eigenvalue(const Operator &a);

/// Result of the density-matrix predicate. Validity is checked, never
/// enforced, so that non-physical states can still be built and audited.
struct DensityCheck {
    bool hermitian = false;
    bool positive = false;
    bool unit_trace = false;
    double hermiticity_error = 0;
    double min_eigenvalue = 0;
    double trace_error = 0;

    bool ok() const {
        return hermitian && positive && unit_trace;
    }
    std::string describe() const;
};

DensityCheck check_density_matrix(const Operator &rho);
inline bool is_density_matrix(const Operator &rho) {
    return check_density_matrix(rho).ok();
}

/// Ordered subsystem dimensions of a tensor-product space.
struct SubsystemShape {
    std::vector<std::size_t> dims;

    std::size_t total_dim() const;
    std::size_t size() const {
        return dims.size();
    }
    /// Throws ContractViolation when total_dim() != dim or any dim is zero.
    void require_matches(std::size_t dim, const char *what) const;
};

Ket tensor(const Ket &a, const Ket &b);
Operator tensor(const Operator &a, const Operator &b);

using TensorOperand = std::variant<Ket, Operator>;
/// Kind-checked product; mixing a Ket with an Operator is a ContractViolation.
TensorOperand tensor(const TensorOperand &a, const TensorOperand &b);

/// I (x) ... (x) local (x) ... (x) I with `local` on subsystem `target`.
Operator embed(const Operator &local, const SubsystemShape &shape, std::size_t target);

/// Reduced state on subsystem `keep` (0-based) of a bipartite operator.
Operator partial_trace(const Operator &rho, const SubsystemShape &shape, std::size_t keep);

/// cos(theta)|V> + sin(theta)|H>.
Ket polarization_ket(double theta);

/// Malus-law analyzer: projector onto polarization_ket(theta).
Operator polarizer_projector(double theta);

/// Raw Re Tr(rho P), unclamped.
double born_rule(const Operator &rho, const Operator &proj);

/// Re Tr(rho P), snapped into [0, 1] when within kEigenTol of an edge.
double detection_probability(const Operator &rho, const Operator &proj);

}  // namespace slash

#endif

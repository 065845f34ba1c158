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

#include "slash/linalg.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace slash {

namespace {

void require_finite(std::span<const Cplx> values, const char *what) {
    for (const auto &v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ContractViolation(std::string(what) + ": non-finite amplitude");
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        std::ostringstream ss;
        ss << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw ContractViolation(ss.str());
    }
}

}  // namespace

Ket::Ket(std::vector<Cplx> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw ContractViolation("Ket: dimension must be positive");
    }
    require_finite(amps_, "Ket");
}

Ket::Ket(std::initializer_list<Cplx> amplitudes) : Ket(std::vector<Cplx>(amplitudes)) {
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw ContractViolation("Ket::basis: index out of range");
    }
    std::vector<Cplx> v(dim);
    v[index] = 1;
    return Ket(std::move(v));
}

double Ket::norm() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

bool Ket::is_normalized(double tol) const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::abs(s - 1) <= tol;
}

Ket Ket::normalized() const {
    double n = norm();
    if (n == 0) {
        throw ContractViolation("Ket::normalized: zero vector");
    }
    std::vector<Cplx> v(amps_);
    for (auto &a : v) {
        a /= n;
    }
    return Ket(std::move(v));
}

Cplx inner(const Ket &a, const Ket &b) {
    require_same_dim(a.dim(), b.dim(), "inner");
    Cplx s = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

Operator::Operator(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) {
        throw ContractViolation("Operator: dimension must be positive");
    }
}

Operator::Operator(std::size_t dim, std::vector<Cplx> row_major) : dim_(dim), entries_(std::move(row_major)) {
    if (dim == 0 || entries_.size() != dim * dim) {
        throw ContractViolation("Operator: entries must form a nonempty square matrix");
    }
    require_finite(entries_, "Operator");
}

Operator::Operator(std::initializer_list<std::initializer_list<Cplx>> rows) : dim_(rows.size()) {
    if (dim_ == 0) {
        throw ContractViolation("Operator: dimension must be positive");
    }
    entries_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw ContractViolation("Operator: literal is not square");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite(entries_, "Operator");
}

Operator Operator::identity(std::size_t dim) {
    Operator r(dim);
    for (std::size_t k = 0; k < dim; k++) {
        r(k, k) = 1;
    }
    return r;
}

Operator Operator::diagonal(std::span<const Cplx> diag) {
    Operator r(diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        r(k, k) = diag[k];
    }
    return r;
}

Operator Operator::projector(const Ket &k) {
    return outer(k, k);
}

Operator Operator::outer(const Ket &a, const Ket &b) {
    require_same_dim(a.dim(), b.dim(), "Operator::outer");
    Operator r(a.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < b.dim(); j++) {
            r(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return r;
}

Operator Operator::adjoint() const {
    Operator r(dim_);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

Cplx Operator::trace() const {
    Cplx s = 0;
    for (std::size_t k = 0; k < dim_; k++) {
        s += (*this)(k, k);
    }
    return s;
}

double Operator::max_abs() const {
    double m = 0;
    for (const auto &e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

Operator Operator::operator*(const Operator &rhs) const {
    require_same_dim(dim_, rhs.dim_, "Operator::operator*");
    Operator r(dim_);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t k = 0; k < dim_; k++) {
            Cplx a = (*this)(i, k);
            if (a == Cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; j++) {
                r(i, j) += a * rhs(k, j);
            }
        }
    }
    return r;
}

Ket Operator::operator*(const Ket &rhs) const {
    require_same_dim(dim_, rhs.dim(), "Operator::operator*(Ket)");
    std::vector<Cplx> out(dim_);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            out[i] += (*this)(i, j) * rhs[j];
        }
    }
    return Ket(std::move(out));
}

Operator Operator::operator+(const Operator &rhs) const {
    Operator r(*this);
    r += rhs;
    return r;
}

Operator &Operator::operator+=(const Operator &rhs) {
    require_same_dim(dim_, rhs.dim_, "Operator::operator+");
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += rhs.entries_[k];
    }
    return *this;
}

Operator Operator::operator-(const Operator &rhs) const {
    require_same_dim(dim_, rhs.dim_, "Operator::operator-");
    Operator r(*this);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        r.entries_[k] -= rhs.entries_[k];
    }
    return r;
}

Operator Operator::operator*(Cplx scale) const {
    Operator r(*this);
    for (auto &e : r.entries_) {
        e *= scale;
    }
    return r;
}

double max_abs_diff(const Operator &a, const Operator &b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double m = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

bool is_hermitian(const Operator &a, double tol) {
    return max_abs_diff(a, a.adjoint()) <= tol;
}

std::vector<double> hermitian_eigenvalues(const Operator &a) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            auto ui = static_cast<std::size_t>(i);
            auto uj = static_cast<std::size_t>(j);
            m(i, j) = 0.5 * (a(ui, uj) + std::conj(a(uj, ui)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_eigenvalue(const Operator &a) {
    return hermitian_eigenvalues(a).front();
}

std::string DensityCheck::describe() const {
    std::ostringstream ss;
    ss << "hermiticity error " << hermiticity_error << ", min eigenvalue " << min_eigenvalue << ", trace error "
       << trace_error;
    return ss.str();
}

DensityCheck check_density_matrix(const Operator &rho) {
    DensityCheck c;
    c.hermiticity_error = max_abs_diff(rho, rho.adjoint());
    c.hermitian = c.hermiticity_error <= kAlgebraTol;
    c.min_eigenvalue = min_eigenvalue(rho);
    c.positive = c.min_eigenvalue >= -kEigenTol;
    c.trace_error = std::abs(rho.trace() - Cplx{1});
    c.unit_trace = c.trace_error <= kAlgebraTol;
    return c;
}

std::size_t SubsystemShape::total_dim() const {
    std::size_t d = 1;
    for (auto k : dims) {
        d *= k;
    }
    return d;
}

void SubsystemShape::require_matches(std::size_t dim, const char *what) const {
    if (dims.empty() || std::find(dims.begin(), dims.end(), 0) != dims.end()) {
        throw ContractViolation(std::string(what) + ": subsystem dims must be positive");
    }
    if (total_dim() != dim) {
        std::ostringstream ss;
        ss << what << ": shape product " << total_dim() << " does not match dimension " << dim;
        throw ContractViolation(ss.str());
    }
}

Ket tensor(const Ket &a, const Ket &b) {
    std::vector<Cplx> out;
    out.reserve(a.dim() * b.dim());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return Ket(std::move(out));
}

Operator tensor(const Operator &a, const Operator &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    Operator r(da * db);
    for (std::size_t i = 0; i < da; i++) {
        for (std::size_t j = 0; j < da; j++) {
            Cplx s = a(i, j);
            if (s == Cplx{}) {
                continue;
            }
            for (std::size_t k = 0; k < db; k++) {
                for (std::size_t l = 0; l < db; l++) {
                    r(i * db + k, j * db + l) = s * b(k, l);
                }
            }
        }
    }
    return r;
}

TensorOperand tensor(const TensorOperand &a, const TensorOperand &b) {
    if (a.index() != b.index()) {
        throw ContractViolation("tensor: cannot combine a Ket with an Operator");
    }
    if (const auto *ka = std::get_if<Ket>(&a)) {
        return tensor(*ka, std::get<Ket>(b));
    }
    return tensor(std::get<Operator>(a), std::get<Operator>(b));
}

Operator embed(const Operator &local, const SubsystemShape &shape, std::size_t target) {
    if (target >= shape.size()) {
        throw ContractViolation("embed: target subsystem out of range");
    }
    require_same_dim(local.dim(), shape.dims[target], "embed");
    std::size_t before = 1;
    std::size_t after = 1;
    for (std::size_t k = 0; k < shape.size(); k++) {
        if (k < target) {
            before *= shape.dims[k];
        } else if (k > target) {
            after *= shape.dims[k];
        }
    }
    Operator r = local;
    if (before > 1) {
        r = tensor(Operator::identity(before), r);
    }
    if (after > 1) {
        r = tensor(r, Operator::identity(after));
    }
    return r;
}

Operator partial_trace(const Operator &rho, const SubsystemShape &shape, std::size_t keep) {
    if (shape.size() != 2) {
        throw ContractViolation("partial_trace: exactly two subsystems are supported");
    }
    shape.require_matches(rho.dim(), "partial_trace");
    if (keep >= 2) {
        throw ContractViolation("partial_trace: keep index out of range");
    }
    const std::size_t da = shape.dims[0];
    const std::size_t db = shape.dims[1];
    if (keep == 0) {
        Operator r(da);
        for (std::size_t i = 0; i < da; i++) {
            for (std::size_t j = 0; j < da; j++) {
                Cplx s = 0;
                for (std::size_t k = 0; k < db; k++) {
                    s += rho(i * db + k, j * db + k);
                }
                r(i, j) = s;
            }
        }
        return r;
    }
    Operator r(db);
    for (std::size_t k = 0; k < db; k++) {
        for (std::size_t l = 0; l < db; l++) {
            Cplx s = 0;
            for (std::size_t i = 0; i < da; i++) {
                s += rho(i * db + k, i * db + l);
            }
            r(k, l) = s;
        }
    }
    return r;
}

Ket polarization_ket(double theta) {
    if (!std::isfinite(theta)) {
        throw ContractViolation("polarization_ket: theta must be finite");
    }
    return Ket{Cplx{std::cos(theta)}, Cplx{std::sin(theta)}};
}

Operator polarizer_projector(double theta) {
    return Operator::projector(polarization_ket(theta));
}

double born_rule(const Operator &rho, const Operator &proj) {
    require_same_dim(rho.dim(), proj.dim(), "detection_probability");
    // Tr(rho P) = sum_ij rho_ij P_ji
    double s = 0;
    for (std::size_t i = 0; i < rho.dim(); i++) {
        for (std::size_t j = 0; j < rho.dim(); j++) {
            s += (rho(i, j) * proj(j, i)).real();
        }
    }
    return s;
}

double detection_probability(const Operator &rho, const Operator &proj) {
    double p = born_rule(rho, proj);
    if (p < 0 && p >= -kEigenTol) {
        return 0;
    }
    if (p > 1 && p <= 1 + kEigenTol) {
        return 1;
    }
    return p;
}

}  // namespace slash

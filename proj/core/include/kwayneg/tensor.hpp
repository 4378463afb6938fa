#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kwayneg/config.hpp"

namespace kwayneg {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Dimensions of the subsystems of a composite Hilbert space, first subsystem
/// first. Basis index ordering puts the last subsystem fastest.
class SubsystemLayout {
public:
    explicit SubsystemLayout(std::vector<int> dims);

    static SubsystemLayout qubits(int count);

    int count() const { return static_cast<int>(dims_.size()); }
    int dim(int subsystem) const;
    std::size_t total_dim() const { return total_; }
    std::span<const int> dims() const { return dims_; }
    bool all_qubits() const;

    /// Product of the dimensions strictly after `subsystem`.
    std::size_t stride(int subsystem) const;

    bool operator==(const SubsystemLayout&) const = default;

private:
    std::vector<int> dims_;
    std::size_t total_ = 1;
};

/// Row-major flat index of a multi-index; throws IndexError when a component
/// is out of range.
std::size_t flat_index(std::span<const int> multi, const SubsystemLayout& layout);
std::vector<int> multi_index(std::size_t flat, const SubsystemLayout& layout);

class PureState {
public:
    /// Throws ValidationError unless the amplitudes have unit norm.
    PureState(SubsystemLayout layout, CVector amplitudes);

    /// Rescales to unit norm; throws ValidationError for the zero vector.
    static PureState normalized(SubsystemLayout layout, CVector amplitudes);
    static PureState basis(SubsystemLayout layout, std::size_t index);

    const SubsystemLayout& layout() const { return layout_; }
    const CVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

private:
    SubsystemLayout layout_;
    CVector amplitudes_;
};

class DensityOperator {
public:
    /// Checks Hermiticity, unit trace and positivity against kTol.
    DensityOperator(SubsystemLayout layout, CMatrix matrix);

    /// Wraps a matrix the caller built from valid ingredients (projectors,
    /// partial traces, convex mixtures). Only the shape is checked.
    static DensityOperator trusted(SubsystemLayout layout, CMatrix matrix);

    const SubsystemLayout& layout() const { return layout_; }
    const CMatrix& matrix() const { return matrix_; }

private:
    struct TrustedTag {};
    DensityOperator(TrustedTag, SubsystemLayout layout, CMatrix matrix);

    SubsystemLayout layout_;
    CMatrix matrix_;
};

/// Eigenvalues ascending; eigenvectors are the matching columns.
struct EigenSystem {
    RVector values;
    CMatrix vectors;
};

struct LocalUnitary {
    /// Throws ValidationError unless `matrix` is square and unitary within `tolerance`.
    LocalUnitary(int target, CMatrix matrix, double tolerance = kTol.unitary);

    int target;
    CMatrix matrix;
};

DensityOperator outer(const PureState& psi);

/// Traces out every subsystem not listed in `keep`. The kept subsystems stay
/// in their original order.
DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep);

/// Cyclic complex Jacobi. Throws ValidationError for non-Hermitian input and
/// NumericalError when the sweep limit is reached.
EigenSystem hermitian_eigensystem(const CMatrix& m);

/// Sum of singular values.
double trace_norm(const CMatrix& m);

/// Sum of |eigenvalues|, for Hermitian input only.
double hermitian_trace_norm(const CMatrix& m);

PureState apply_local_unitary(const PureState& psi, const LocalUnitary& u);

/// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);

/// Largest entry of |M - M^dagger|.
double hermiticity_defect(const CMatrix& m);

}  // namespace kwayneg

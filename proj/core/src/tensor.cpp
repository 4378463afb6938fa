#include "kwayneg/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"

namespace kwayneg {

SubsystemLayout::SubsystemLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw ArgumentError("subsystem layout needs at least one subsystem");
    }
    for (int d : dims_) {
        if (d < 2) {
            throw ArgumentError(fmt::format("subsystem dimension {} is below 2", d));
        }
        total_ *= static_cast<std::size_t>(d);
    }
}

SubsystemLayout SubsystemLayout::qubits(int count) {
    if (count < 1) {
        throw ArgumentError("qubit count must be positive");
    }
    return SubsystemLayout(std::vector<int>(static_cast<std::size_t>(count), 2));
}

int SubsystemLayout::dim(int subsystem) const {
    if (subsystem < 0 || subsystem >= count()) {
        throw IndexError(fmt::format("subsystem {} out of range for {} subsystems", subsystem, count()));
    }
    return dims_[static_cast<std::size_t>(subsystem)];
}

bool SubsystemLayout::all_qubits() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 2; });
}

std::size_t SubsystemLayout::stride(int subsystem) const {
    std::size_t s = 1;
    for (int m = count() - 1; m > subsystem; --m) {
        s *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(m)]);
    }
    return s;
}

std::size_t flat_index(std::span<const int> multi, const SubsystemLayout& layout) {
    if (static_cast<int>(multi.size()) != layout.count()) {
        throw IndexError(fmt::format("multi-index has {} components, layout has {}", multi.size(), layout.count()));
    }
    std::size_t index = 0;
    for (int m = 0; m < layout.count(); ++m) {
        const int i = multi[static_cast<std::size_t>(m)];
        const int d = layout.dim(m);
        if (i < 0 || i >= d) {
            throw IndexError(fmt::format("component {} = {} outside [0, {})", m, i, d));
        }
        index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(i);
    }
    return index;
}

std::vector<int> multi_index(std::size_t flat, const SubsystemLayout& layout) {
    if (flat >= layout.total_dim()) {
        throw IndexError(fmt::format("flat index {} outside [0, {})", flat, layout.total_dim()));
    }
    std::vector<int> multi(static_cast<std::size_t>(layout.count()));
    for (int m = layout.count() - 1; m >= 0; --m) {
        const auto d = static_cast<std::size_t>(layout.dim(m));
        multi[static_cast<std::size_t>(m)] = static_cast<int>(flat % d);
        flat /= d;
    }
    return multi;
}

// ---------------------------------------------------------------------------

PureState::PureState(SubsystemLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
        throw ValidationError(fmt::format("state has {} amplitudes, layout needs {}", amplitudes_.size(),
                                          layout_.total_dim()));
    }
    const double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || std::abs(norm * norm - 1.0) > kTol.norm) {
        throw ValidationError(fmt::format("state is not normalized: norm={:.12g}", norm));
    }
}

PureState PureState::normalized(SubsystemLayout layout, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("cannot normalize a zero or non-finite amplitude vector");
    }
    amplitudes /= norm;
    return PureState(std::move(layout), std::move(amplitudes));
}

PureState PureState::basis(SubsystemLayout layout, std::size_t index) {
    if (index >= layout.total_dim()) {
        throw IndexError(fmt::format("basis index {} outside [0, {})", index, layout.total_dim()));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(layout), std::move(v));
}

// ---------------------------------------------------------------------------

double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ArgumentError("matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityOperator::DensityOperator(TrustedTag, SubsystemLayout layout, CMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw ValidationError(fmt::format("density matrix is {}x{}, layout needs {}x{}", matrix_.rows(),
                                          matrix_.cols(), n, n));
    }
}

DensityOperator DensityOperator::trusted(SubsystemLayout layout, CMatrix matrix) {
    return DensityOperator(TrustedTag{}, std::move(layout), std::move(matrix));
}

DensityOperator::DensityOperator(SubsystemLayout layout, CMatrix matrix)
    : DensityOperator(TrustedTag{}, std::move(layout), std::move(matrix)) {
    const double herm = hermiticity_defect(matrix_);
    if (!(herm <= kTol.hermitian)) {
        throw ValidationError(fmt::format("density matrix is not Hermitian: defect={:.12g}", herm));
    }
    const double trace = matrix_.trace().real();
    if (!(std::abs(trace - 1.0) <= kTol.norm)) {
        throw ValidationError(fmt::format("density matrix trace={:.12g}", trace));
    }
    const double smallest = hermitian_eigensystem(matrix_).values[0];
    if (smallest < -kTol.psd) {
        throw ValidationError(fmt::format("density matrix is not positive: min eigenvalue={:.12g}", smallest));
    }
}

LocalUnitary::LocalUnitary(int target_, CMatrix matrix_, double tolerance) : target(target_), matrix(std::move(matrix_)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
        throw ValidationError("local unitary must be a square matrix of side >= 2");
    }
    const CMatrix defect = matrix.adjoint() * matrix - CMatrix::Identity(matrix.rows(), matrix.cols());
    const double err = defect.cwiseAbs().maxCoeff();
    if (!(err <= tolerance)) {
        throw ValidationError(fmt::format("matrix is not unitary: max |U^dagger U - I|={:.3g}", err));
    }
}

// ---------------------------------------------------------------------------

DensityOperator outer(const PureState& psi) {
    const CVector& v = psi.amplitudes();
    return DensityOperator::trusted(psi.layout(), v * v.adjoint());
}

DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep) {
    const SubsystemLayout& layout = rho.layout();
    if (keep.empty()) {
        throw ArgumentError("partial trace needs a nonempty set of kept subsystems");
    }
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw ArgumentError("kept subsystems must be distinct");
    }
    std::vector<bool> kept(static_cast<std::size_t>(layout.count()), false);
    std::vector<int> kept_dims;
    for (int m : keep) {
        kept_dims.push_back(layout.dim(m));  // range-checked
        kept[static_cast<std::size_t>(m)] = true;
    }
    SubsystemLayout out_layout(kept_dims);

    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> kept_index(n);
    std::vector<std::size_t> traced_index(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto multi = multi_index(k, layout);
        std::size_t ki = 0;
        std::size_t ti = 0;
        for (int m = 0; m < layout.count(); ++m) {
            const auto d = static_cast<std::size_t>(layout.dim(m));
            const auto i = static_cast<std::size_t>(multi[static_cast<std::size_t>(m)]);
            if (kept[static_cast<std::size_t>(m)]) {
                ki = ki * d + i;
            } else {
                ti = ti * d + i;
            }
        }
        kept_index[k] = ki;
        traced_index[k] = ti;
    }

    const auto out_n = static_cast<Eigen::Index>(out_layout.total_dim());
    CMatrix out = CMatrix::Zero(out_n, out_n);
    const CMatrix& m = rho.matrix();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (traced_index[r] == traced_index[c]) {
                out(static_cast<Eigen::Index>(kept_index[r]), static_cast<Eigen::Index>(kept_index[c])) +=
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return DensityOperator::trusted(std::move(out_layout), std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

double offdiagonal_norm(const CMatrix& a) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

// Plain complex product; std::complex multiplication goes through the
// NaN-recovering library call, which dominates the rotation loops.
inline Complex cmul(Complex x, Complex y) {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

// Zeroes a(p,q) with the unitary G = [[c, s e], [-s conj(e), c]] on (p,q):
// a <- G^dagger a G, v <- v G.
void jacobi_rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const Complex e = apq / r;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex se = s * e;
    const Complex sec = s * std::conj(e);

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - cmul(sec, akq);
        a(k, q) = cmul(se, akp) + c * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - cmul(se, aqk);
        a(q, k) = cmul(sec, apk) + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - cmul(sec, vkq);
        v(k, q) = cmul(se, vkp) + c * vkq;
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& m) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= kTol.hermitian)) {
        throw ValidationError(fmt::format("matrix is not Hermitian: defect={:.12g}", defect));
    }
    const Eigen::Index n = m.rows();
    CMatrix a = 0.5 * (m + m.adjoint());
    CMatrix v = CMatrix::Identity(n, n);
    const double threshold = kTol.jacobi_offdiag * std::max(1.0, a.norm());

    bool converged = false;
    for (int sweep = 0; sweep <= kTol.jacobi_max_sweeps; ++sweep) {
        if (offdiagonal_norm(a) < threshold) {
            converged = true;
            break;
        }
        if (sweep == kTol.jacobi_max_sweeps) {
            break;
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }
    if (!converged) {
        throw NumericalError(fmt::format("Jacobi eigensolver did not converge in {} sweeps", kTol.jacobi_max_sweeps));
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
    EigenSystem out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values[k] = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

double trace_norm(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ArgumentError("trace norm needs a square matrix");
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().sum();
}

double hermitian_trace_norm(const CMatrix& m) {
    return hermitian_eigensystem(m).values.cwiseAbs().sum();
}

PureState apply_local_unitary(const PureState& psi, const LocalUnitary& u) {
    const SubsystemLayout& layout = psi.layout();
    const int d = layout.dim(u.target);
    if (u.matrix.rows() != d) {
        throw ArgumentError(fmt::format("unitary of side {} does not act on subsystem {} of dimension {}",
                                        u.matrix.rows(), u.target, d));
    }
    const std::size_t inner = layout.stride(u.target);
    const std::size_t block = inner * static_cast<std::size_t>(d);
    const CVector& in = psi.amplitudes();
    CVector out(in.size());
    CVector fiber(d);
    for (std::size_t base = 0; base < layout.total_dim(); base += block) {
        for (std::size_t j = 0; j < inner; ++j) {
            for (int i = 0; i < d; ++i) {
                fiber[i] = in[static_cast<Eigen::Index>(base + static_cast<std::size_t>(i) * inner + j)];
            }
            const CVector mapped = u.matrix * fiber;
            for (int i = 0; i < d; ++i) {
                out[static_cast<Eigen::Index>(base + static_cast<std::size_t>(i) * inner + j)] = mapped[i];
            }
        }
    }
    return PureState(layout, std::move(out));
}

double fidelity(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout())) {
        throw ArgumentError("fidelity of states with different layouts");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace kwayneg

#pragma once

// Reference implementations used only by tests. They go through explicit
// digit loops and Eigen's own solvers instead of the library code paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "kwayneg/tensor.hpp"

namespace oracle {

using kwayneg::CMatrix;
using kwayneg::Complex;
using kwayneg::CVector;

inline std::vector<int> digits(std::size_t k, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (std::size_t m = dims.size(); m-- > 0;) {
        d[m] = static_cast<int>(k % static_cast<std::size_t>(dims[m]));
        k /= static_cast<std::size_t>(dims[m]);
    }
    return d;
}

inline std::size_t index_of(const std::vector<int>& d, const std::vector<int>& dims) {
    std::size_t k = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        k = k * static_cast<std::size_t>(dims[m]) + static_cast<std::size_t>(d[m]);
    }
    return k;
}

/// Swaps the focus digit between row and column on every element where
/// `select(row_digits, col_digits)` holds; other elements are copied.
inline CMatrix transpose_if(const CMatrix& rho, const std::vector<int>& dims, int focus,
                            const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& select) {
    CMatrix out = rho;
    const auto n = static_cast<std::size_t>(rho.rows());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            auto dr = digits(r, dims);
            auto dc = digits(c, dims);
            if (!select(dr, dc)) {
                continue;
            }
            std::swap(dr[static_cast<std::size_t>(focus)], dc[static_cast<std::size_t>(focus)]);
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rho(static_cast<Eigen::Index>(index_of(dr, dims)), static_cast<Eigen::Index>(index_of(dc, dims)));
        }
    }
    return out;
}

inline int differing(const std::vector<int>& a, const std::vector<int>& b) {
    int n = 0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        n += a[m] != b[m] ? 1 : 0;
    }
    return n;
}

inline CMatrix global_pt(const CMatrix& rho, const std::vector<int>& dims, int focus) {
    return transpose_if(rho, dims, focus, [](const auto&, const auto&) { return true; });
}

inline CMatrix kway_pt(const CMatrix& rho, const std::vector<int>& dims, int focus, int order) {
    return transpose_if(rho, dims, focus,
                        [order](const auto& a, const auto& b) { return differing(a, b) == order; });
}

inline CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
    std::vector<int> kept_dims;
    for (int m : keep) {
        kept_dims.push_back(dims[static_cast<std::size_t>(m)]);
    }
    std::size_t kept_total = 1;
    for (int d : kept_dims) {
        kept_total *= static_cast<std::size_t>(d);
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kept_total), static_cast<Eigen::Index>(kept_total));
    const auto n = static_cast<std::size_t>(rho.rows());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto dr = digits(r, dims);
            const auto dc = digits(c, dims);
            bool traced_equal = true;
            std::vector<int> kr;
            std::vector<int> kc;
            for (std::size_t m = 0; m < dims.size(); ++m) {
                if (std::find(keep.begin(), keep.end(), static_cast<int>(m)) != keep.end()) {
                    kr.push_back(dr[m]);
                    kc.push_back(dc[m]);
                } else if (dr[m] != dc[m]) {
                    traced_equal = false;
                }
            }
            if (traced_equal) {
                out(static_cast<Eigen::Index>(index_of(kr, kept_dims)), static_cast<Eigen::Index>(index_of(kc, kept_dims))) +=
                    rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

inline Eigen::VectorXd eigenvalues(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// (sum |lambda| - 1) / (d - 1) from Eigen's Hermitian solver.
inline double negativity(const CMatrix& pt, int focus_dim) {
    return (eigenvalues(pt).cwiseAbs().sum() - 1.0) / (focus_dim - 1);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Full operator of a single-qubit gate on `target` among `n` qubits.
inline CMatrix embed(const CMatrix& u, int target, int n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int m = 0; m < n; ++m) {
        out = kron(out, m == target ? u : CMatrix(CMatrix::Identity(2, 2)));
    }
    return out;
}

/// Wootters concurrence from the non-Hermitian product rho (sy sy) rho* (sy sy).
inline double concurrence(const CMatrix& rho) {
    CMatrix sy(2, 2);
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    const CMatrix yy = kron(sy, sy);
    const CMatrix r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> es(r, false);
    std::vector<double> l;
    for (Eigen::Index i = 0; i < 4; ++i) {
        l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i].real())));
    }
    std::sort(l.rbegin(), l.rend());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double det2(const CMatrix& m) { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

/// Real-amplitude random pure state.
inline CVector real_pure(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    CVector v(dim);
    for (int i = 0; i < dim; ++i) {
        v[i] = n(rng);
    }
    return v / v.norm();
}

/// Real symmetric random density matrix of the given rank.
inline CMatrix real_mixed(int dim, int rank, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXd g(dim, rank);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < rank; ++j) {
            g(i, j) = n(rng);
        }
    }
    Eigen::MatrixXd m = g * g.transpose();
    m /= m.trace();
    return m.cast<Complex>();
}

}  // namespace oracle

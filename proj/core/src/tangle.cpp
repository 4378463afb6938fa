#include "kwayneg/tangle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"

namespace kwayneg {

namespace {

const CMatrix& sigma_yy() {
    static const CMatrix yy = [] {
        CMatrix m = CMatrix::Zero(4, 4);
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return yy;
}

void require_two_qubits(const DensityOperator& rho) {
    if (!(rho.layout() == SubsystemLayout::qubits(2))) {
        throw ArgumentError("a two-qubit density operator is required");
    }
}

// Concurrence from any decomposition rho = Phi Phi^dagger: the l_i are the
// singular values of Phi^T (sigma_y x sigma_y) Phi. No square roots of a
// spectrum are taken, so nearly rank-deficient pairs keep full precision.
double tangle_from_vectors(const CMatrix& phi) {
    const CMatrix tau = phi.transpose() * sigma_yy() * phi;
    std::vector<double> lambda(4, 0.0);
    const RVector sv = Eigen::JacobiSVD<CMatrix>(tau).singularValues();
    for (Eigen::Index k = 0; k < sv.size() && k < 4; ++k) {
        lambda[static_cast<std::size_t>(k)] = sv[k];
    }
    const double c = std::max(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0);
    return c * c;
}

// Columns are the unnormalized pair states <rest|psi>, one per basis state of
// the other qubits.
CMatrix pair_vectors(const PureState& psi, int first, int second) {
    const SubsystemLayout& layout = psi.layout();
    const std::size_t rest = layout.total_dim() / 4;
    CMatrix phi = CMatrix::Zero(4, static_cast<Eigen::Index>(rest));
    std::vector<Eigen::Index> column_of(layout.total_dim());
    for (std::size_t k = 0; k < layout.total_dim(); ++k) {
        const std::vector<int> digits = multi_index(k, layout);
        std::size_t col = 0;
        for (int q = 0; q < layout.count(); ++q) {
            if (q != first && q != second) {
                col = 2 * col + static_cast<std::size_t>(digits[static_cast<std::size_t>(q)]);
            }
        }
        const auto row = 2 * digits[static_cast<std::size_t>(first)] + digits[static_cast<std::size_t>(second)];
        phi(row, static_cast<Eigen::Index>(col)) = psi[k];
    }
    return phi;
}

}  // namespace

double one_tangle(const PureState& psi, int focus) {
    if (psi.layout().dim(focus) != 2) {
        throw ArgumentError("one-tangle needs a qubit focus");
    }
    const CMatrix r = partial_trace(outer(psi), {focus}).matrix();
    const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
    return 4.0 * det;
}

CMatrix spin_flip(const DensityOperator& rho) {
    require_two_qubits(rho);
    return sigma_yy() * rho.matrix().conjugate() * sigma_yy();
}

double wootters_tangle(const DensityOperator& rho) {
    require_two_qubits(rho);
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    RVector weights(es.values.size());
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        weights[k] = es.values[k] > kTol.sqrt_clamp ? std::sqrt(es.values[k]) : 0.0;
    }
    return tangle_from_vectors(es.vectors * weights.asDiagonal());
}

TangleReport tangle_report(const PureState& psi, int focus) {
    const SubsystemLayout& layout = psi.layout();
    if (!layout.all_qubits() || layout.count() < 2) {
        throw ArgumentError("tangles need a state of at least two qubits");
    }
    TangleReport report;
    report.focus = focus;
    report.tau_focus = one_tangle(psi, focus);
    double pair_sum = 0.0;
    for (int partner = 0; partner < layout.count(); ++partner) {
        if (partner == focus) {
            continue;
        }
        const double tau = tangle_from_vectors(pair_vectors(psi, std::min(focus, partner), std::max(focus, partner)));
        report.tau_pairs[partner] = tau;
        pair_sum += tau;
    }
    if (layout.count() == 3) {
        report.tau3 = report.tau_focus - pair_sum;
    }
    return report;
}

TangleReport three_tangle(const PureState& psi, int focus) {
    if (!(psi.layout() == SubsystemLayout::qubits(3))) {
        throw ArgumentError("three tangle needs a three-qubit state");
    }
    return tangle_report(psi, focus);
}

}  // namespace kwayneg

#include "kwayneg/negativity.hpp"

#include <cmath>

#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"
#include "kwayneg/transpose.hpp"

namespace kwayneg {

namespace {

double prefactor(int focus_dim) {
    if (focus_dim < 2) {
        throw ArgumentError(fmt::format("focus dimension {} is below 2", focus_dim));
    }
    return 2.0 / static_cast<double>(focus_dim - 1);
}

CMatrix global_projector(const DensityOperator& rho, int focus) {
    const CMatrix pt = global_pt(rho, focus);
    return negative_projector(negative_subspace(pt), pt.rows());
}

void check_order(const DensityOperator& rho, int order) {
    const int n = rho.layout().count();
    if (order < 2 || order > n) {
        throw ArgumentError(fmt::format("K-way order {} outside [2, {}]", order, n));
    }
}

}  // namespace

bool NegativityReport::e0_vanishes() const { return std::abs(e0) <= kTol.inequality_slack; }

bool NegativityReport::sum_rule_holds() const { return sum_residual <= kTol.sum_rule; }

double negativity_from_pt(const CMatrix& pt, int focus_dim) {
    const double scale = prefactor(focus_dim) / 2.0;
    // A partial transpose of a Hermitian matrix is Hermitian, so its singular
    // values are the moduli of its eigenvalues.
    return (hermitian_trace_norm(pt) - 1.0) * scale;
}

std::vector<NegativeEigenpair> negative_subspace(const CMatrix& m) {
    const EigenSystem es = hermitian_eigensystem(m);
    std::vector<NegativeEigenpair> out;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        if (es.values[k] < -kTol.eigen) {
            out.push_back({es.values[k], es.vectors.col(k)});
        }
    }
    return out;
}

CMatrix negative_projector(const std::vector<NegativeEigenpair>& pairs, Eigen::Index dim) {
    CMatrix p = CMatrix::Zero(dim, dim);
    for (const auto& pair : pairs) {
        p.noalias() += pair.vector * pair.vector.adjoint();
    }
    return p;
}

double projected_trace(const CMatrix& projector, const CMatrix& m) {
    // tr(P M) = sum_{rc} P_rc M_cr
    return projector.transpose().cwiseProduct(m).sum().real();
}

double global_negativity(const DensityOperator& rho, int focus) {
    return negativity_from_pt(global_pt(rho, focus), rho.layout().dim(focus));
}

double kway_negativity(const DensityOperator& rho, int order, int focus) {
    return negativity_from_pt(kway_pt(rho, order, focus), rho.layout().dim(focus));
}

double partial_kway_negativity(const DensityOperator& rho, int order, int focus) {
    check_order(rho, order);
    const CMatrix p = global_projector(rho, focus);
    return -prefactor(rho.layout().dim(focus)) * projected_trace(p, kway_pt(rho, order, focus));
}

double e0_negativity(const DensityOperator& rho, int focus) {
    const int n = rho.layout().count();
    const double scale = prefactor(rho.layout().dim(focus)) * static_cast<double>(n - 2);
    if (n == 2) {
        return 0.0;
    }
    return -scale * projected_trace(global_projector(rho, focus), rho.matrix());
}

double pair_partial_negativity(const DensityOperator& rho, int focus, int partner) {
    const CMatrix split = pair_pt(rho, focus, partner);
    const CMatrix p = global_projector(rho, focus);
    return -prefactor(rho.layout().dim(focus)) * projected_trace(p, split);
}

NegativityReport negativity_report(const DensityOperator& rho, int focus) {
    const SubsystemLayout& layout = rho.layout();
    const int n = layout.count();
    const int dp = layout.dim(focus);
    const double scale = prefactor(dp);

    NegativityReport report;
    report.focus = focus;
    report.subsystems = n;

    const CMatrix g = global_pt(rho, focus);
    report.n_global = negativity_from_pt(g, dp);
    report.negative_eigenpairs = negative_subspace(g);
    const CMatrix p = negative_projector(report.negative_eigenpairs, g.rows());

    double e_sum = 0.0;
    for (int k = 2; k <= n; ++k) {
        const CMatrix pt = kway_pt(rho, k, focus);
        report.n_kway[k] = negativity_from_pt(pt, dp);
        const double ek = -scale * projected_trace(p, pt);
        report.e_partial[k] = ek;
        e_sum += ek;
    }
    report.e0 = n == 2 ? 0.0 : -scale * static_cast<double>(n - 2) * projected_trace(p, rho.matrix());
    report.sum_residual = std::abs(report.n_global - (e_sum - report.e0));

    if (n == 3) {
        double split_sum = 0.0;
        for (int partner = 0; partner < 3; ++partner) {
            if (partner == focus) {
                continue;
            }
            const double value = -scale * projected_trace(p, pair_pt(rho, focus, partner));
            report.pair_split[partner] = value;
            split_sum += value;
        }
        report.pair_split_residual = std::abs(report.e_partial.at(2) + report.e0 - split_sum);
    }

    if (report.e0_vanishes()) {
        for (const auto& [k, ek] : report.e_partial) {
            if (report.n_global + kTol.inequality_slack < ek) {
                report.inequality_violations.push_back(k);
            }
        }
    }
    return report;
}

}  // namespace kwayneg

#include "kwayneg/cli/report.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"

namespace kwayneg::cli {

namespace {

using Json = nlohmann::ordered_json;

// Unitaries read back from 12-digit text are only unitary to about that precision.
constexpr double kParsedUnitaryTolerance = 1e-9;

Json real(double v) { return round12(v); }

Json complex_json(Complex z) {
    Json j;
    j["re"] = real(z.real());
    j["im"] = real(z.imag());
    return j;
}

Complex complex_from(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

Json vector_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_json(v[i]));
    }
    return out;
}

CVector vector_from(const Json& j) {
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
    }
    return v;
}

Json matrix_json(const CMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(vector_json(m.row(r).transpose()));
    }
    return out;
}

CMatrix matrix_from(const Json& j) {
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        m.row(r) = vector_from(j[static_cast<std::size_t>(r)]).transpose();
    }
    return m;
}

template <typename T>
Json keyed(const std::map<int, T>& m) {
    Json out = Json::object();
    for (const auto& [k, v] : m) {
        out[std::to_string(k)] = real(v);
    }
    return out;
}

std::map<int, double> keyed_from(const Json& j) {
    std::map<int, double> out;
    for (const auto& [k, v] : j.items()) {
        out[std::stoi(k)] = v.get<double>();
    }
    return out;
}

Json tolerances_json() {
    Json t;
    t["hermitian"] = kTol.hermitian;
    t["norm"] = kTol.norm;
    t["psd"] = kTol.psd;
    t["eigen"] = kTol.eigen;
    t["unitary"] = kTol.unitary;
    t["jacobi_offdiag"] = kTol.jacobi_offdiag;
    t["jacobi_max_sweeps"] = kTol.jacobi_max_sweeps;
    t["sum_rule"] = kTol.sum_rule;
    t["inequality_slack"] = kTol.inequality_slack;
    t["spectrum_clamp"] = kTol.spectrum_clamp;
    t["sqrt_clamp"] = kTol.sqrt_clamp;
    t["drop_weight"] = kTol.drop_weight;
    return t;
}

Json negativity_json(const NegativityReport& r) {
    Json j;
    j["focus"] = r.focus;
    j["subsystems"] = r.subsystems;
    j["n_global"] = real(r.n_global);
    j["n_kway"] = keyed(r.n_kway);
    j["e_partial"] = keyed(r.e_partial);
    j["e0"] = real(r.e0);
    j["pair_split"] = keyed(r.pair_split);
    j["sum_residual"] = real(r.sum_residual);
    j["pair_split_residual"] = real(r.pair_split_residual);
    j["sum_rule_holds"] = r.sum_rule_holds();
    j["inequality_violations"] = r.inequality_violations;
    Json pairs = Json::array();
    for (const auto& p : r.negative_eigenpairs) {
        Json e;
        e["value"] = real(p.value);
        e["vector"] = vector_json(p.vector);
        pairs.push_back(std::move(e));
    }
    j["negative_eigenpairs"] = std::move(pairs);
    return j;
}

NegativityReport negativity_from(const Json& j) {
    NegativityReport r;
    r.focus = j.at("focus").get<int>();
    r.subsystems = j.at("subsystems").get<int>();
    r.n_global = j.at("n_global").get<double>();
    r.n_kway = keyed_from(j.at("n_kway"));
    r.e_partial = keyed_from(j.at("e_partial"));
    r.e0 = j.at("e0").get<double>();
    r.pair_split = keyed_from(j.at("pair_split"));
    r.sum_residual = j.at("sum_residual").get<double>();
    r.pair_split_residual = j.at("pair_split_residual").get<double>();
    r.inequality_violations = j.at("inequality_violations").get<std::vector<int>>();
    for (const Json& e : j.at("negative_eigenpairs")) {
        r.negative_eigenpairs.push_back({e.at("value").get<double>(), vector_from(e.at("vector"))});
    }
    return r;
}

Json tangle_json(const TangleReport& t) {
    Json j;
    j["focus"] = t.focus;
    j["tau_focus"] = real(t.tau_focus);
    j["tau_pairs"] = keyed(t.tau_pairs);
    if (t.tau3) {
        j["tau3"] = real(*t.tau3);
    }
    return j;
}

TangleReport tangle_from(const Json& j) {
    TangleReport t;
    t.focus = j.at("focus").get<int>();
    t.tau_focus = j.at("tau_focus").get<double>();
    t.tau_pairs = keyed_from(j.at("tau_pairs"));
    if (j.contains("tau3")) {
        t.tau3 = j.at("tau3").get<double>();
    }
    return t;
}

Json form_json(const CanonicalForm3Q& f) {
    Json j;
    j["a"] = real(f.a);
    j["b"] = real(f.b);
    j["c"] = real(f.c);
    j["d"] = real(f.d);
    j["f"] = real(f.f);
    j["phi"] = real(f.phi);
    return j;
}

CanonicalForm3Q form_from(const Json& j) {
    return {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
            j.at("d").get<double>(), j.at("f").get<double>(), j.at("phi").get<double>()};
}

Json canonical_json(const CanonicalizationResult& c) {
    Json j;
    j["residual"] = real(c.residual);
    Json branches = Json::array();
    for (const auto& b : c.branches) {
        Json bj;
        bj["form"] = form_json(b.form);
        bj["mixing"] = {{"alpha", complex_json(b.mixing.alpha)}, {"beta", complex_json(b.mixing.beta)}};
        bj["residual"] = real(b.residual);
        Json us = Json::array();
        for (const auto& u : b.unitaries) {
            us.push_back({{"target", u.target}, {"matrix", matrix_json(u.matrix)}});
        }
        bj["unitaries"] = std::move(us);
        branches.push_back(std::move(bj));
    }
    j["branches"] = std::move(branches);
    return j;
}

CanonicalizationResult canonical_from(const Json& j) {
    CanonicalizationResult c;
    c.residual = j.at("residual").get<double>();
    for (const Json& bj : j.at("branches")) {
        CanonicalBranch b;
        b.form = form_from(bj.at("form"));
        b.mixing = {complex_from(bj.at("mixing").at("alpha")), complex_from(bj.at("mixing").at("beta"))};
        b.residual = bj.at("residual").get<double>();
        for (const Json& u : bj.at("unitaries")) {
            b.unitaries.emplace_back(u.at("target").get<int>(), matrix_from(u.at("matrix")), kParsedUnitaryTolerance);
        }
        c.branches.push_back(std::move(b));
    }
    return c;
}

Json roof_json(const RoofSummary& s) {
    Json j;
    j["focus"] = s.focus;
    j["measure"] = s.measure;
    j["budget"] = {{"restarts", s.budget.restarts},
                   {"m_max", s.budget.m_max},
                   {"iterations", s.budget.iterations},
                   {"seed", s.budget.seed}};
    j["value"] = real(s.result.value);
    j["upper_bound"] = s.result.upper_bound;
    j["restarts_used"] = s.result.restarts_used;
    j["converged"] = s.result.converged;
    Json members = Json::array();
    for (const auto& m : s.result.certificate.members) {
        Json mj;
        mj["p"] = real(m.probability);
        mj["amplitudes"] = vector_json(m.state.amplitudes());
        members.push_back(std::move(mj));
    }
    Json cert;
    if (!s.result.certificate.members.empty()) {
        const auto dims = s.result.certificate.members.front().state.layout().dims();
        cert["dims"] = std::vector<int>(dims.begin(), dims.end());
    }
    cert["members"] = std::move(members);
    j["certificate"] = std::move(cert);
    return j;
}

RoofSummary roof_from(const Json& j) {
    RoofSummary s;
    s.focus = j.at("focus").get<int>();
    s.measure = j.at("measure").get<std::string>();
    const Json& b = j.at("budget");
    s.budget = {b.at("restarts").get<int>(), b.at("m_max").get<int>(), b.at("iterations").get<int>(),
                b.at("seed").get<std::uint64_t>()};
    s.result.value = j.at("value").get<double>();
    s.result.upper_bound = j.at("upper_bound").get<bool>();
    s.result.restarts_used = j.at("restarts_used").get<int>();
    s.result.converged = j.at("converged").get<bool>();
    const Json& cert = j.at("certificate");
    if (cert.contains("dims")) {
        const SubsystemLayout layout(cert.at("dims").get<std::vector<int>>());
        for (const Json& m : cert.at("members")) {
            s.result.certificate.members.push_back(
                {m.at("p").get<double>(), PureState(layout, vector_from(m.at("amplitudes")))});
        }
    }
    return s;
}

}  // namespace

double round12(double v) {
    if (!std::isfinite(v)) {
        throw InvariantViolation(fmt::format("non-finite value {} in output", v));
    }
    const double r = std::stod(fmt::format("{:.12g}", v));
    return r == 0.0 ? 0.0 : r;
}

std::string format_real(double v) { return fmt::format("{:.12g}", round12(v)); }

Json to_json(const ReportDocument& doc) {
    Json j;
    j["command"] = doc.command;
    j["tool_version"] = doc.tool_version;
    j["input_digest"] = doc.input_digest;
    j["seeds"] = doc.seeds;
    j["tolerances"] = tolerances_json();
    Json neg = Json::array();
    for (const auto& r : doc.negativity) {
        neg.push_back(negativity_json(r));
    }
    j["negativity"] = std::move(neg);
    Json tan = Json::array();
    for (const auto& t : doc.tangles) {
        tan.push_back(tangle_json(t));
    }
    j["tangles"] = std::move(tan);
    if (doc.canonical) {
        j["canonical"] = canonical_json(*doc.canonical);
    }
    if (doc.delta) {
        j["delta"] = real(*doc.delta);
    }
    if (doc.roof) {
        j["roof"] = roof_json(*doc.roof);
    }
    return j;
}

ReportDocument report_from_json(const Json& j) {
    try {
        ReportDocument doc;
        doc.command = j.at("command").get<std::string>();
        doc.tool_version = j.at("tool_version").get<std::string>();
        doc.input_digest = j.at("input_digest").get<std::string>();
        doc.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const Json& r : j.at("negativity")) {
            doc.negativity.push_back(negativity_from(r));
        }
        for (const Json& t : j.at("tangles")) {
            doc.tangles.push_back(tangle_from(t));
        }
        if (j.contains("canonical")) {
            doc.canonical = canonical_from(j.at("canonical"));
        }
        if (j.contains("delta")) {
            doc.delta = j.at("delta").get<double>();
        }
        if (j.contains("roof")) {
            doc.roof = roof_from(j.at("roof"));
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

std::string emit_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string emit_csv(const Table& table) {
    std::string out = fmt::format("{}\n", fmt::join(table.header, ","));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<std::string> cells;
        if (!table.labels.empty()) {
            cells.push_back(table.labels[r]);
        }
        for (double v : table.rows[r]) {
            cells.push_back(format_real(v));
        }
        out += fmt::format("{}\n", fmt::join(cells, ","));
    }
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw InvariantViolation("SHA-256 digest failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

}  // namespace kwayneg::cli

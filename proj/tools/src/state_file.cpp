#include "kwayneg/cli/state_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"

namespace kwayneg::cli {

namespace {

using nlohmann::json;

Complex complex_from(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j.at("re").is_number() ||
        !j.at("im").is_number() || j.size() != 2) {
        throw ParseError(fmt::format("expected {{\"re\", \"im\"}}, got {}", j.dump()));
    }
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json complex_to(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

CVector vector_from(const json& j, std::size_t expected, std::string_view what) {
    if (!j.is_array()) {
        throw ParseError(fmt::format("{} must be an array", what));
    }
    if (j.size() != expected) {
        throw ParseError(fmt::format("{} has {} entries, expected {}", what, j.size(), expected));
    }
    CVector v(static_cast<Eigen::Index>(expected));
    for (std::size_t i = 0; i < expected; ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
    }
    return v;
}

SubsystemLayout layout_from(const json& doc) {
    if (!doc.contains("dims") || !doc.at("dims").is_array() || doc.at("dims").empty()) {
        throw ParseError("missing or empty \"dims\"");
    }
    std::vector<int> dims;
    for (const json& d : doc.at("dims")) {
        if (!d.is_number_integer()) {
            throw ParseError(fmt::format("dims entries must be integers, got {}", d.dump()));
        }
        dims.push_back(d.get<int>());
    }
    try {
        return SubsystemLayout(std::move(dims));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Ensemble ensemble_from(const json& j, const SubsystemLayout& layout) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("ensemble must be a nonempty array");
    }
    Ensemble out;
    double total = 0.0;
    for (const json& member : j) {
        if (!member.is_object() || !member.contains("p") || !member.at("p").is_number() ||
            !member.contains("amplitudes")) {
            throw ParseError("ensemble members need \"p\" and \"amplitudes\"");
        }
        const double p = member.at("p").get<double>();
        if (!(p > 0.0)) {
            throw ValidationError(fmt::format("ensemble probability p={:.12g} is not positive", p));
        }
        total += p;
        out.members.push_back(
            {p, PureState(layout, vector_from(member.at("amplitudes"), layout.total_dim(), "ensemble amplitudes"))});
    }
    if (std::abs(total - 1.0) > kTol.norm) {
        throw ValidationError(fmt::format("ensemble probabilities sum={:.12g}", total));
    }
    return out;
}

}  // namespace

const PureState& StateFile::pure() const {
    if (const auto* psi = std::get_if<PureState>(&state)) {
        return *psi;
    }
    throw ArgumentError("this command needs a pure state (\"amplitudes\")");
}

DensityOperator StateFile::density() const {
    if (const auto* psi = std::get_if<PureState>(&state)) {
        return outer(*psi);
    }
    if (const auto* rho = std::get_if<DensityOperator>(&state)) {
        return *rho;
    }
    return DensityOperator(layout, std::get<Ensemble>(state).mixture());
}

StateFile parse_state_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("state file must be an object");
    }
    SubsystemLayout layout = layout_from(doc);
    const int variants = static_cast<int>(doc.contains("amplitudes")) + static_cast<int>(doc.contains("matrix")) +
                         static_cast<int>(doc.contains("ensemble"));
    if (variants != 1) {
        throw ParseError("state file needs exactly one of \"amplitudes\", \"matrix\", \"ensemble\"");
    }
    const std::size_t dim = layout.total_dim();
    if (doc.contains("amplitudes")) {
        PureState psi(layout, vector_from(doc.at("amplitudes"), dim, "amplitudes"));
        return {std::move(layout), std::move(psi)};
    }
    if (doc.contains("matrix")) {
        const json& rows = doc.at("matrix");
        if (!rows.is_array() || rows.size() != dim) {
            throw ParseError(fmt::format("matrix must have {} rows", dim));
        }
        CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            m.row(static_cast<Eigen::Index>(r)) = vector_from(rows[r], dim, "matrix row").transpose();
        }
        DensityOperator rho(layout, std::move(m));
        return {std::move(layout), std::move(rho)};
    }
    Ensemble ensemble = ensemble_from(doc.at("ensemble"), layout);
    return {std::move(layout), std::move(ensemble)};
}

StateFile load_state_file(const std::string& path, std::string* raw) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError(fmt::format("cannot open {}", path));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    StateFile file = parse_state_file(text);
    if (raw != nullptr) {
        *raw = std::move(text);
    }
    return file;
}

std::string emit_state_file(const PureState& psi) {
    json doc;
    doc["dims"] = std::vector<int>(psi.layout().dims().begin(), psi.layout().dims().end());
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        amps.push_back(complex_to(psi.amplitudes()[i]));
    }
    doc["amplitudes"] = std::move(amps);
    return doc.dump(2) + "\n";
}

std::string emit_state_file(const DensityOperator& rho) {
    json doc;
    doc["dims"] = std::vector<int>(rho.layout().dims().begin(), rho.layout().dims().end());
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) {
            row.push_back(complex_to(rho.matrix()(r, c)));
        }
        rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace kwayneg::cli

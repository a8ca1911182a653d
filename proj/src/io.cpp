#include "weldlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weldlab {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

json to_json(const FourierField& field) {
    json coeffs = json::array();
    for (const auto& c : field.coeffs) coeffs.push_back({c.real(), c.imag()});
    return {{"order", field.order}, {"coeffs", coeffs}, {"mean", field.mean}};
}

FourierField field_from_json(const json& j) {
    FourierField f(j.at("order").get<std::size_t>());
    f.mean = j.at("mean").get<double>();
    const auto& coeffs = j.at("coeffs");
    if (coeffs.size() != f.order) throw std::invalid_argument("field_from_json: size mismatch");
    for (std::size_t n = 0; n < f.order; ++n)
        f.coeffs[n] = {coeffs[n][0].get<double>(), coeffs[n][1].get<double>()};
    return f;
}

json to_json(const CircleMap& map) {
    return {{"knots", map.knots}, {"lift", map.lift}};
}

CircleMap circle_map_from_json(const json& j) {
    return CircleMap(j.at("knots").get<std::vector<double>>(),
                     j.at("lift").get<std::vector<double>>());
}

json to_json(const BoundaryMeasure& measure) {
    return {{"gamma", measure.gamma}, {"cmf", measure.cmf}};
}

BoundaryMeasure measure_from_json(const json& j) {
    BoundaryMeasure m;
    m.gamma = j.at("gamma").get<double>();
    m.cmf = j.at("cmf").get<std::vector<double>>();
    if (m.cmf.size() < 2) throw std::invalid_argument("measure_from_json: cmf too short");
    return m;
}

json to_json(const OperatorBlocks& blocks) {
    auto matrix = [](const Eigen::MatrixXcd& m) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            rows.push_back(row);
        }
        return rows;
    };
    return {{"dim", blocks.dim},
            {"tail", blocks.tail},
            {"quadrature", blocks.quadrature},
            {"M", matrix(blocks.M)},
            {"N", matrix(blocks.N)}};
}

json to_json(const WeldingSample& sample) {
    return {{"gamma", sample.gamma},
            {"kappa", sample.kappa},
            {"seed1", sample.seed1},
            {"seed2", sample.seed2},
            {"provenance", sample.provenance},
            {"map", to_json(sample.map)}};
}

json to_json(const ExperimentReport& report) {
    json estimators = json::array();
    for (const auto& e : report.estimators) {
        estimators.push_back({{"name", e.name},
                              {"primary", e.primary},
                              {"primary_se", e.primary_se},
                              {"reweighted", e.reweighted},
                              {"reweighted_se", e.reweighted_se},
                              {"discrepancy_sigmas", e.discrepancy_sigmas()}});
    }
    return {{"samples", report.samples}, {"batches", report.batches},
            {"order", report.order},     {"block_dim", report.block_dim},
            {"gamma", report.gamma},     {"passed", report.passed},
            {"estimators", estimators}};
}

json to_json(const JordanCurve& curve) {
    json vertices = json::array();
    for (const auto& v : curve.vertices) vertices.push_back({v.real(), v.imag()});
    return {{"vertices", vertices}, {"contains_origin", curve.contains_origin}};
}

std::string grid_to_csv(const GridFunction& f) {
    std::ostringstream out;
    out << "theta,value\n";
    for (std::size_t j = 0; j < f.size(); ++j) out << fmt(f.theta(j)) << ',' << fmt(f[j]) << '\n';
    return out.str();
}

std::string circle_map_to_csv(const CircleMap& map, std::size_t samples) {
    std::ostringstream out;
    out << "theta,lift\n";
    for (std::size_t j = 0; j < samples; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(samples);
        out << fmt(t) << ',' << fmt(map(t)) << '\n';
    }
    return out.str();
}

std::string measure_to_csv(const BoundaryMeasure& measure) {
    std::ostringstream out;
    out << "theta,cmf\n";
    const std::size_t g = measure.size();
    for (std::size_t j = 0; j <= g; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(g);
        out << fmt(t) << ',' << fmt(measure.cmf[j]) << '\n';
    }
    return out.str();
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "name,primary,primary_se,reweighted,reweighted_se,discrepancy_sigmas\n";
    for (const auto& e : report.estimators) {
        out << e.name << ',' << fmt(e.primary) << ',' << fmt(e.primary_se) << ','
            << fmt(e.reweighted) << ',' << fmt(e.reweighted_se) << ','
            << fmt(e.discrepancy_sigmas()) << '\n';
    }
    return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("atomic_write: rename failed for " + path);
    }
}

} // namespace weldlab

#include "batopt/fem.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "batopt/rng.hpp"

namespace batopt::fem {

namespace {

struct Geometry {
    double length;
    double cos;
    double sin;
};

Geometry geometry_of(const FrameModel& model, const Element& element) {
    const Node& a = model.nodes[element.node_i];
    const Node& b = model.nodes[element.node_j];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double length = std::hypot(dx, dy);
    return {length, dx / length, dy / length};
}

// Global -> local rotation for the 6 element DOFs.
Eigen::Matrix<double, 6, 6> rotation(const Geometry& g) {
    Eigen::Matrix<double, 6, 6> t = Eigen::Matrix<double, 6, 6>::Zero();
    for (int n = 0; n < 2; ++n) {
        const int o = 3 * n;
        t(o, o) = g.cos;
        t(o, o + 1) = g.sin;
        t(o + 1, o) = -g.sin;
        t(o + 1, o + 1) = g.cos;
        t(o + 2, o + 2) = 1.0;
    }
    return t;
}

std::array<std::size_t, 6> element_dofs(const Element& element) {
    const std::size_t i = 3 * element.node_i;
    const std::size_t j = 3 * element.node_j;
    return {i, i + 1, i + 2, j, j + 1, j + 2};
}

void check_inertias(const FrameModel& model, std::span<const double> inertias) {
    if (inertias.size() != model.parameter_count) {
        throw std::invalid_argument("expected " + std::to_string(model.parameter_count) + " inertias, got " +
                                    std::to_string(inertias.size()));
    }
    for (double value : inertias) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument("inertias must be positive and finite");
        }
    }
}

std::vector<std::size_t> free_dofs(const FrameModel& model) {
    std::vector<bool> fixed(model.dof_count(), false);
    for (std::size_t dof : model.fixed_dofs) {
        fixed[dof] = true;
    }
    std::vector<std::size_t> free;
    for (std::size_t dof = 0; dof < model.dof_count(); ++dof) {
        if (!fixed[dof]) {
            free.push_back(dof);
        }
    }
    return free;
}

}  // namespace

void FrameModel::validate() const {
    if (nodes.empty() || elements.empty()) {
        throw std::invalid_argument("frame model needs nodes and elements");
    }
    if (!(elastic_modulus > 0.0)) {
        throw std::invalid_argument("elastic modulus must be positive");
    }
    for (const auto& e : elements) {
        if (e.node_i >= nodes.size() || e.node_j >= nodes.size() || e.node_i == e.node_j) {
            throw std::invalid_argument("element references an invalid node");
        }
        if (e.parameter >= parameter_count) {
            throw std::invalid_argument("element references an invalid inertia parameter");
        }
        if (!(e.area > 0.0)) {
            throw std::invalid_argument("element area must be positive");
        }
        const Node& a = nodes[e.node_i];
        const Node& b = nodes[e.node_j];
        if (a.x == b.x && a.y == b.y) {
            throw std::invalid_argument("element has zero length");
        }
    }
    for (std::size_t dof : fixed_dofs) {
        if (dof >= dof_count()) {
            throw std::invalid_argument("support references an invalid DOF");
        }
    }
    for (const auto& g : gauges) {
        if (g.element >= elements.size() || g.position < 0.0 || g.position > 1.0) {
            throw std::invalid_argument("gauge references an invalid element or position");
        }
    }
    for (const auto& load_case : load_cases) {
        for (const auto& [dof, force] : load_case) {
            if (dof >= dof_count()) {
                throw std::invalid_argument("load references an invalid DOF");
            }
        }
    }
}

Eigen::Matrix<double, 6, 6> element_stiffness(const FrameModel& model, const Element& element, double inertia) {
    const Geometry g = geometry_of(model, element);
    const double l = g.length;
    const double ea = model.elastic_modulus * element.area / l;
    const double ei = model.elastic_modulus * inertia;
    const double k1 = 12.0 * ei / (l * l * l);
    const double k2 = 6.0 * ei / (l * l);
    const double k3 = 4.0 * ei / l;
    const double k4 = 2.0 * ei / l;

    Eigen::Matrix<double, 6, 6> local;
    // clang-format off
    local <<  ea,   0,   0, -ea,   0,   0,
               0,  k1,  k2,   0, -k1,  k2,
               0,  k2,  k3,   0, -k2,  k4,
             -ea,   0,   0,  ea,   0,   0,
               0, -k1, -k2,   0,  k1, -k2,
               0,  k2,  k4,   0, -k2,  k3;
    // clang-format on
    const auto t = rotation(g);
    return t.transpose() * local * t;
}

Eigen::MatrixXd assemble_stiffness(const FrameModel& model, std::span<const double> inertias) {
    check_inertias(model, inertias);
    const std::size_t n = model.dof_count();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& element : model.elements) {
        const auto ke = element_stiffness(model, element, inertias[element.parameter]);
        const auto dofs = element_dofs(element);
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                full(static_cast<Eigen::Index>(dofs[a]), static_cast<Eigen::Index>(dofs[b])) += ke(a, b);
            }
        }
    }
    const auto free = free_dofs(model);
    const auto m = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd reduced(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            reduced(a, b) = full(static_cast<Eigen::Index>(free[a]), static_cast<Eigen::Index>(free[b]));
        }
        if (reduced(a, a) <= 0.0) {
            throw SingularStiffness("free DOF " + std::to_string(free[a] + 1) +
                                    " has no stiffness: mechanism or insufficient supports");
        }
    }
    return reduced;
}

Eigen::MatrixXd solve_displacements(const FrameModel& model, std::span<const double> inertias) {
    const Eigen::MatrixXd k = assemble_stiffness(model, inertias);
    const auto free = free_dofs(model);
    const auto m = static_cast<Eigen::Index>(free.size());
    const auto cases = static_cast<Eigen::Index>(model.load_cases.size());

    std::vector<Eigen::Index> position_of(model.dof_count(), -1);
    for (Eigen::Index a = 0; a < m; ++a) {
        position_of[free[a]] = a;
    }
    Eigen::MatrixXd forces = Eigen::MatrixXd::Zero(m, cases);
    for (Eigen::Index c = 0; c < cases; ++c) {
        for (const auto& [dof, force] : model.load_cases[static_cast<std::size_t>(c)]) {
            // Loads on supported DOFs go straight into the reactions.
            if (position_of[dof] >= 0) {
                forces(position_of[dof], c) += force;
            }
        }
    }

    const Eigen::LLT<Eigen::MatrixXd> factor(k);
    // A mechanism can slip through LLT on round-off pivots; the condition estimate catches it.
    if (factor.info() != Eigen::Success || factor.rcond() < 1e-13) {
        throw SingularStiffness("stiffness matrix is singular or not positive definite after support elimination");
    }
    const Eigen::MatrixXd reduced = factor.solve(forces);

    Eigen::MatrixXd displacements = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(model.dof_count()), cases);
    for (Eigen::Index a = 0; a < m; ++a) {
        displacements.row(static_cast<Eigen::Index>(free[a])) = reduced.row(a);
    }
    return displacements;
}

double gauge_strain(const FrameModel& model, const Gauge& gauge, const Eigen::VectorXd& displacement) {
    const Element& element = model.elements[gauge.element];
    const Geometry g = geometry_of(model, element);
    const auto dofs = element_dofs(element);
    Eigen::Matrix<double, 6, 1> global;
    for (int a = 0; a < 6; ++a) {
        global(a) = displacement(static_cast<Eigen::Index>(dofs[a]));
    }
    const Eigen::Matrix<double, 6, 1> u = rotation(g) * global;
    const double l = g.length;
    const double s = gauge.position;

    const double axial = (u(3) - u(0)) / l;
    // Second derivative of the cubic Hermite interpolant of (v1, theta1, v2, theta2).
    const double curvature =
        ((12.0 * s - 6.0) * u(1) + l * (6.0 * s - 4.0) * u(2) + (6.0 - 12.0 * s) * u(4) + l * (6.0 * s - 2.0) * u(5)) /
        (l * l);
    return axial - gauge.fiber_offset * curvature;
}

Eigen::MatrixXd solve_strains(const FrameModel& model, std::span<const double> inertias) {
    const Eigen::MatrixXd displacements = solve_displacements(model, inertias);
    Eigen::MatrixXd strains(static_cast<Eigen::Index>(model.gauges.size()), displacements.cols());
    for (std::size_t r = 0; r < model.gauges.size(); ++r) {
        for (Eigen::Index c = 0; c < displacements.cols(); ++c) {
            strains(static_cast<Eigen::Index>(r), c) = gauge_strain(model, model.gauges[r], displacements.col(c));
        }
    }
    return strains;
}

double identification_objective(const IdentificationProblem& problem, std::span<const double> inertias) {
    const Eigen::MatrixXd analytic = solve_strains(problem.model, inertias);
    const Eigen::MatrixXd& measured = problem.measured_strains;
    if (analytic.rows() != measured.rows() || analytic.cols() != measured.cols()) {
        throw std::invalid_argument("measured strain matrix does not match gauges x load cases");
    }
    double total = 0.0;
    for (Eigen::Index r = 0; r < measured.rows(); ++r) {
        for (Eigen::Index c = 0; c < measured.cols(); ++c) {
            const double m = measured(r, c);
            if (m == 0.0) {
                throw std::domain_error("measured strain at gauge " + std::to_string(r + 1) + ", load case " +
                                        std::to_string(c + 1) +
                                        " is zero; relocate the gauge or change the load set");
            }
            total += std::abs((m - analytic(r, c)) / m);
        }
    }
    return total;
}

FrameModel parse_frame_model(const std::string& json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    FrameModel model;
    model.elastic_modulus = gpa_to_n_per_cm2(doc.at("elastic_modulus_gpa").get<double>());

    for (const auto& node : doc.at("nodes")) {
        model.nodes.push_back({node.at("x").get<double>(), node.at("y").get<double>()});
    }
    auto one_based = [](const nlohmann::json& value, const char* what) {
        const auto index = value.get<long long>();
        if (index < 1) {
            throw std::invalid_argument(std::string(what) + " indices are 1-based");
        }
        return static_cast<std::size_t>(index - 1);
    };
    for (const auto& e : doc.at("elements")) {
        Element element;
        element.node_i = one_based(e.at("nodes").at(0), "node");
        element.node_j = one_based(e.at("nodes").at(1), "node");
        element.area = e.at("area").get<double>();
        element.parameter = one_based(e.at("parameter"), "parameter");
        model.parameter_count = std::max(model.parameter_count, element.parameter + 1);
        model.elements.push_back(element);
    }
    for (const auto& support : doc.at("supports")) {
        const std::size_t node = one_based(support.at("node"), "node");
        for (const auto& component : support.at("fixed")) {
            const auto name = component.get<std::string>();
            std::size_t offset = 0;
            if (name == "u") {
                offset = 0;
            } else if (name == "v") {
                offset = 1;
            } else if (name == "theta") {
                offset = 2;
            } else {
                throw std::invalid_argument("support component must be u, v or theta, got " + name);
            }
            model.fixed_dofs.push_back(3 * node + offset);
        }
    }
    for (const auto& load_case : doc.at("load_cases")) {
        LoadCase loads;
        for (const auto& load : load_case) {
            loads.emplace_back(one_based(load.at("dof"), "dof"), load.at("force").get<double>());
        }
        model.load_cases.push_back(std::move(loads));
    }
    for (const auto& g : doc.at("gauges")) {
        Gauge gauge;
        gauge.element = one_based(g.at("element"), "element");
        gauge.position = g.value("position", 0.5);
        gauge.fiber_offset = g.at("fiber_offset").get<double>();
        model.gauges.push_back(gauge);
    }
    model.validate();
    return model;
}

FrameModel load_frame_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open frame geometry file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_frame_model(buffer.str());
    } catch (const std::exception& error) {
        throw std::runtime_error(path.string() + ": " + error.what());
    }
}

std::filesystem::path default_geometry_path() {
    return std::filesystem::path(BATOPT_DATA_DIR) / "frame_benchmark.json";
}

IdentificationProblem build_benchmark(const std::filesystem::path& geometry, double noise, std::uint64_t noise_seed) {
    std::ifstream in(geometry);
    if (!in) {
        throw std::runtime_error("cannot open frame geometry file " + geometry.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    IdentificationProblem problem;
    nlohmann::json parameters;
    try {
        problem.model = parse_frame_model(text);
        parameters = nlohmann::json::parse(text).at("parameters");
    } catch (const std::exception& error) {
        throw std::runtime_error(geometry.string() + ": " + error.what());
    }
    const std::size_t count = problem.model.parameter_count;
    problem.true_inertias = parameters.at("true_inertias").get<Vector>();
    if (problem.true_inertias.size() != count) {
        throw std::runtime_error(geometry.string() + ": true_inertias length does not match parameter count");
    }
    problem.lower.assign(count, parameters.at("lower").get<double>());
    problem.upper.assign(count, parameters.at("upper").get<double>());

    problem.measured_strains = solve_strains(problem.model, problem.true_inertias);
    if (noise > 0.0) {
        RandomStream stream(noise_seed);
        for (Eigen::Index r = 0; r < problem.measured_strains.rows(); ++r) {
            for (Eigen::Index c = 0; c < problem.measured_strains.cols(); ++c) {
                problem.measured_strains(r, c) *= 1.0 + noise * stream.normal();
            }
        }
    }
    for (Eigen::Index r = 0; r < problem.measured_strains.rows(); ++r) {
        for (Eigen::Index c = 0; c < problem.measured_strains.cols(); ++c) {
            if (problem.measured_strains(r, c) == 0.0) {
                throw std::domain_error(geometry.string() + ": synthesized strain is zero at gauge " +
                                        std::to_string(r + 1) + ", load case " + std::to_string(c + 1));
            }
        }
    }
    return problem;
}

Problem identification_problem(IdentificationProblem identification) {
    auto shared = std::make_shared<const IdentificationProblem>(std::move(identification));
    Problem p;
    p.name = "parameter_identification";
    p.description = "Planar frame moment-of-inertia identification from static strains (cm^4)";
    p.dimension = shared->model.parameter_count;
    p.objective = [shared](std::span<const double> x) { return identification_objective(*shared, x); };
    p.lower = shared->lower;
    p.upper = shared->upper;
    if (!shared->true_inertias.empty()) {
        p.known_best = KnownBest{shared->true_inertias, 0.0, "paper-quoted"};
    }
    return p;
}

}  // namespace batopt::fem

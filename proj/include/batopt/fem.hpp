#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "batopt/problem.hpp"

namespace batopt::fem {

/// Linear-static planar frame (3 DOF per node: u, v, rotation) in N and cm.
///
/// Global DOF numbering is node-major and 1-based in the geometry file:
/// node k owns DOFs 3k-2 (u), 3k-1 (v), 3k (theta).
struct Node {
    double x = 0.0;
    double y = 0.0;
};

struct Element {
    std::size_t node_i = 0;  ///< 0-based
    std::size_t node_j = 0;  ///< 0-based
    double area = 0.0;       ///< cm^2
    std::size_t parameter = 0;  ///< index into the inertia vector
};

/// Surface strain gauge on an element.
struct Gauge {
    std::size_t element = 0;  ///< 0-based
    double position = 0.5;    ///< fraction of the member length from node_i
    double fiber_offset = 0.0;  ///< signed distance from the neutral axis along local y (cm)
};

/// One load set: (0-based global DOF, force in N) pairs.
using LoadCase = std::vector<std::pair<std::size_t, double>>;

struct FrameModel {
    std::vector<Node> nodes;
    std::vector<Element> elements;
    std::vector<std::size_t> fixed_dofs;  ///< 0-based
    double elastic_modulus = 0.0;         ///< N/cm^2
    std::vector<Gauge> gauges;
    std::vector<LoadCase> load_cases;
    std::size_t parameter_count = 0;

    std::size_t dof_count() const noexcept { return 3 * nodes.size(); }
    /// Throws std::invalid_argument on dangling references.
    void validate() const;
};

class SingularStiffness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Converts GPa to the internal N/cm^2.
constexpr double gpa_to_n_per_cm2(double gpa) { return gpa * 1.0e5; }

/// 6x6 element stiffness in global axes (axial + Euler-Bernoulli bending).
Eigen::Matrix<double, 6, 6> element_stiffness(const FrameModel& model, const Element& element, double inertia);

/// Global stiffness restricted to the free DOFs (supports eliminated).
/// Throws SingularStiffness if a free DOF carries no stiffness.
Eigen::MatrixXd assemble_stiffness(const FrameModel& model, std::span<const double> inertias);

/// Full displacement vector (all DOFs, supports zero) for every load case, one column each.
Eigen::MatrixXd solve_displacements(const FrameModel& model, std::span<const double> inertias);

/// Gauge strains, one row per gauge and one column per load case.
Eigen::MatrixXd solve_strains(const FrameModel& model, std::span<const double> inertias);

/// Strain at a gauge given the full displacement vector.
double gauge_strain(const FrameModel& model, const Gauge& gauge, const Eigen::VectorXd& displacement);

struct IdentificationProblem {
    FrameModel model;
    Eigen::MatrixXd measured_strains;  ///< gauges x load cases
    Vector lower;                      ///< per-parameter inertia bounds (cm^4)
    Vector upper;
    Vector true_inertias;              ///< generating parameters, empty if unknown
};

/// Sum over all gauges and load cases of |(measured - analytic) / measured|.
/// Throws std::domain_error if a measured strain is exactly zero.
double identification_objective(const IdentificationProblem& problem, std::span<const double> inertias);

FrameModel parse_frame_model(const std::string& json_text);
FrameModel load_frame_model(const std::filesystem::path& path);

/// Path of the shipped benchmark geometry.
std::filesystem::path default_geometry_path();

/// Identification benchmark from a geometry file; measured strains are synthesized at
/// the file's true inertias, optionally with multiplicative Gaussian noise of relative
/// size `noise` (seeded).
IdentificationProblem build_benchmark(const std::filesystem::path& geometry = default_geometry_path(),
                                      double noise = 0.0, std::uint64_t noise_seed = 1);

/// Wrap as an unconstrained box problem named "parameter_identification".
Problem identification_problem(IdentificationProblem problem);

}  // namespace batopt::fem

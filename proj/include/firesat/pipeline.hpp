// Wiring between modules: coverage-backed GA evaluators and the reference
// mission replay used by the CLI.
#pragma once

#include <memory>
#include <string>

#include "firesat/coverage.hpp"
#include "firesat/edgesim.hpp"
#include "firesat/optimizer.hpp"

namespace firesat::pipeline {

// Evaluator over the region grid: expands the chromosome and runs the
// coverage evaluation. Designs with zero coverage or a worst-case swath
// below twice the grid spacing are infeasible and receive +inf objectives.
// Scalar mode packs {fitness}; multi-objective mode packs
// (1/C, R_minutes, 1/P, N).
optimizer::Evaluator make_coverage_evaluator(std::shared_ptr<const coverage::RegionGrid> grid,
                                             const kepler::EarthModel& earth,
                                             const coverage::CoverageParams& params,
                                             optimizer::Mode mode);

struct ReplayOptions {
    int subsample = 1;        // evaluate every k-th satellite (1 = full)
    double dt_s = 60.0;
    int sweep_lo = 1;
    int sweep_hi = 100;
    double geo_step_s = 3600.0;  // GEO visibility sampling interval
    int threads = 0;
};

// Expands the reference chromosome, evaluates coverage on the bundled grid,
// runs the latency sweep and the GEO visibility sampling, and reports
// {name, paper_value, computed_value, relative_error} entries side by side.
std::string replay_report_json(const coverage::RegionConfig& region,
                               const constellation::WalkerChromosome& chromosome,
                               const kepler::OrbitalElements& geo,
                               const edgesim::LinkBudget& budget,
                               const ReplayOptions& options = {});

// Parse helpers shared by the C API and the CLI glue.
coverage::CoverageParams coverage_params_from_json(const std::string& json_text);
kepler::OrbitalElements orbital_elements_from_json(const std::string& json_text);
std::string orbital_elements_to_json(const kepler::OrbitalElements& el);

// Full GA run against a region config; returns {best, pareto, stats} JSON.
std::string optimize_to_json(const optimizer::GaConfig& cfg,
                             const coverage::RegionConfig& region,
                             const coverage::CoverageParams& params,
                             const std::function<void(const optimizer::GenStats&)>& progress,
                             const optimizer::Checkpoint* resume = nullptr);

}  // namespace firesat::pipeline

#include "firesat/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace firesat::pipeline {

using nlohmann::json;

optimizer::Evaluator make_coverage_evaluator(std::shared_ptr<const coverage::RegionGrid> grid,
                                             const kepler::EarthModel& earth,
                                             const coverage::CoverageParams& params,
                                             optimizer::Mode mode) {
    return [grid, earth, params, mode](const constellation::WalkerChromosome& genes) {
        const auto cons = constellation::expand(genes);
        const auto rep = coverage::evaluate(cons, *grid, earth, params);

        optimizer::Evaluation ev;
        const bool infeasible = rep.zero_coverage || !rep.swath_ok;
        const double inf = coverage::kInfiniteFitness;
        ev.scalar = infeasible ? inf : rep.fitness;
        if (mode == optimizer::Mode::scalar) {
            ev.objectives = {ev.scalar};
        } else if (infeasible) {
            ev.objectives = {inf, inf, inf, inf};
        } else {
            ev.objectives = {1.0 / rep.c_mean, rep.r_union_s / 60.0,
                             1.0 / static_cast<double>(rep.p_cov),
                             static_cast<double>(rep.n_sats)};
        }
        return ev;
    };
}

coverage::CoverageParams coverage_params_from_json(const std::string& json_text) {
    coverage::CoverageParams p;
    if (json_text.empty()) return p;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("coverage params JSON parse error: ") + e.what());
    }
    p.dt_s = j.value("dt_s", p.dt_s);
    p.day_length_s = j.value("day_length_s", p.day_length_s);
    p.sensor.half_fov_deg = j.value("half_fov_deg", p.sensor.half_fov_deg);
    p.sensor.pixel_size_m = j.value("pixel_size_m", p.sensor.pixel_size_m);
    p.w_c = j.value("w_c", p.w_c);
    p.w_r = j.value("w_r", p.w_r);
    p.w_p = j.value("w_p", p.w_p);
    p.w_n = j.value("w_n", p.w_n);
    p.threads = j.value("threads", p.threads);
    return p;
}

kepler::OrbitalElements orbital_elements_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("orbital elements JSON parse error: ") + e.what());
    }
    kepler::OrbitalElements el;
    try {
        el.a_km = j.at("a_km").get<double>();
        el.e = j.at("e").get<double>();
        el.i_deg = j.at("i_deg").get<double>();
        el.raan_deg = j.at("raan_deg").get<double>();
        el.argp_deg = j.at("argp_deg").get<double>();
        el.ma0_deg = j.at("ma0_deg").get<double>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("orbital elements JSON missing field: ") + e.what());
    }
    return el;
}

std::string orbital_elements_to_json(const kepler::OrbitalElements& el) {
    json j{{"a_km", el.a_km},       {"e", el.e},
           {"i_deg", el.i_deg},     {"raan_deg", el.raan_deg},
           {"argp_deg", el.argp_deg}, {"ma0_deg", el.ma0_deg}};
    return j.dump(2);
}

namespace {

json comparison(const std::string& name, double paper, double computed) {
    const double rel = paper != 0.0 ? std::fabs(computed - paper) / std::fabs(paper)
                                    : std::fabs(computed - paper);
    return json{{"name", name},
                {"paper_value", paper},
                {"computed_value", computed},
                {"relative_error", rel}};
}

}  // namespace

std::string replay_report_json(const coverage::RegionConfig& region,
                               const constellation::WalkerChromosome& chromosome,
                               const kepler::OrbitalElements& geo,
                               const edgesim::LinkBudget& budget, const ReplayOptions& options) {
    const kepler::EarthModel earth;
    json entries = json::array();

    // Swath width at the reference altitude and half field of view.
    const double swath = coverage::swath_width_km(chromosome.a_km - earth.radius_km, 6.99);
    entries.push_back(comparison("swath_width_km", 236.4, swath));

    // Constellation size.
    auto cons = constellation::expand(chromosome, {}, /*allow_f_up_to_planes=*/true);
    entries.push_back(
        comparison("total_satellites", 3990.0, static_cast<double>(cons.size())));

    // Latency sweep plateau (detection total at the knee) and baseline.
    const auto sweep = edgesim::latency_sweep(budget, options.sweep_lo, options.sweep_hi);
    const int plateau_at = sweep.knee_n > 0 ? sweep.knee_n : options.sweep_hi;
    double plateau_value = sweep.rows.back().breakdown.detection_total;
    for (const auto& row : sweep.rows) {
        if (row.n_nodes == plateau_at) plateau_value = row.breakdown.detection_total;
    }
    entries.push_back(comparison("edge_detection_plateau_s", 1.39, plateau_value));
    entries.push_back(comparison("plateau_nodes", 35.0, static_cast<double>(plateau_at)));
    entries.push_back(
        comparison("single_satellite_s", 2.22, edgesim::single_sat_latency(budget).total));

    // GEO visibility fraction, sampled over one day.
    const auto thr =
        edgesim::visibility_threshold(chromosome.a_km, geo.a_km, earth.radius_km);
    double vis_sum = 0.0;
    long vis_samples = 0;
    for (double t = 0.0; t <= 86400.0 + 1e-9; t += options.geo_step_s) {
        const long visible = edgesim::count_visible(cons, geo, earth, t, thr.x_km);
        vis_sum += static_cast<double>(visible) / static_cast<double>(cons.size());
        ++vis_samples;
    }
    const double vis_fraction = vis_sum / static_cast<double>(vis_samples);
    entries.push_back(comparison("geo_visibility_fraction", 0.95, vis_fraction));

    // Coverage over the bundled grid.
    auto grid = coverage::RegionGrid::build(region, earth);
    coverage::CoverageParams params;
    params.dt_s = options.dt_s;
    params.threads = options.threads;
    constellation::Constellation eval_cons;
    if (options.subsample > 1) {
        eval_cons.source = cons.source;
        for (std::size_t i = 0; i < cons.sats.size();
             i += static_cast<std::size_t>(options.subsample)) {
            eval_cons.sats.push_back(cons.sats[i]);
        }
    }
    const auto& target = options.subsample > 1 ? eval_cons : cons;
    const auto rep = coverage::evaluate(target, grid, earth, params);
    entries.push_back(comparison("coverage_fraction", 1.0, rep.coverage_fraction));
    entries.push_back(
        comparison("coastal_revisit_s", 360.0, rep.point_revisit_sweep_mean_s));
    entries.push_back(
        comparison("central_revisit_s", 600.0, rep.central_revisit_sweep_mean_s));

    json j{{"entries", entries},
           {"subsample", options.subsample},
           {"n_evaluated", target.sats.size()},
           {"coverage_report", json::parse(rep.to_json(/*include_point_hits=*/false))},
           {"sweep_plateau_n", sweep.plateau_n},
           {"sweep_knee_n", sweep.knee_n},
           {"sweep_asymptote_s", sweep.asymptote_s},
           {"visibility_threshold_km", thr.x_km}};
    return j.dump(2);
}

std::string optimize_to_json(const optimizer::GaConfig& cfg,
                             const coverage::RegionConfig& region,
                             const coverage::CoverageParams& params,
                             const std::function<void(const optimizer::GenStats&)>& progress,
                             const optimizer::Checkpoint* resume) {
    auto grid = std::make_shared<coverage::RegionGrid>(
        coverage::RegionGrid::build(region, kepler::EarthModel{}));
    const auto evaluator =
        make_coverage_evaluator(grid, kepler::EarthModel{}, params, cfg.mode);
    const auto result = optimizer::run(cfg, evaluator, progress, resume);

    auto individual_json = [](const optimizer::Individual& ind) {
        json o;
        o["genes"] = json::parse(ind.genes.to_json());
        json objs = json::array();
        for (double v : ind.objectives) {
            objs.push_back(std::isfinite(v) ? json(v) : json("inf"));
        }
        o["objectives"] = objs;
        o["scalar"] = std::isfinite(ind.scalar) ? json(ind.scalar) : json("inf");
        return o;
    };

    json stats = json::array();
    for (const auto& st : result.stats) {
        stats.push_back({{"generation", st.generation},
                         {"best", std::isfinite(st.best_scalar) ? json(st.best_scalar)
                                                                : json("inf")},
                         {"mean", std::isfinite(st.mean_scalar) ? json(st.mean_scalar)
                                                                : json("inf")},
                         {"front0", st.front0_size},
                         {"pop_hash", st.pop_hash}});
    }
    json pareto = json::array();
    for (const auto& ind : result.pareto_front) pareto.push_back(individual_json(ind));

    json j{{"best", individual_json(result.best)},
           {"pareto", pareto},
           {"stats", stats},
           {"seed", cfg.seed}};
    return j.dump(2);
}

}  // namespace firesat::pipeline

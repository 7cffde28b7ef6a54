#include "firesat/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace firesat::optimizer {

using constellation::GeneBounds;
using constellation::WalkerChromosome;
using nlohmann::json;

void GaConfig::validate() const {
    if (population < 4 || population % 2 != 0) {
        throw BoundViolationError("population must be even and >= 4");
    }
    if (generations < 0) throw BoundViolationError("generations must be >= 0");
    if (crossover_prob < 0.0 || crossover_prob > 1.0) {
        throw BoundViolationError("crossover probability must be in [0, 1]");
    }
    if (mutation_prob < 0.0 || mutation_prob > 1.0) {
        throw BoundViolationError("mutation probability must be in [0, 1]");
    }
    if (tournament_size < 1) throw BoundViolationError("tournament size must be >= 1");
}

std::string GaConfig::to_json() const {
    json j{
        {"population", population},
        {"generations", generations},
        {"crossover_prob", crossover_prob},
        {"mutation_prob", mutation_prob},
        {"tournament_size", tournament_size},
        {"seed", seed},
        {"mode", mode == Mode::scalar ? "scalar" : "multi"},
        {"sbx_eta", sbx_eta},
        {"mutation_eta", mutation_eta},
        {"checkpoint_every", checkpoint_every},
        {"checkpoint_path", checkpoint_path},
        {"bounds",
         {{"a_min_km", bounds.a_min_km},
          {"a_max_km", bounds.a_max_km},
          {"e_min", bounds.e_min},
          {"e_max", bounds.e_max},
          {"i_min_deg", bounds.i_min_deg},
          {"i_max_deg", bounds.i_max_deg},
          {"p_min", bounds.p_min},
          {"p_max", bounds.p_max},
          {"f_min", bounds.f_min},
          {"f_max", bounds.f_max},
          {"n_min", bounds.n_min},
          {"n_max", bounds.n_max},
          {"max_total", bounds.max_total}}},
    };
    return j.dump(2);
}

GaConfig GaConfig::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("GA config JSON parse error: ") + e.what());
    }
    GaConfig c;
    c.population = j.value("population", c.population);
    c.generations = j.value("generations", c.generations);
    c.crossover_prob = j.value("crossover_prob", c.crossover_prob);
    c.mutation_prob = j.value("mutation_prob", c.mutation_prob);
    c.tournament_size = j.value("tournament_size", c.tournament_size);
    c.seed = j.value("seed", c.seed);
    const std::string mode = j.value("mode", "scalar");
    if (mode == "scalar") {
        c.mode = Mode::scalar;
    } else if (mode == "multi") {
        c.mode = Mode::multi_objective;
    } else {
        throw FormatError("GA mode must be 'scalar' or 'multi'");
    }
    c.sbx_eta = j.value("sbx_eta", c.sbx_eta);
    c.mutation_eta = j.value("mutation_eta", c.mutation_eta);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    c.checkpoint_path = j.value("checkpoint_path", c.checkpoint_path);
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        c.bounds.a_min_km = b.value("a_min_km", c.bounds.a_min_km);
        c.bounds.a_max_km = b.value("a_max_km", c.bounds.a_max_km);
        c.bounds.e_min = b.value("e_min", c.bounds.e_min);
        c.bounds.e_max = b.value("e_max", c.bounds.e_max);
        c.bounds.i_min_deg = b.value("i_min_deg", c.bounds.i_min_deg);
        c.bounds.i_max_deg = b.value("i_max_deg", c.bounds.i_max_deg);
        c.bounds.p_min = b.value("p_min", c.bounds.p_min);
        c.bounds.p_max = b.value("p_max", c.bounds.p_max);
        c.bounds.f_min = b.value("f_min", c.bounds.f_min);
        c.bounds.f_max = b.value("f_max", c.bounds.f_max);
        c.bounds.n_min = b.value("n_min", c.bounds.n_min);
        c.bounds.n_max = b.value("n_max", c.bounds.n_max);
        c.bounds.max_total = b.value("max_total", c.bounds.max_total);
    }
    return c;
}

// ---------------------------------------------------------------------------
// NSGA-II kernels
// ---------------------------------------------------------------------------

namespace {

// a dominates b: no objective worse, at least one strictly better.
bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    bool strictly = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly = true;
    }
    return strictly;
}

}  // namespace

std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<std::vector<double>>& objs) {
    const std::size_t n = objs.size();
    for (const auto& o : objs) {
        if (o.size() != objs.front().size()) {
            throw Error(ErrorCode::invalid_argument,
                        "nondominated_sort: objective vectors differ in length");
        }
    }
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> dom_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objs[p], objs[q])) {
                dominated[p].push_back(q);
            } else if (dominates(objs[q], objs[p])) {
                ++dom_count[p];
            }
        }
        if (dom_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated[p]) {
                if (--dom_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distances(const std::vector<std::vector<double>>& objs,
                                       const std::vector<std::size_t>& front) {
    if (front.empty()) {
        throw Error(ErrorCode::invalid_argument, "crowding_distances: empty front");
    }
    const std::size_t m = objs[front[0]].size();
    std::vector<double> dist(front.size(), 0.0);
    if (front.size() <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(front.size());
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return objs[front[a]][k] < objs[front[b]][k];
        });
        const double lo = objs[front[order.front()]][k];
        const double hi = objs[front[order.back()]][k];
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (!(hi > lo) || !std::isfinite(hi - lo)) continue;
        for (std::size_t i = 1; i + 1 < order.size(); ++i) {
            const double gap = objs[front[order[i + 1]]][k] - objs[front[order[i - 1]]][k];
            dist[order[i]] += gap / (hi - lo);
        }
    }
    return dist;
}

std::vector<std::size_t> select(const std::vector<Individual>& pop, std::size_t count,
                                int tournament_size, Rng& rng) {
    if (pop.empty()) throw Error(ErrorCode::invalid_argument, "select: empty population");
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(tournament_size),
                                                pop.size());
    std::vector<std::size_t> winners;
    winners.reserve(count);
    std::vector<std::size_t> entrants;
    for (std::size_t c = 0; c < count; ++c) {
        entrants.clear();
        while (entrants.size() < k) {
            const auto idx = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(pop.size()) - 1));
            if (std::find(entrants.begin(), entrants.end(), idx) == entrants.end()) {
                entrants.push_back(idx);
            }
        }
        std::size_t best = entrants[0];
        for (std::size_t i = 1; i < entrants.size(); ++i) {
            const auto& a = pop[entrants[i]];
            const auto& b = pop[best];
            const bool better = a.rank < b.rank ||
                                (a.rank == b.rank && a.crowding > b.crowding) ||
                                (a.rank == b.rank && a.crowding == b.crowding &&
                                 entrants[i] < best);
            if (better) best = entrants[i];
        }
        winners.push_back(best);
    }
    return winners;
}

// ---------------------------------------------------------------------------
// Variation operators
// ---------------------------------------------------------------------------

namespace {

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

void sbx_pair(double& x1, double& x2, double lo, double hi, double eta, Rng& rng) {
    if (std::fabs(x1 - x2) < 1e-14) return;
    const double u = rng.uniform01();
    const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double c1 = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
    const double c2 = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
    x1 = clamp(c1, lo, hi);
    x2 = clamp(c2, lo, hi);
}

double poly_mutate(double x, double lo, double hi, double eta, Rng& rng) {
    if (!(hi > lo)) return x;
    const double u = rng.uniform01();
    const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    return clamp(x + delta * (hi - lo), lo, hi);
}

}  // namespace

std::pair<WalkerChromosome, WalkerChromosome> crossover(const WalkerChromosome& p1,
                                                        const WalkerChromosome& p2,
                                                        const GaConfig& cfg, Rng& rng) {
    WalkerChromosome c1 = p1, c2 = p2;
    if (!rng.bernoulli(cfg.crossover_prob)) return {c1, c2};

    const auto& b = cfg.bounds;
    if (rng.bernoulli(0.5)) sbx_pair(c1.a_km, c2.a_km, b.a_min_km, b.a_max_km, cfg.sbx_eta, rng);
    if (rng.bernoulli(0.5)) sbx_pair(c1.e, c2.e, b.e_min, b.e_max, cfg.sbx_eta, rng);
    if (rng.bernoulli(0.5)) {
        sbx_pair(c1.i_deg, c2.i_deg, b.i_min_deg, b.i_max_deg, cfg.sbx_eta, rng);
    }

    // Integer genes (P, F, n): single cut point, head from one parent and
    // tail from the other.
    const int cut = static_cast<int>(rng.uniform_int(1, 2));
    int g1[3] = {p1.planes, p1.phasing, p1.sats_per_plane};
    int g2[3] = {p2.planes, p2.phasing, p2.sats_per_plane};
    for (int i = cut; i < 3; ++i) std::swap(g1[i], g2[i]);
    c1.planes = g1[0];
    c1.phasing = g1[1];
    c1.sats_per_plane = g1[2];
    c2.planes = g2[0];
    c2.phasing = g2[1];
    c2.sats_per_plane = g2[2];
    return {c1, c2};
}

WalkerChromosome mutate(const WalkerChromosome& ind, const GaConfig& cfg, Rng& rng) {
    WalkerChromosome m = ind;
    const auto& b = cfg.bounds;
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.a_km = poly_mutate(m.a_km, b.a_min_km, b.a_max_km, cfg.mutation_eta, rng);
    }
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.e = poly_mutate(m.e, b.e_min, b.e_max, cfg.mutation_eta, rng);
    }
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.i_deg = poly_mutate(m.i_deg, b.i_min_deg, b.i_max_deg, cfg.mutation_eta, rng);
    }
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.planes = static_cast<int>(rng.uniform_int(b.p_min, b.p_max));
    }
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.phasing = static_cast<int>(rng.uniform_int(b.f_min, b.f_max));
    }
    if (rng.bernoulli(cfg.mutation_prob)) {
        m.sats_per_plane = static_cast<int>(rng.uniform_int(b.n_min, b.n_max));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Generational loop
// ---------------------------------------------------------------------------

namespace {

WalkerChromosome random_chromosome(const GeneBounds& b, Rng& rng) {
    WalkerChromosome c;
    c.a_km = rng.uniform(b.a_min_km, b.a_max_km);
    c.e = rng.uniform(b.e_min, b.e_max);
    c.i_deg = rng.uniform(b.i_min_deg, b.i_max_deg);
    c.planes = static_cast<int>(rng.uniform_int(b.p_min, b.p_max));
    c.phasing = static_cast<int>(rng.uniform_int(b.f_min, b.f_max));
    c.sats_per_plane = static_cast<int>(rng.uniform_int(b.n_min, b.n_max));
    return c;
}

Individual evaluate_one(const WalkerChromosome& genes, const Evaluator& evaluate) {
    Individual ind;
    ind.genes = genes;
    try {
        Evaluation ev = evaluate(genes);
        ind.objectives = std::move(ev.objectives);
        ind.scalar = ev.scalar;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluatorFailureError(std::string("evaluator failed: ") + e.what() +
                                    "; chromosome: " + genes.to_json());
    }
    if (ind.objectives.empty()) {
        throw EvaluatorFailureError("evaluator returned no objectives; chromosome: " +
                                    genes.to_json());
    }
    return ind;
}

void assign_ranks(std::vector<Individual>& pop) {
    std::vector<std::vector<double>> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.objectives);
    const auto fronts = nondominated_sort(objs);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        const auto dist = crowding_distances(objs, fronts[r]);
        for (std::size_t i = 0; i < fronts[r].size(); ++i) {
            pop[fronts[r][i]].rank = static_cast<int>(r);
            pop[fronts[r][i]].crowding = dist[i];
        }
    }
}

json individual_to_json(const Individual& ind) {
    json o;
    o["genes"] = json::parse(ind.genes.to_json());
    json objs = json::array();
    for (double v : ind.objectives) {
        objs.push_back(std::isfinite(v) ? json(v) : json("inf"));
    }
    o["objectives"] = objs;
    o["scalar"] = std::isfinite(ind.scalar) ? json(ind.scalar) : json("inf");
    return o;
}

Individual individual_from_json(const json& o) {
    Individual ind;
    ind.genes = WalkerChromosome::from_json(o.at("genes").dump());
    for (const auto& v : o.at("objectives")) {
        ind.objectives.push_back(v.is_string() ? std::numeric_limits<double>::infinity()
                                               : v.get<double>());
    }
    const auto& s = o.at("scalar");
    ind.scalar = s.is_string() ? std::numeric_limits<double>::infinity() : s.get<double>();
    return ind;
}

}  // namespace

std::uint64_t population_hash(const std::vector<Individual>& pop) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& ind : pop) {
        const auto& g = ind.genes;
        h = fnv1a(&g.a_km, sizeof g.a_km, h);
        h = fnv1a(&g.e, sizeof g.e, h);
        h = fnv1a(&g.i_deg, sizeof g.i_deg, h);
        h = fnv1a(&g.planes, sizeof g.planes, h);
        h = fnv1a(&g.phasing, sizeof g.phasing, h);
        h = fnv1a(&g.sats_per_plane, sizeof g.sats_per_plane, h);
    }
    return h;
}

std::string Checkpoint::to_json() const {
    json pop = json::array();
    for (const auto& ind : population) pop.push_back(individual_to_json(ind));
    json j{{"generation", generation},
           {"rng_state", rng_state},
           {"population", pop},
           {"best", individual_to_json(best)}};
    return j.dump(2);
}

Checkpoint Checkpoint::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("checkpoint JSON parse error: ") + e.what());
    }
    Checkpoint c;
    c.generation = j.at("generation").get<int>();
    c.rng_state = j.at("rng_state").get<std::string>();
    for (const auto& o : j.at("population")) c.population.push_back(individual_from_json(o));
    c.best = individual_from_json(j.at("best"));
    return c;
}

Checkpoint Checkpoint::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureMissingError("cannot open checkpoint: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

RunResult run(const GaConfig& cfg, const Evaluator& evaluate,
              const std::function<void(const GenStats&)>& on_generation,
              const Checkpoint* resume_from) {
    cfg.validate();
    Rng rng(cfg.seed);

    std::vector<Individual> pop;
    Individual best;
    bool have_best = false;
    int start_gen = 0;

    if (resume_from != nullptr) {
        pop = resume_from->population;
        best = resume_from->best;
        have_best = true;
        start_gen = resume_from->generation + 1;
        rng.deserialize(resume_from->rng_state);
        assign_ranks(pop);
    } else {
        pop.reserve(static_cast<std::size_t>(cfg.population));
        for (int i = 0; i < cfg.population; ++i) {
            pop.push_back(evaluate_one(random_chromosome(cfg.bounds, rng), evaluate));
        }
        assign_ranks(pop);
    }

    RunResult result;
    auto track_best = [&](const Individual& ind) {
        if (!have_best || ind.scalar < best.scalar) {
            best = ind;
            have_best = true;
        }
    };
    for (const auto& ind : pop) track_best(ind);

    auto emit_stats = [&](int gen) {
        GenStats st;
        st.generation = gen;
        st.best_scalar = best.scalar;
        double sum = 0.0;
        std::size_t n_finite = 0;
        std::size_t front0 = 0;
        for (const auto& ind : pop) {
            if (std::isfinite(ind.scalar)) {
                sum += ind.scalar;
                ++n_finite;
            }
            if (ind.rank == 0) ++front0;
        }
        st.mean_scalar = n_finite > 0 ? sum / static_cast<double>(n_finite)
                                      : std::numeric_limits<double>::infinity();
        st.front0_size = front0;
        st.pop_hash = population_hash(pop);
        result.stats.push_back(st);
        if (on_generation) on_generation(st);
    };

    auto maybe_checkpoint = [&](int gen) {
        if (cfg.checkpoint_every <= 0 || cfg.checkpoint_path.empty()) return;
        if (gen % cfg.checkpoint_every != 0) return;
        Checkpoint ck;
        ck.generation = gen;
        ck.rng_state = rng.serialize();
        ck.population = pop;
        ck.best = best;
        std::ofstream out(cfg.checkpoint_path);
        if (!out) throw Error(ErrorCode::io_failure, "cannot write checkpoint: " +
                                                         cfg.checkpoint_path);
        out << ck.to_json();
    };

    emit_stats(start_gen == 0 ? 0 : start_gen - 1);

    for (int gen = std::max(start_gen, 1); gen <= cfg.generations; ++gen) {
        const auto parent_idx =
            select(pop, static_cast<std::size_t>(cfg.population), cfg.tournament_size, rng);
        std::vector<Individual> children;
        children.reserve(parent_idx.size());
        for (std::size_t i = 0; i + 1 < parent_idx.size(); i += 2) {
            auto [g1, g2] =
                crossover(pop[parent_idx[i]].genes, pop[parent_idx[i + 1]].genes, cfg, rng);
            children.push_back(evaluate_one(mutate(g1, cfg, rng), evaluate));
            children.push_back(evaluate_one(mutate(g2, cfg, rng), evaluate));
        }
        for (auto& c : children) track_best(c);

        std::vector<Individual> merged = pop;
        merged.insert(merged.end(), children.begin(), children.end());
        assign_ranks(merged);

        std::vector<std::vector<double>> objs;
        objs.reserve(merged.size());
        for (const auto& ind : merged) objs.push_back(ind.objectives);
        const auto fronts = nondominated_sort(objs);

        std::vector<Individual> next;
        next.reserve(static_cast<std::size_t>(cfg.population));
        for (const auto& front : fronts) {
            if (next.size() + front.size() <= static_cast<std::size_t>(cfg.population)) {
                for (auto idx : front) next.push_back(merged[idx]);
            } else {
                std::vector<std::size_t> order(front.size());
                for (std::size_t i = 0; i < front.size(); ++i) order[i] = i;
                const auto dist = crowding_distances(objs, front);
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return dist[a] > dist[b];
                });
                for (std::size_t i = 0; next.size() < static_cast<std::size_t>(cfg.population);
                     ++i) {
                    next.push_back(merged[front[order[i]]]);
                }
            }
            if (next.size() == static_cast<std::size_t>(cfg.population)) break;
        }
        pop = std::move(next);
        assign_ranks(pop);
        emit_stats(gen);
        maybe_checkpoint(gen);
    }

    // Final archive: the nondominated set of the final population.
    for (const auto& ind : pop) {
        if (ind.rank == 0) result.pareto_front.push_back(ind);
    }
    result.best = best;
    return result;
}

}  // namespace firesat::optimizer

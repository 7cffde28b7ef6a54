// NSGA-II search over the Walker design vector: fast non-dominated sorting,
// crowding distance, tournament selection, SBX/single-point crossover and
// polynomial/uniform-redraw mutation, with a merged elitist generational loop.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "firesat/constellation.hpp"

namespace firesat::optimizer {

struct Individual {
    constellation::WalkerChromosome genes;
    std::vector<double> objectives;  // minimized; +inf marks infeasible
    double scalar = 0.0;             // combined scalar fitness
    int rank = 0;                    // nondomination front index
    double crowding = 0.0;
};

// Evaluation outcome: the dominance objectives plus the combined scalar. In
// scalar mode objectives = {scalar}; in multi-objective mode the vector is
// (1/C, R_minutes, 1/P, N).
struct Evaluation {
    std::vector<double> objectives;
    double scalar = 0.0;
};

using Evaluator = std::function<Evaluation(const constellation::WalkerChromosome&)>;

enum class Mode { scalar, multi_objective };

struct GaConfig {
    int population = 60;    // even and >= 4
    int generations = 100;
    double crossover_prob = 0.9;
    double mutation_prob = 1.0 / 6.0;  // per gene
    int tournament_size = 2;
    std::uint64_t seed = 0;
    Mode mode = Mode::scalar;
    double sbx_eta = 15.0;
    double mutation_eta = 20.0;
    constellation::GeneBounds bounds;
    int checkpoint_every = 0;        // generations between checkpoints, 0 = off
    std::string checkpoint_path;

    void validate() const;
    std::string to_json() const;
    static GaConfig from_json(const std::string& json_text);
};

// Partition by dominance; front 0 is dominated by nobody, members of front k
// only by members of earlier fronts. Exhaustive and disjoint.
std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<std::vector<double>>& objectives);

// Crowding distances for one front (+inf at per-objective boundaries;
// zero-range objectives contribute nothing).
std::vector<double> crowding_distances(const std::vector<std::vector<double>>& objectives,
                                       const std::vector<std::size_t>& front);

// k-ary tournament on (rank, crowding) lexicographic order. Individuals may
// win any number of tournaments. Returns `count` winner indices.
std::vector<std::size_t> select(const std::vector<Individual>& pop, std::size_t count,
                                int tournament_size, Rng& rng);

// With probability crossover_prob: SBX on the continuous genes (a, e, i),
// single-point exchange on the integer genes (P, F, n). Children are clamped
// to the gene bounds. Otherwise children copy their parents.
std::pair<constellation::WalkerChromosome, constellation::WalkerChromosome> crossover(
    const constellation::WalkerChromosome& p1, const constellation::WalkerChromosome& p2,
    const GaConfig& cfg, Rng& rng);

// Per-gene mutation: polynomial perturbation inside bounds for continuous
// genes, uniform redraw for integer genes.
constellation::WalkerChromosome mutate(const constellation::WalkerChromosome& ind,
                                       const GaConfig& cfg, Rng& rng);

struct GenStats {
    int generation = 0;
    double best_scalar = 0.0;
    double mean_scalar = 0.0;  // over finite scalars
    std::size_t front0_size = 0;
    std::uint64_t pop_hash = 0;  // FNV over gene bytes, order-sensitive
};

struct RunResult {
    std::vector<Individual> pareto_front;  // final nondominated set
    Individual best;                        // best scalar ever seen
    std::vector<GenStats> stats;            // one row per generation (incl. 0)
};

struct Checkpoint {
    int generation = 0;
    std::string rng_state;
    std::vector<Individual> population;
    Individual best;

    std::string to_json() const;
    static Checkpoint from_json(const std::string& json_text);
    static Checkpoint load(const std::string& path);
};

// Generational NSGA-II: parents + children merged, sorted, truncated. Fully
// reproducible from the seed; evaluator errors are rethrown as
// EvaluatorFailureError carrying the offending chromosome.
RunResult run(const GaConfig& cfg, const Evaluator& evaluate,
              const std::function<void(const GenStats&)>& on_generation = {},
              const Checkpoint* resume_from = nullptr);

// Chromosome hash used for the per-generation population fingerprint.
std::uint64_t population_hash(const std::vector<Individual>& pop);

}  // namespace firesat::optimizer

#include "dpde/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dpde/threading.hpp"

namespace dpde {

Objective::Objective(std::string name, int d, std::vector<double> lower,
                     std::vector<double> upper, std::function<double(std::span<const double>)> fn,
                     std::optional<double> optimum_value, std::vector<double> optimum_location)
    : name_(std::move(name)), d_(d), lower_(std::move(lower)), upper_(std::move(upper)),
      fn_(std::move(fn)), optimum_value_(optimum_value),
      optimum_location_(std::move(optimum_location)) {
    if (d_ < 1) {
        throw std::invalid_argument("Objective: dimension must be >= 1");
    }
}

double Objective::evaluate_row(std::span<const double> genome) const {
    if (genome.size() != static_cast<std::size_t>(d_)) {
        throw std::invalid_argument("Objective: genome length does not match dimension");
    }
    return fn_(genome);
}

std::vector<double> Objective::evaluate_batch(const Matrix& genomes, int threads) const {
    if (genomes.cols() != static_cast<std::size_t>(d_)) {
        throw std::invalid_argument("Objective: batch column count does not match dimension");
    }
    std::vector<double> fitness(genomes.rows());
    parallel_for(genomes.rows(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            fitness[i] = fn_(genomes.row(i));
        }
    });
    return fitness;
}

double ackley(std::span<const double> genome) {
    const double d = static_cast<double>(genome.size());
    double sum_sq = 0.0;
    double sum_cos = 0.0;
    for (double x : genome) {
        sum_sq += x * x;
        sum_cos += std::cos(2.0 * std::numbers::pi * x);
    }
    return -20.0 * std::exp(-0.02 * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) + 20.0 +
           std::numbers::e;
}

double griewank(std::span<const double> genome) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t j = 0; j < genome.size(); ++j) {
        const double x = genome[j];
        sum += x * x / 4000.0;
        prod *= std::cos(x / std::sqrt(static_cast<double>(j + 1)));
    }
    return sum - prod + 1.0;
}

double rosenbrock(std::span<const double> genome) {
    if (genome.size() < 2) {
        throw std::invalid_argument("rosenbrock: requires dimension >= 2");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < genome.size(); ++j) {
        const double a = genome[j] * genome[j] - genome[j + 1];
        const double b = 1.0 - genome[j];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

Objective make_objective(std::string_view name, int d) {
    if (name == "ackley") {
        return Objective("ackley", d, std::vector<double>(static_cast<std::size_t>(d), -30.0),
                         std::vector<double>(static_cast<std::size_t>(d), 30.0), ackley, 0.0,
                         std::vector<double>(static_cast<std::size_t>(d), 0.0));
    }
    if (name == "griewank") {
        return Objective("griewank", d, std::vector<double>(static_cast<std::size_t>(d), -400.0),
                         std::vector<double>(static_cast<std::size_t>(d), 400.0), griewank, 0.0,
                         std::vector<double>(static_cast<std::size_t>(d), 0.0));
    }
    if (name == "rosenbrock") {
        if (d < 2) {
            throw std::invalid_argument("rosenbrock: requires dimension >= 2");
        }
        return Objective("rosenbrock", d,
                         std::vector<double>(static_cast<std::size_t>(d), -5.12),
                         std::vector<double>(static_cast<std::size_t>(d), 5.12), rosenbrock, 0.0,
                         std::vector<double>(static_cast<std::size_t>(d), 1.0));
    }
    throw std::invalid_argument("unknown objective: " + std::string(name));
}

std::vector<std::string> objective_names() { return {"ackley", "griewank", "rosenbrock"}; }

} // namespace dpde

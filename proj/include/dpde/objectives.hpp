#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpde/matrix.hpp"

namespace dpde {

/// A benchmark objective: scalar and batch evaluation plus its search box.
/// Batch evaluation applies the scalar function row by row in the same
/// floating-point order, so the two routes agree exactly.
class Objective {
public:
    Objective(std::string name, int d, std::vector<double> lower, std::vector<double> upper,
              std::function<double(std::span<const double>)> fn,
              std::optional<double> optimum_value = std::nullopt,
              std::vector<double> optimum_location = {});

    const std::string& name() const { return name_; }
    int dim() const { return d_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    std::optional<double> optimum_value() const { return optimum_value_; }
    const std::vector<double>& optimum_location() const { return optimum_location_; }

    double evaluate_row(std::span<const double> genome) const;
    std::vector<double> evaluate_batch(const Matrix& genomes, int threads = 1) const;

private:
    std::string name_;
    int d_;
    std::vector<double> lower_, upper_;
    std::function<double(std::span<const double>)> fn_;
    std::optional<double> optimum_value_;
    std::vector<double> optimum_location_;
};

double ackley(std::span<const double> genome);
double griewank(std::span<const double> genome);
double rosenbrock(std::span<const double> genome); // requires d >= 2

/// Registry lookup by lowercase name: "ackley", "griewank", "rosenbrock".
Objective make_objective(std::string_view name, int d);
std::vector<std::string> objective_names();

} // namespace dpde

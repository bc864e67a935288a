#pragma once

// Distribution functions, decreasing rearrangements, maximal averages,
// medians, and rearrangement-invariant norm evaluation on step functions.

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "isoperim/space.hpp"

namespace isoperim {

// Right-continuous step function on [0, domain_end): values[i] on
// [breaks[i], breaks[i+1]), values.back() on [breaks.back(), domain_end).
struct StepFunction {
    std::vector<double> breaks;  // breaks[0] == 0, strictly increasing
    std::vector<double> values;
    double domain_end = std::numeric_limits<double>::infinity();
    bool nonincreasing = false;

    double operator()(double t) const;
    double integral(double a, double b) const;
    double integral_to(double t) const { return integral(0.0, t); }
    double total_integral() const { return integral(0.0, domain_end); }
    std::size_t interval_count() const { return values.size(); }

    void validate() const;  // checks the type invariants, throws on violation
};

StepFunction distribution_function(const Field& f, const SampleSpace& space);
StepFunction decreasing_rearrangement(const Field& f, const SampleSpace& space);

// rearrangement of raw (value, weight) atoms; domain_end = sum of weights
StepFunction rearrange_atoms(std::vector<std::pair<double, double>> atoms);

// u**(t) = (1/t) int_0^t u*; exact on the step structure.
class MaximalAverage {
public:
    explicit MaximalAverage(StepFunction sf);
    double operator()(double t) const;  // throws std::domain_error for t <= 0
    const StepFunction& step() const { return sf_; }

private:
    StepFunction sf_;
    std::vector<double> cum_;  // integral of sf over [0, breaks[i]]
};

// Smallest attained value m with mu{f <= m} >= mu/2 and mu{f >= m} >= mu/2.
double median(const Field& f, const SampleSpace& space);

struct RiNormSpec {
    enum class Family { Lp, Lorentz, Marcinkiewicz, LogLorentz };
    Family family = Family::Lp;
    double p = 1.0;
    double q = 1.0;
    std::function<double(double)> weight;   // Marcinkiewicz fundamental weight
    std::vector<double> interior_critical;  // interior critical points of the weight
    int n = 2;
    double domain_measure = 1.0;  // |Omega| for LogLorentz

    static RiNormSpec Lp(double p);
    static RiNormSpec Lorentz(double p, double q);
    static RiNormSpec Marcinkiewicz(std::function<double(double)> weight,
                                    std::vector<double> interior_critical = {});
    static RiNormSpec LogLorentz(int n, double domain_measure);
};

// sf must be nonincreasing (a rearrangement). Closed-form per step interval.
double ri_norm(const StepFunction& sf, const RiNormSpec& spec);

// (int_0^t (uv)*, int_0^t u* v*); the Hardy-Littlewood inequality bounds the
// first by the second.
std::pair<double, double> product_partial_integral(const Field& u, const Field& v,
                                                   const SampleSpace& space, double t);

}  // namespace isoperim

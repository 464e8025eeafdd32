#include "idim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace idim {
namespace {

void check_probability_vector(std::span<const Scalar> weights, const char* what) {
  Scalar total = 0;
  for (const Scalar& w : weights) {
    if (!(w > Scalar(0))) {
      throw std::invalid_argument(std::string(what) + ": weights must be strictly positive");
    }
    total += w;
  }
  if (std::abs(total.to_double() - 1.0) > kMassTolerance) {
    throw std::invalid_argument(std::string(what) + ": weights must sum to 1, got " + total.str());
  }
}

void check_alpha(const Scalar& alpha) {
  if (alpha < Scalar(0) || alpha > Scalar(1)) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " + alpha.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// EmpiricalDistribution

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const Scalar> values,
                                                          std::span<const Scalar> weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("distribution: values and weights differ in length");
  }
  if (values.empty()) throw std::invalid_argument("distribution: no atoms");
  check_probability_vector(weights, "distribution");

  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], weights[i]});
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });

  EmpiricalDistribution dist;
  for (Atom& atom : atoms) {
    if (!dist.atoms_.empty() && dist.atoms_.back().value == atom.value) {
      dist.atoms_.back().weight += atom.weight;
    } else {
      dist.atoms_.push_back(std::move(atom));
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// EmpiricalDataStructure

EmpiricalDataStructure::EmpiricalDataStructure(std::vector<Scalar> weights,
                                               std::vector<std::vector<Scalar>> features)
    : weights_(std::move(weights)), features_(std::move(features)) {
  if (weights_.empty()) throw std::invalid_argument("data structure: no points");
  check_probability_vector(weights_, "data structure");
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].size() != weights_.size()) {
      throw std::invalid_argument("data structure: feature row " + std::to_string(i) + " has " +
                                  std::to_string(features_[i].size()) + " entries, expected " +
                                  std::to_string(weights_.size()));
    }
  }
}

EmpiricalDataStructure EmpiricalDataStructure::uniform(std::size_t point_count,
                                                       std::vector<std::vector<Scalar>> features) {
  if (point_count == 0) throw std::invalid_argument("data structure: no points");
  std::vector<Scalar> weights(point_count,
                              Scalar(Rational(1, static_cast<std::int64_t>(point_count))));
  return EmpiricalDataStructure(std::move(weights), std::move(features));
}

// ---------------------------------------------------------------------------
// AlphaGrid

AlphaGrid::AlphaGrid(std::size_t resolution) : resolution_(resolution) {
  if (resolution < 2) throw std::invalid_argument("alpha grid resolution must be >= 2");
}

Scalar AlphaGrid::point(std::size_t i) const {
  return Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(resolution_));
}

Scalar AlphaGrid::midpoint(std::size_t i) const {
  return Rational(static_cast<std::int64_t>(2 * i + 1), static_cast<std::int64_t>(2 * resolution_));
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction() : steps_{{Scalar(0), Scalar(0)}} {}

StepFunction::StepFunction(std::vector<Step> steps) {
  if (steps.empty() || !(steps.front().start == Scalar(0))) {
    throw std::invalid_argument("step function must start at 0");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i].start < Scalar(1)) && i > 0) {
      throw std::invalid_argument("step starts must lie below 1");
    }
    if (i > 0 && !(steps[i - 1].start < steps[i].start)) {
      throw std::invalid_argument("step starts must be strictly increasing");
    }
    if (i > 0 && steps[i - 1].value < steps[i].value) {
      throw std::invalid_argument("step values must be non-increasing");
    }
    if (!steps_.empty() && steps_.back().value == steps[i].value) continue;
    steps_.push_back(std::move(steps[i]));
  }
}

Scalar StepFunction::operator()(const Scalar& alpha) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), alpha,
                             [](const Scalar& a, const Step& s) { return a < s.start; });
  return it == steps_.begin() ? steps_.front().value : std::prev(it)->value;
}

Scalar StepFunction::clamped_integral() const {
  Scalar total = 0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Scalar& end = i + 1 < steps_.size() ? steps_[i + 1].start : Scalar(1);
    const Scalar clamped = min(steps_[i].value, Scalar(1));
    if (!clamped.is_zero()) total += (end - steps_[i].start) * clamped;
  }
  return total;
}

StepFunction StepFunction::pointwise_max(std::span<const StepFunction> family) {
  if (family.empty()) return StepFunction();
  std::vector<Scalar> starts;
  for (const StepFunction& f : family) {
    for (const Step& s : f.steps()) starts.push_back(s.start);
  }
  std::sort(starts.begin(), starts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::vector<Step> steps;
  steps.reserve(starts.size());
  for (const Scalar& start : starts) {
    Scalar value = family.front()(start);
    for (const StepFunction& f : family.subspan(1)) value = max(value, f(start));
    steps.push_back({start, value});
  }
  return StepFunction(std::move(steps));
}

// ---------------------------------------------------------------------------
// Partial and observable diameters

EmpiricalDistribution push_forward(const EmpiricalDataStructure& ds, std::size_t feature_index) {
  if (feature_index >= ds.feature_count()) {
    throw std::out_of_range("feature index " + std::to_string(feature_index) +
                            " out of range (family size " + std::to_string(ds.feature_count()) +
                            ")");
  }
  return EmpiricalDistribution::from_samples(ds.features()[feature_index], ds.weights());
}

Scalar partial_diameter(const EmpiricalDistribution& dist, const Scalar& alpha) {
  check_alpha(alpha);
  const Scalar threshold = Scalar(1) - alpha;
  if (at_least(Scalar(0), threshold)) return 0;

  const auto& atoms = dist.atoms();
  const std::size_t n = atoms.size();
  std::optional<Scalar> best;
  Scalar mass = 0;  // total weight of the window [lo, hi)
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < n; ++lo) {
    while (hi < n && !at_least(mass, threshold)) mass += atoms[hi++].weight;
    if (!at_least(mass, threshold)) break;
    Scalar diam = atoms[hi - 1].value - atoms[lo].value;
    if (!best || diam < *best) best = diam;
    mass -= atoms[lo].weight;
  }
  // The full window always qualifies, so best is set.
  return best.value_or(Scalar(0));
}

Scalar observable_diameter(const EmpiricalDataStructure& ds, const Scalar& alpha) {
  Scalar best = 0;
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    best = max(best, partial_diameter(push_forward(ds, f), alpha));
  }
  return best;
}

PushForwardFamily::PushForwardFamily(const EmpiricalDataStructure& ds) {
  distributions_.reserve(ds.feature_count());
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    EmpiricalDistribution dist = push_forward(ds, f);
    if (std::find(distributions_.begin(), distributions_.end(), dist) == distributions_.end()) {
      distributions_.push_back(std::move(dist));
    }
  }
}

Scalar PushForwardFamily::observable_diameter(const Scalar& alpha) const {
  check_alpha(alpha);
  Scalar best = 0;
  for (const EmpiricalDistribution& dist : distributions_) {
    best = max(best, partial_diameter(dist, alpha));
  }
  return best;
}

GridEstimate intrinsic_dimension_grid(const EmpiricalDataStructure& ds, const AlphaGrid& grid) {
  const PushForwardFamily family(ds);
  const std::size_t r = grid.resolution();
  auto integrand = [&](const Scalar& alpha) { return min(family.observable_diameter(alpha), 1); };

  Scalar left = 0;
  Scalar right = 0;
  Scalar mid = 0;
  Scalar previous = integrand(grid.point(0));
  for (std::size_t i = 0; i < r; ++i) {
    Scalar next = integrand(grid.point(i + 1));
    left += previous;
    right += next;
    mid += integrand(grid.midpoint(i));
    previous = std::move(next);
  }
  const Scalar width(Rational(1, static_cast<std::int64_t>(r)));
  GridEstimate est{mid * width,
                   left * width,
                   right * width,
                   Dimension::infinite(),
                   Dimension::infinite(),
                   Dimension::infinite()};
  est.dimension = Dimension::from_integral(est.integral);
  est.dimension_lower = Dimension::from_integral(est.integral_left);
  est.dimension_upper = Dimension::from_integral(est.integral_right);
  return est;
}

StepFunction partial_diameter_curve(const EmpiricalDistribution& dist) {
  const auto& atoms = dist.atoms();
  const std::size_t n = atoms.size();

  // Every window [lo, hi] qualifies from alpha = 1 - mass(window) on.
  struct Candidate {
    Scalar alpha;
    Scalar diam;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(n * (n + 1) / 2);
  for (std::size_t lo = 0; lo < n; ++lo) {
    Scalar mass = 0;
    for (std::size_t hi = lo; hi < n; ++hi) {
      mass += atoms[hi].weight;
      Scalar alpha = (lo == 0 && hi + 1 == n) ? Scalar(0) : max(Scalar(1) - mass, Scalar(0));
      candidates.push_back({std::move(alpha), atoms[hi].value - atoms[lo].value});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.alpha < b.alpha) return true;
    if (b.alpha < a.alpha) return false;
    return a.diam < b.diam;
  });

  std::vector<StepFunction::Step> steps;
  for (const Candidate& c : candidates) {
    if (steps.empty()) {
      steps.push_back({c.alpha, c.diam});
    } else if (c.diam < steps.back().value) {
      if (steps.back().start == c.alpha) {
        steps.back().value = c.diam;
      } else {
        steps.push_back({c.alpha, c.diam});
      }
    }
  }
  return StepFunction(std::move(steps));
}

StepFunction observable_diameter_curve(const EmpiricalDataStructure& ds) {
  const PushForwardFamily family(ds);
  std::vector<StepFunction> curves;
  curves.reserve(family.distributions().size());
  for (const auto& dist : family.distributions()) curves.push_back(partial_diameter_curve(dist));
  return StepFunction::pointwise_max(curves);
}

ExactEstimate intrinsic_dimension_breakpoints(const EmpiricalDataStructure& ds) {
  StepFunction curve = observable_diameter_curve(ds);
  Scalar integral = curve.clamped_integral();
  Dimension dim = Dimension::from_integral(integral);
  return {std::move(curve), std::move(integral), std::move(dim)};
}

// ---------------------------------------------------------------------------
// Structure transformations

EmpiricalDataStructure augment_constants(const EmpiricalDataStructure& ds) {
  auto features = ds.features();
  features.emplace_back(ds.point_count(), Scalar(0));
  return EmpiricalDataStructure(ds.weights(), std::move(features));
}

EmpiricalDataStructure relabel_points(const EmpiricalDataStructure& ds,
                                      std::span<const std::size_t> permutation) {
  const std::size_t n = ds.point_count();
  if (permutation.size() != n) {
    throw std::invalid_argument("permutation length differs from point count");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t target : permutation) {
    if (target >= n || seen[target]) throw std::invalid_argument("not a bijection on points");
    seen[target] = true;
  }

  std::vector<Scalar> weights(n);
  std::vector<std::vector<Scalar>> features(ds.feature_count(), std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    weights[permutation[i]] = ds.weights()[i];
    for (std::size_t f = 0; f < ds.feature_count(); ++f) {
      features[f][permutation[i]] = ds.features()[f][i];
    }
  }
  return EmpiricalDataStructure(std::move(weights), std::move(features));
}

}  // namespace idim

#pragma once

// Observable diameters and the intrinsic dimension of finite data
// structures (X, mu, F): X a finite point set, mu a probability vector on it,
// F a finite family of real-valued features.

#include <cstddef>
#include <span>
#include <vector>

#include "idim/dimension.hpp"
#include "idim/scalar.hpp"

namespace idim {

struct Atom {
  Scalar value;
  Scalar weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finitely supported probability measure on the real line. Atoms are
/// sorted by value, pairwise distinct, and carry strictly positive weights
/// summing to one.
class EmpiricalDistribution {
 public:
  /// Merges equal values (adding weights) and sorts. Throws
  /// std::invalid_argument on size mismatch, non-positive weights, or a
  /// total mass differing from 1.
  static EmpiricalDistribution from_samples(std::span<const Scalar> values,
                                            std::span<const Scalar> weights);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// Finite data structure: `point_count` points with probability weights and
/// a feature matrix with one row per feature and one column per point.
class EmpiricalDataStructure {
 public:
  EmpiricalDataStructure(std::vector<Scalar> weights, std::vector<std::vector<Scalar>> features);

  /// Normalized counting measure: every point gets the exact weight 1/n.
  static EmpiricalDataStructure uniform(std::size_t point_count,
                                        std::vector<std::vector<Scalar>> features);

  std::size_t point_count() const { return weights_.size(); }
  std::size_t feature_count() const { return features_.size(); }
  const std::vector<Scalar>& weights() const { return weights_; }
  const std::vector<std::vector<Scalar>>& features() const { return features_; }
  std::span<const Scalar> feature(std::size_t index) const { return features_.at(index); }

  friend bool operator==(const EmpiricalDataStructure&, const EmpiricalDataStructure&) = default;

 private:
  std::vector<Scalar> weights_;
  std::vector<std::vector<Scalar>> features_;
};

/// Uniform subdivision of [0, 1] into `resolution` subintervals.
class AlphaGrid {
 public:
  explicit AlphaGrid(std::size_t resolution = 1000);

  std::size_t resolution() const { return resolution_; }
  /// i / resolution, exact.
  Scalar point(std::size_t i) const;
  /// (2i + 1) / (2 resolution), exact.
  Scalar midpoint(std::size_t i) const;

 private:
  std::size_t resolution_;
};

/// Right-continuous, non-increasing step function on [0, 1]. Step i holds
/// value `steps[i].value` on [steps[i].start, steps[i+1].start), the last
/// step extending to 1.
class StepFunction {
 public:
  struct Step {
    Scalar start;
    Scalar value;
  };

  /// The zero function.
  StepFunction();
  /// Steps must start at 0, have strictly increasing starts below 1, and
  /// non-increasing values. Adjacent steps with equal values are merged.
  explicit StepFunction(std::vector<Step> steps);

  const std::vector<Step>& steps() const { return steps_; }
  Scalar operator()(const Scalar& alpha) const;

  /// Integral over [0, 1] of min(f, 1).
  Scalar clamped_integral() const;

  /// Pointwise maximum of a family of step functions; zero for an empty family.
  static StepFunction pointwise_max(std::span<const StepFunction> family);

 private:
  std::vector<Step> steps_;
};

/// The push-forward of the point measure under one feature.
/// Throws std::out_of_range for an invalid feature index.
EmpiricalDistribution push_forward(const EmpiricalDataStructure& ds, std::size_t feature_index);

/// Smallest diameter of a set carrying mass >= 1 - alpha. For a finitely
/// supported measure the optimum is a window of consecutive atoms, found by
/// a two-pointer sweep.
Scalar partial_diameter(const EmpiricalDistribution& dist, const Scalar& alpha);

/// Maximum partial diameter over all feature push-forwards; 0 for an empty
/// feature family.
Scalar observable_diameter(const EmpiricalDataStructure& ds, const Scalar& alpha);

/// Precomputed push-forwards of every feature, with duplicates removed.
/// Evaluating many alphas against one structure should go through this.
class PushForwardFamily {
 public:
  explicit PushForwardFamily(const EmpiricalDataStructure& ds);

  const std::vector<EmpiricalDistribution>& distributions() const { return distributions_; }
  Scalar observable_diameter(const Scalar& alpha) const;

 private:
  std::vector<EmpiricalDistribution> distributions_;
};

struct GridEstimate {
  /// Midpoint-rule estimate of the integral of min(ObsDiam, 1).
  Scalar integral;
  /// Left-endpoint sum; an upper bound since the integrand is non-increasing.
  Scalar integral_left;
  /// Right-endpoint sum; a lower bound.
  Scalar integral_right;
  Dimension dimension;
  /// Induced from integral_left.
  Dimension dimension_lower;
  /// Induced from integral_right.
  Dimension dimension_upper;
};

GridEstimate intrinsic_dimension_grid(const EmpiricalDataStructure& ds,
                                      const AlphaGrid& grid = AlphaGrid());

/// The partial diameter of `dist` as an exact step function of alpha.
StepFunction partial_diameter_curve(const EmpiricalDistribution& dist);

/// alpha -> ObsDiam(ds; -alpha) as an exact step function.
StepFunction observable_diameter_curve(const EmpiricalDataStructure& ds);

struct ExactEstimate {
  StepFunction observable_diameter;
  Scalar integral;
  Dimension dimension;
};

/// Intrinsic dimension by integrating the observable diameter step
/// function between its breakpoints. Exact whenever the weights are.
ExactEstimate intrinsic_dimension_breakpoints(const EmpiricalDataStructure& ds);

/// Appends one constant (zero) feature row.
EmpiricalDataStructure augment_constants(const EmpiricalDataStructure& ds);

/// Moves point i to position permutation[i], carrying its weight and its
/// feature values along. Throws std::invalid_argument unless `permutation`
/// is a bijection on the point indices.
EmpiricalDataStructure relabel_points(const EmpiricalDataStructure& ds,
                                      std::span<const std::size_t> permutation);

}  // namespace idim

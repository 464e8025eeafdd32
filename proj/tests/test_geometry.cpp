#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "idim/geometry.hpp"
#include "oracle.hpp"

using namespace idim;

namespace {

Scalar q(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

std::vector<Scalar> row(std::initializer_list<Scalar> values) { return values; }

EmpiricalDataStructure toy_rule_structure() {
  // Rules {a}->{b}, {b}->{a}, {a,c}->{b}, {b,c}->{a} over T = {ab, abc, c}.
  const Scalar h = q(1, 3);
  return EmpiricalDataStructure::uniform(
      3, {row({h, h, 0}), row({h, h, 0}), row({0, h, 0}), row({0, h, 0})});
}

/// Random structure with exact weights k_i / sum(k) and values in {0, 1/4, ..., 1}.
EmpiricalDataStructure random_structure(std::mt19937_64& rng, bool inexact_weights = false) {
  const std::size_t points = 1 + rng() % 8;
  const std::size_t features = rng() % 5;
  std::vector<std::int64_t> raw(points);
  for (auto& k : raw) k = 1 + static_cast<std::int64_t>(rng() % 5);
  const std::int64_t total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
  std::vector<Scalar> weights;
  for (auto k : raw) {
    weights.push_back(inexact_weights ? Scalar::inexact(double(k) / double(total)) : q(k, total));
  }
  std::vector<std::vector<Scalar>> rows(features);
  for (auto& r : rows) {
    for (std::size_t j = 0; j < points; ++j) r.push_back(q(static_cast<std::int64_t>(rng() % 5), 4));
  }
  return EmpiricalDataStructure(std::move(weights), std::move(rows));
}

std::vector<Scalar> alpha_samples() {
  std::vector<Scalar> out;
  for (std::int64_t k = 0; k <= 40; ++k) out.push_back(q(k, 40));
  for (std::int64_t k = 0; k < 6; ++k) out.push_back(q(k, 6));
  out.push_back(q(1, 3));
  out.push_back(q(2, 3));
  std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("push_forward examples") {
  SUBCASE("three equal points, feature (0, 0, 1)") {
    auto ds = EmpiricalDataStructure::uniform(3, {row({0, 0, 1})});
    auto dist = push_forward(ds, 0);
    REQUIRE(dist.size() == 2);
    CHECK(dist.atoms()[0] == Atom{q(0), q(2, 3)});
    CHECK(dist.atoms()[1] == Atom{q(1), q(1, 3)});
  }
  SUBCASE("single point is a Dirac measure") {
    auto ds = EmpiricalDataStructure::uniform(1, {row({q(17, 5)})});
    auto dist = push_forward(ds, 0);
    REQUIRE(dist.size() == 1);
    CHECK(dist.atoms()[0] == Atom{q(17, 5), q(1)});
  }
  SUBCASE("equal values merge") {
    EmpiricalDataStructure ds({q(3, 5), q(2, 5)}, {row({5, 5})});
    auto dist = push_forward(ds, 0);
    REQUIRE(dist.size() == 1);
    CHECK(dist.atoms()[0] == Atom{q(5), q(1)});
  }
  SUBCASE("index out of range") {
    auto ds = EmpiricalDataStructure::uniform(2, {row({0, 1})});
    CHECK_THROWS_AS(push_forward(ds, 1), std::out_of_range);
  }
}

TEST_CASE("data structure validation") {
  CHECK_THROWS_AS(EmpiricalDataStructure({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDataStructure({q(1, 2), q(1, 3)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDataStructure({q(1), q(0)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDataStructure({q(1, 2), q(1, 2)}, {row({0})}), std::invalid_argument);
  CHECK_THROWS_AS(AlphaGrid(1), std::invalid_argument);
  CHECK_NOTHROW(EmpiricalDataStructure({Scalar::inexact(0.1), Scalar::inexact(0.2),
                                        Scalar::inexact(0.7)},
                                       {}));
}

TEST_CASE("partial_diameter examples") {
  const std::vector<Scalar> values{q(0), q(1)};
  const std::vector<Scalar> weights{q(3, 5), q(2, 5)};
  const auto two_atoms = EmpiricalDistribution::from_samples(values, weights);

  // alpha = 0.3: the heavier atom carries 0.6 < 0.7, so both atoms are needed.
  CHECK(partial_diameter(two_atoms, q(3, 10)) == q(1));
  // alpha = 0.45: the atom at 0 alone carries 0.6 >= 0.55.
  CHECK(partial_diameter(two_atoms, q(9, 20)) == q(0));
  // Boundary: a window with mass exactly 1 - alpha qualifies.
  CHECK(partial_diameter(two_atoms, q(2, 5)) == q(0));

  const std::vector<Scalar> w2{q(2, 3), q(1, 3)};
  const auto thirds = EmpiricalDistribution::from_samples(values, w2);
  CHECK(partial_diameter(thirds, q(1, 2)) == q(0));
  CHECK(partial_diameter(thirds, q(1, 2)) == oracle::partial_diameter(thirds, q(1, 2)));

  const std::vector<Scalar> single_v{q(42)};
  const std::vector<Scalar> single_w{q(1)};
  const auto dirac = EmpiricalDistribution::from_samples(single_v, single_w);
  for (const Scalar& a : alpha_samples()) CHECK(partial_diameter(dirac, a) == q(0));

  CHECK_THROWS_AS(partial_diameter(dirac, q(-1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(partial_diameter(dirac, q(11, 10)), std::invalid_argument);
}

TEST_CASE("observable_diameter examples") {
  auto constant = EmpiricalDataStructure::uniform(3, {row({2, 2, 2}), row({0, 0, 0})});
  auto empty = EmpiricalDataStructure::uniform(4, {});
  auto two = EmpiricalDataStructure::uniform(3, {row({0, 0, 1}), row({0, 1, 1})});
  for (const Scalar& a : alpha_samples()) {
    CHECK(observable_diameter(constant, a) == q(0));
    CHECK(observable_diameter(empty, a) == q(0));
  }
  CHECK(observable_diameter(two, q(1, 5)) == q(1));
  // Oracle: brute force over both features' atom subsets.
  Scalar brute = 0;
  for (std::size_t f = 0; f < 2; ++f) {
    brute = max(brute, oracle::partial_diameter(push_forward(two, f), q(1, 5)));
  }
  CHECK(brute == q(1));
}

TEST_CASE("intrinsic_dimension_grid examples") {
  SUBCASE("single point gives infinity") {
    auto ds = EmpiricalDataStructure::uniform(1, {row({3}), row({-1})});
    auto est = intrinsic_dimension_grid(ds);
    CHECK(est.dimension.is_infinite());
    CHECK(est.dimension_lower.is_infinite());
  }
  SUBCASE("two atoms at 0 and 1 give 4") {
    auto ds = EmpiricalDataStructure::uniform(2, {row({0, 1})});
    auto est = intrinsic_dimension_grid(ds);
    REQUIRE(est.integral.is_exact());
    CHECK(est.integral.exact() == Rational(1, 2));
    CHECK(est.dimension.str() == "4");
    CHECK(est.integral_right <= Scalar(Rational(1, 2)));
    CHECK(Scalar(Rational(1, 2)) <= est.integral_left);
  }
  SUBCASE("toy rule structure gives 81 within grid tolerance") {
    auto est = intrinsic_dimension_grid(toy_rule_structure());
    // The breakpoint 1/3 falls inside grid cell [333/1000, 334/1000).
    CHECK(est.dimension.to_double() == doctest::Approx(81.0).epsilon(0.01));
    CHECK(est.dimension_lower <= Dimension::finite(Scalar(81)));
    CHECK(Dimension::finite(Scalar(81)) <= est.dimension_upper);
    auto exact = intrinsic_dimension_breakpoints(toy_rule_structure());
    CHECK(exact.integral == q(1, 9));
    CHECK(est.integral_right <= exact.integral);
    CHECK(exact.integral <= est.integral_left);
  }
}

TEST_CASE("augment_constants examples") {
  auto empty = EmpiricalDataStructure::uniform(3, {});
  auto augmented = augment_constants(empty);
  CHECK(augmented.feature_count() == 1);
  CHECK(observable_diameter(augmented, q(1, 5)) == q(0));

  auto toy = toy_rule_structure();
  CHECK(observable_diameter(augment_constants(toy), q(1, 5)) == q(1, 3));
  CHECK(observable_diameter(toy, q(1, 5)) == q(1, 3));
}

TEST_CASE("relabel_points examples") {
  auto toy = toy_rule_structure();
  const std::vector<std::size_t> identity{0, 1, 2};
  CHECK(relabel_points(toy, identity) == toy);

  const std::vector<std::size_t> swap{1, 0, 2};
  auto swapped = relabel_points(toy, swap);
  CHECK(swapped.features()[2] == row({q(1, 3), 0, 0}));
  for (const Scalar& a : alpha_samples()) {
    CHECK(observable_diameter(swapped, a) == observable_diameter(toy, a));
  }

  const std::vector<std::size_t> cycle{2, 0, 1};
  CHECK(intrinsic_dimension_grid(relabel_points(toy, cycle)).dimension ==
        intrinsic_dimension_grid(toy).dimension);
  CHECK(intrinsic_dimension_breakpoints(relabel_points(toy, cycle)).dimension.str() == "81");

  const std::vector<std::size_t> bad{0, 0, 1};
  CHECK_THROWS_AS(relabel_points(toy, bad), std::invalid_argument);
  const std::vector<std::size_t> short_perm{0, 1};
  CHECK_THROWS_AS(relabel_points(toy, short_perm), std::invalid_argument);
}

TEST_CASE("step function basics") {
  StepFunction zero;
  CHECK(zero(q(1, 2)) == q(0));
  CHECK(zero.clamped_integral() == q(0));

  StepFunction f({{q(0), q(2)}, {q(1, 4), q(1, 2)}, {q(1, 2), q(1, 2)}, {q(3, 4), q(0)}});
  CHECK(f.steps().size() == 3);
  CHECK(f(q(0)) == q(2));
  CHECK(f(q(1, 4)) == q(1, 2));
  CHECK(f(q(3, 4)) == q(0));
  // min(f, 1) integrates to 1/4 * 1 + 1/2 * 1/2.
  CHECK(f.clamped_integral() == q(1, 2));

  CHECK_THROWS_AS(StepFunction({{q(1, 4), q(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({{q(0), q(0)}, {q(1, 2), q(1)}}), std::invalid_argument);
}

TEST_CASE("property: partial diameter matches subset enumeration and is monotone") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<Scalar> values;
    std::vector<std::int64_t> raw(n);
    for (auto& k : raw) k = 1 + static_cast<std::int64_t>(rng() % 6);
    const auto total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
    std::vector<Scalar> weights;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(q(static_cast<std::int64_t>(rng() % 20) - 10, 3));
      weights.push_back(q(raw[i], total));
    }
    const auto dist = EmpiricalDistribution::from_samples(values, weights);
    const auto curve = partial_diameter_curve(dist);

    std::optional<Scalar> previous;
    for (const Scalar& a : alpha_samples()) {
      const Scalar pd = partial_diameter(dist, a);
      CHECK(pd == oracle::partial_diameter(dist, a));
      CHECK(pd == curve(a));
      if (previous) CHECK(pd <= *previous);
      previous = pd;
    }
    CHECK(partial_diameter(dist, q(0)) == dist.atoms().back().value - dist.atoms().front().value);
    CHECK(partial_diameter(dist, q(1)) == q(0));
  }
}

TEST_CASE("property: observable diameter and dimension invariants") {
  std::mt19937_64 rng(99);
  const AlphaGrid grid(200);
  for (int trial = 0; trial < 150; ++trial) {
    const bool inexact = trial % 5 == 4;
    const auto ds = random_structure(rng, inexact);
    const auto est = intrinsic_dimension_grid(ds, grid);
    const auto exact = intrinsic_dimension_breakpoints(ds);

    // Bounds and bracketing.
    CHECK(Dimension::finite(Scalar(1)) <= est.dimension);
    CHECK(Dimension::finite(Scalar(1)) <= exact.dimension);
    CHECK(est.integral_right <= est.integral);
    CHECK(est.integral <= est.integral_left);
    CHECK((est.integral_left - est.integral_right).to_double() <= 1.0 / 200 + 1e-12);
    CHECK(est.integral_right.to_double() <= exact.integral.to_double() + 1e-9);
    CHECK(exact.integral.to_double() <= est.integral_left.to_double() + 1e-9);
    CHECK(est.dimension_lower <= est.dimension);
    CHECK(est.dimension <= est.dimension_upper);

    std::vector<std::size_t> perm(ds.point_count());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto relabeled = relabel_points(ds, perm);
    const auto augmented = augment_constants(ds);

    std::optional<Scalar> previous;
    for (const Scalar& a : alpha_samples()) {
      const Scalar od = observable_diameter(ds, a);
      if (!inexact) CHECK(od == exact.observable_diameter(a));
      if (previous) CHECK(od <= *previous);
      previous = od;
      CHECK(observable_diameter(relabeled, a) == od);
      if (ds.feature_count() > 0) CHECK(observable_diameter(augmented, a) == od);
      if (ds.feature_count() > 0) {
        // Dropping the last feature can only shrink the observable diameter.
        auto fewer = ds.features();
        fewer.pop_back();
        EmpiricalDataStructure sub(ds.weights(), std::move(fewer));
        CHECK(observable_diameter(sub, a) <= od);
      }
    }
    CHECK(intrinsic_dimension_grid(relabeled, grid).dimension == est.dimension);
  }
}

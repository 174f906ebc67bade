#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oodbench/error.hpp"
#include "oodbench/metrics.hpp"
#include "reference_tables.hpp"

using namespace oodbench;

namespace {

ErrorCategory thrown_category(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an oodbench::Error");
  return ErrorCategory::io;
}

SimilarityOutcome pos(double s) { return {s, true}; }
SimilarityOutcome neg(double s) { return {s, false}; }
SimilarityOutcome rejected(bool same) { return {std::nullopt, same}; }

AccuracyGrid uniform_grid(const std::vector<std::string>& kinds, const std::vector<double>& means,
                          double clean) {
  AccuracyGrid grid;
  grid.acc_clean = clean;
  for (std::size_t i = 0; i < kinds.size(); ++i)
    for (int level = 1; level <= 5; ++level) grid.set(kinds[i], level, means[i]);
  return grid;
}

std::vector<SimilarityOutcome> random_outcomes(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> sim(-1.0, 1.0);
  std::bernoulli_distribution label(0.5);
  std::vector<SimilarityOutcome> out;
  for (int i = 0; i < n; ++i) {
    const bool same = label(gen);
    // Quantize so ties between similarities actually occur.
    const double s = std::round((sim(gen) + (same ? 0.3 : -0.3)) * 20.0) / 20.0;
    out.push_back({std::clamp(s, -1.0, 1.0), same});
  }
  return out;
}

}  // namespace

TEST_SUITE("threshold") {
  TEST_CASE("smallest maximizing midpoint") {
    const std::vector<SimilarityOutcome> o{pos(0.9), pos(0.6), neg(0.7), neg(0.2)};
    const ThresholdResult r = best_threshold(o);
    CHECK(r.accuracy == doctest::Approx(0.75));
    CHECK(r.threshold == doctest::Approx(0.4));
    CHECK(accuracy_at(o, 0.65) == doctest::Approx(0.5));
  }

  TEST_CASE("separable and degenerate sets") {
    const std::vector<SimilarityOutcome> separable{pos(0.9), neg(0.1)};
    CHECK(best_threshold(separable).accuracy == 1.0);
    const std::vector<SimilarityOutcome> single{pos(0.5)};
    const ThresholdResult r = best_threshold(single);
    CHECK(r.accuracy == 1.0);
    CHECK(r.threshold <= 0.5);
    const std::vector<SimilarityOutcome> all_same{pos(0.3), pos(0.4), pos(0.8)};
    CHECK(accuracy_at(all_same, 0.3) == 1.0);
  }

  TEST_CASE("rejections are excluded") {
    const std::vector<SimilarityOutcome> o{rejected(true), pos(0.8)};
    CHECK(accuracy_at(o, 0.5) == 1.0);
    CHECK(best_threshold(o).accuracy == 1.0);
    const std::vector<SimilarityOutcome> none{rejected(true), rejected(false)};
    CHECK(thrown_category([&] { best_threshold(none); }) == ErrorCategory::no_threshold);
    CHECK(thrown_category([&] { accuracy_at(none, 0.5); }) == ErrorCategory::undefined_accuracy);
    CHECK(thrown_category([&] { best_threshold(std::vector<SimilarityOutcome>{}); }) ==
          ErrorCategory::no_threshold);
  }

  TEST_CASE("best threshold dominates random thresholds") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> theta(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto o = random_outcomes(gen, 64);
      const double best = best_threshold(o).accuracy;
      CHECK(accuracy_at(o, best_threshold(o).threshold) == best);
      for (int i = 0; i < 1000; ++i) REQUIRE(accuracy_at(o, theta(gen)) <= best);
    }
  }

  TEST_CASE("invariant under strictly increasing transforms") {
    std::mt19937_64 gen(7);
    const auto transform = [](double s) { return std::exp(3.0 * s) - 2.0; };
    for (int trial = 0; trial < 50; ++trial) {
      const auto o = random_outcomes(gen, 40);
      std::vector<SimilarityOutcome> t = o;
      for (auto& x : t) x.similarity = transform(*x.similarity);
      const ThresholdResult a = best_threshold(o);
      const ThresholdResult b = best_threshold(t);
      REQUIRE(a.accuracy == b.accuracy);
      // The chosen threshold splits the outcomes the same way on both scales.
      for (std::size_t i = 0; i < o.size(); ++i)
        REQUIRE((*o[i].similarity >= a.threshold) == (*t[i].similarity >= b.threshold));
    }
  }
}

TEST_SUITE("aggregation") {
  TEST_CASE("published corruption averages") {
    const auto names = corruption_kind_names();
    for (const auto& row : {testing::kAdaFaceCorruptions, testing::kCosFaceIrCorruptions}) {
      CAPTURE(row.model);
      const AccuracyGrid grid = uniform_grid(
          names, std::vector<double>(row.kind_means.begin(), row.kind_means.end()), row.clean);
      CHECK(std::abs(acc_cor(grid) - row.average) <= 0.01);
    }
  }

  TEST_CASE("relative corruption error") {
    CHECK(relative_error(99.83, 95.20) == doctest::Approx(0.046379).epsilon(1e-5));
    CHECK(relative_error(0.9, 0.9) == 0.0);
    CHECK(relative_error(0.9, 0.0) == 1.0);
    CHECK(thrown_category([] { relative_error(0.0, 0.5); }) == ErrorCategory::division_by_zero);

    AccuracyGrid grid = uniform_grid({"fog", "snow"}, {1.0, 0.5}, 1.0);
    grid.set("snow", 3, 0.0);
    const RobustnessReport r = rce(grid);
    CHECK(r.relative_error_cell[1][2] == 1.0);
    CHECK(r.aggregate == doctest::Approx(0.7));
    CHECK(r.relative_error == doctest::Approx(0.3));
  }

  TEST_CASE("two kinds with level means 1.0 and 0.5") {
    const AccuracyGrid grid = uniform_grid({"brightness", "frost"}, {1.0, 0.5}, 1.0);
    CHECK(acc_cor(grid) == doctest::Approx(0.75));
    const AccuracyGrid equal = uniform_grid({"brightness", "frost"}, {0.93, 0.93}, 0.93);
    CHECK(rce(equal).relative_error == 0.0);
  }

  TEST_CASE("grand mean equals mean of kind means") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    AccuracyGrid grid;
    grid.acc_clean = 0.99;
    double total = 0.0;
    for (const auto& kind : corruption_kind_names())
      for (int level = 1; level <= 5; ++level) {
        const double v = u(gen);
        grid.set(kind, level, v);
        total += v;
      }
    const RobustnessReport r = rce(grid);
    double kind_total = 0.0;
    for (double m : r.kind_means) kind_total += m;
    CHECK(std::abs(r.aggregate - total / 100.0) <= 1e-12);
    CHECK(std::abs(r.aggregate - kind_total / 20.0) <= 1e-12);
    CHECK(r.relative_error == doctest::Approx((0.99 - r.aggregate) / 0.99));
  }

  TEST_CASE("rce is antitone in acc_cor") {
    double previous = 2.0;
    for (double v = 0.0; v <= 1.0; v += 0.05) {
      const double e = rce(uniform_grid({"fog"}, {v}, 1.0)).relative_error;
      CHECK(e < previous);
      previous = e;
    }
  }

  TEST_CASE("incomplete grids are rejected") {
    AccuracyGrid grid;
    grid.acc_clean = 1.0;
    grid.set("fog", 1, 0.5);
    CHECK(thrown_category([&] { acc_cor(grid); }) == ErrorCategory::incomplete_grid);
    CHECK(thrown_category([&] { acc_cor(AccuracyGrid{}); }) == ErrorCategory::incomplete_grid);
    CHECK_FALSE(grid.get("fog", 2).has_value());
    CHECK(grid.get("fog", 1) == 0.5);
  }

  TEST_CASE("variation aggregation") {
    const AccuracyGrid grid = uniform_grid({"age-", "makeup"}, {0.9, 0.8}, 1.0);
    const RobustnessReport r = acc_var_rve(grid);
    CHECK(r.aggregate == doctest::Approx(0.85));
    CHECK(r.relative_error == doctest::Approx(0.15));
    const AccuracyGrid same = uniform_grid({"age-", "age+"}, {0.97, 0.97}, 0.97);
    CHECK(acc_var_rve(same).relative_error == 0.0);
  }

  TEST_CASE("category means") {
    const AccuracyGrid grid = uniform_grid({"fog", "snow", "pixelate"}, {0.9, 0.7, 0.6}, 1.0);
    const auto means = category_means(grid, corruption_taxonomy());
    REQUIRE(means.size() == 2);
    CHECK(means[0].name == "lighting_weather");
    CHECK(means[0].accuracy == doctest::Approx(0.8));
    CHECK(means[1].name == "sensor");
    CHECK(means[1].accuracy == doctest::Approx(0.6));

    const AccuracyGrid processing =
        uniform_grid({"gaussian_noise", "impulse_noise", "shot_noise", "speckle_noise", "salt_pepper_noise",
                      "jpeg_compression"},
                     std::vector<double>(6, 0.42), 1.0);
    const auto p = category_means(processing, corruption_taxonomy());
    REQUIRE(p.size() == 1);
    CHECK(p[0].accuracy == doctest::Approx(0.42));

    const AccuracyGrid stray = uniform_grid({"fog", "glass_blur"}, {0.5, 0.5}, 1.0);
    CHECK(thrown_category([&] { category_means(stray, corruption_taxonomy()); }) == ErrorCategory::partition);
  }
}

TEST_SUITE("api") {
  TEST_CASE("counting oracle") {
    std::vector<PairDecision> d(4, PairDecision::rejected);
    d.insert(d.end(), 5, PairDecision::correct);
    d.push_back(PairDecision::incorrect);
    const ApiReport r = api_metrics(d);
    CHECK(r.rr == doctest::Approx(0.4));
    CHECK(r.asa == doctest::Approx(5.0 / 6.0));
    CHECK(r.aa == doctest::Approx(0.5));
  }

  TEST_CASE("edge cases") {
    const ApiReport none = api_metrics_from_counts(7, 0, 6);
    CHECK(none.aa == none.asa);
    const ApiReport all = api_metrics_from_counts(5, 5, 0);
    CHECK(all.asa == 0.0);
    CHECK(all.aa == 0.0);
    CHECK(thrown_category([] { api_metrics(std::vector<PairDecision>{}); }) == ErrorCategory::empty_input);
  }

  TEST_CASE("decide resolves outcomes") {
    const std::vector<SimilarityOutcome> o{pos(0.9), neg(0.9), rejected(true), neg(0.1)};
    const auto d = decide(o, 0.5);
    CHECK(d == std::vector<PairDecision>{PairDecision::correct, PairDecision::incorrect, PairDecision::rejected,
                                         PairDecision::correct});
  }

  TEST_CASE("published rows satisfy aa = (1 - rr) * asa") {
    constexpr std::size_t n = 10000;
    for (const auto& row : testing::kApiRows)
      for (std::size_t vendor = 0; vendor < 3; ++vendor) {
        const auto rejected_count = static_cast<std::size_t>(std::llround(row.rr[vendor] / 100.0 * n));
        const auto correct =
            static_cast<std::size_t>(std::llround(row.asa[vendor] / 100.0 * double(n - rejected_count)));
        const ApiReport r = api_metrics_from_counts(n, rejected_count, correct);
        CAPTURE(row.condition);
        CAPTURE(vendor);
        CHECK(std::abs(r.aa - (1.0 - r.rr) * r.asa) <= 1e-12);
        CHECK(std::abs(r.aa * 100.0 - row.aa[vendor]) <= 0.02);
      }
  }
}

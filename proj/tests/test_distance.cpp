#include <doctest.h>

#include <vector>

#include "tailored/distance.hpp"
#include "tailored/error.hpp"
#include "tailored/matrix.hpp"
#include "tailored/random.hpp"

using namespace tailored;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = uniform_unit(rng);
  return v;
}

constexpr Metric kAllMetrics[] = {Metric::manhattan, Metric::cosine, Metric::correlation};

}  // namespace

TEST_SUITE("distance") {

TEST_CASE("fixed values") {
  const std::vector<double> u{0.0, 1.0, 0.5};
  const std::vector<double> v{1.0, 1.0, 0.0};
  CHECK(distance(Metric::manhattan, u, v) == doctest::Approx(1.5));

  const std::vector<double> up{1.0, 2.0, 3.0};
  const std::vector<double> down{3.0, 2.0, 1.0};
  CHECK(distance(Metric::correlation, up, down) == doctest::Approx(2.0));

  for (const auto metric : kAllMetrics) {
    CHECK(distance(metric, up, up) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("symmetry and zero self-distance") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_vector(rng, 5);
    const auto v = random_vector(rng, 5);
    for (const auto metric : kAllMetrics) {
      CHECK(distance(metric, u, v) == distance(metric, v, u));
      CHECK(distance(metric, u, u) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(distance(metric, u, v) >= -1e-12);
    }
  }
}

TEST_CASE("manhattan triangle inequality") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_vector(rng, 4);
    const auto b = random_vector(rng, 4);
    const auto c = random_vector(rng, 4);
    const double ab = distance(Metric::manhattan, a, b);
    const double bc = distance(Metric::manhattan, b, c);
    const double ac = distance(Metric::manhattan, a, c);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("scaling behaviour") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto u = random_vector(rng, 6);
    auto v = random_vector(rng, 6);
    // keep the vectors away from degenerate zero-variance cases
    u[0] += 1.0;
    v[1] += 1.0;

    std::vector<double> u2(u), v2(v), u_shift(u);
    for (auto& x : u2) x *= 2.0;
    for (auto& x : v2) x *= 2.0;
    for (auto& x : u_shift) x += 0.7;

    CHECK(distance(Metric::manhattan, u2, v2) ==
          doctest::Approx(2.0 * distance(Metric::manhattan, u, v)));
    CHECK(distance(Metric::cosine, u2, v) ==
          doctest::Approx(distance(Metric::cosine, u, v)).epsilon(1e-10));
    CHECK(distance(Metric::correlation, u2, v) ==
          doctest::Approx(distance(Metric::correlation, u, v)).epsilon(1e-10));
    CHECK(distance(Metric::correlation, u_shift, v) ==
          doctest::Approx(distance(Metric::correlation, u, v)).epsilon(1e-10));
  }
}

TEST_CASE("degenerate vectors fall back to the equal/unequal rule") {
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  const std::vector<double> ones{1.0, 1.0, 1.0};
  const std::vector<double> mixed{0.0, 1.0, 0.0};

  CHECK(distance(Metric::cosine, zeros, zeros) == 0.0);
  CHECK(distance(Metric::cosine, zeros, mixed) == 1.0);
  CHECK(distance(Metric::correlation, ones, ones) == 0.0);
  CHECK(distance(Metric::correlation, ones, zeros) == 1.0);
  CHECK(distance(Metric::correlation, ones, mixed) == 1.0);
}

TEST_CASE("errors") {
  const std::vector<double> u{0.0, 1.0};
  const std::vector<double> v{0.0, 1.0, 2.0};
  for (const auto metric : kAllMetrics) {
    CHECK_THROWS_AS(distance(metric, u, v), ValidationError);
  }
  CHECK_THROWS_AS(distance(Metric::manhattan, {}, {}), ValidationError);
  CHECK_THROWS_AS(metric_from_string("euclidean"), ValidationError);
}

TEST_CASE("pairwise matrix matches per-pair recomputation") {
  Rng rng(5);
  std::vector<std::vector<double>> vectors;
  for (int i = 0; i < 4; ++i) vectors.push_back(random_vector(rng, 3));

  for (const auto metric : kAllMetrics) {
    const auto d = pairwise_distances(metric, vectors);
    REQUIRE(d.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(d(i, j) == d(j, i));
        if (i != j) CHECK(d(i, j) == distance(metric, vectors[i], vectors[j]));
      }
    }
  }

  const auto single = pairwise_distances(Metric::manhattan,
                                         std::vector<std::vector<double>>{{0.5, 0.5}});
  CHECK(single.size() == 1);
  CHECK(single(0, 0) == 0.0);

  const auto two = pairwise_distances(
      Metric::manhattan, std::vector<std::vector<double>>{{0.0, 0.0}, {1.0, 1.0}});
  CHECK(two(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("embedding overload agrees with the generic overload") {
  const auto matrix = CorrectnessMatrix::create({"m1", "m2"}, {"a", "b", "c"},
                                                {0.1, 0.9, 0.4, 0.8, 0.2, 0.6});
  const auto embedding = embed_examples(matrix, {"m1", "m2"});
  std::vector<std::vector<double>> vectors;
  for (std::size_t k = 0; k < embedding.size(); ++k) {
    vectors.emplace_back(embedding.vec(k).begin(), embedding.vec(k).end());
  }
  const auto a = pairwise_distances(Metric::manhattan, embedding);
  const auto b = pairwise_distances(Metric::manhattan, vectors);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a(i, j) == b(i, j));
  }
}

}  // TEST_SUITE

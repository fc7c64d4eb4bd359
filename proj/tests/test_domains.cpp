#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "symrig/domains.hpp"
#include "symrig/errors.hpp"

using namespace symrig;
using namespace symrig::testing;

namespace {

const Cx I(0.0, 1.0);

CxVector cx(std::initializer_list<Cx> xs) {
  CxVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Cx x : xs) v(i++) = x;
  return v;
}

// Defining gauges written from the inequalities, for the unit real bidisc times a unit polydisc.
double bidisc_polydisc_gauge(const CxVector& z) {
  double g = std::max(std::norm(z(0).real()) + std::norm(z(1).real()), z(0).imag() * z(0).imag() + z(1).imag() * z(1).imag());
  for (Eigen::Index j = 2; j < z.size(); ++j) g = std::max(g, std::abs(z(j)));
  return g;
}

double polydisc_gauge(const CxVector& z) { return z.cwiseAbs().maxCoeff(); }

CxVector random_point_on_sphere(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CxVector z(n);
  for (int j = 0; j < n; ++j) z(j) = {normal(rng), normal(rng)};
  return z * (radius / z.norm());
}

}  // namespace

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(Domain::real_bidisc(1), CxVector::Zero(2)));
  EXPECT_TRUE(contains(Domain::real_bidisc(1), cx({0.9, 0.9 * I})));
  EXPECT_FALSE(contains(Domain::real_bidisc(1), cx({0.8, 0.7})));
  EXPECT_FALSE(contains(Domain::polydisc({1, 1}), cx({1, 0})));
  EXPECT_TRUE(contains(Domain::polydisc({1, 1}), cx({0.999, 0.999 * I})));
  EXPECT_FALSE(contains(Domain::ball(1, 2), cx({0.8, 0.6})));
  EXPECT_TRUE(contains(Domain::cylinder(1, 2, 1), cx({100.0, 0.5})));
  EXPECT_FALSE(contains(Domain::cylinder(1, 2, 1), cx({0.0, 1.0})));
  EXPECT_THROW(contains(Domain::ball(1, 2), CxVector::Zero(3)), InvalidInput);
}

TEST(Contains, TransformedDelegatesThroughTranspose) {
  std::mt19937_64 rng(31);
  const Domain base = Domain::product({Domain::real_bidisc(1), Domain::disc(1)});
  for (int trial = 0; trial < 20; ++trial) {
    const RealLinearMap t = gram_schmidt_orthogonal(6, rng);
    const Domain g = Domain::transformed(t, base);
    for (int k = 0; k < 50; ++k) {
      const CxVector z = random_vector(3, rng, 1.1);
      EXPECT_EQ(contains(g, z), contains(base, deinterleave(t.transpose() * interleave(z))));
    }
  }
  EXPECT_THROW(Domain::transformed(2.0 * RealLinearMap::Identity(4, 4), Domain::unit_polydisc(2)), InvalidInput);
}

TEST(Contains, AgreesWithDefiningInequalities) {
  std::mt19937_64 rng(32);
  const Domain g = Domain::product({Domain::real_bidisc(1), Domain::polydisc({1, 1})});
  for (int trial = 0; trial < 2000; ++trial) {
    const CxVector z = random_vector(4, rng, 1.2);
    EXPECT_EQ(contains(g, z), bidisc_polydisc_gauge(z) < 1.0);
  }
}

TEST(Inradius, Examples) {
  EXPECT_DOUBLE_EQ(inradius(Domain::ball(0.7, 2)), 0.7);
  EXPECT_DOUBLE_EQ(inradius(Domain::product({Domain::real_bidisc(1), Domain::polydisc({1})})), 1.0);
  EXPECT_DOUBLE_EQ(inradius(Domain::real_bidisc(1)), 1.0);
  EXPECT_DOUBLE_EQ(inradius(Domain::real_bidisc(2)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(inradius(Domain::polydisc({1.5, 0.5})), 0.5);
  EXPECT_THROW(inradius(Domain::cylinder(1, 2)), Unsupported);
}

TEST(Inradius, RealBidiscSphereSampling) {
  // Spheres just inside sqrt(r) are contained; spheres just outside are not.
  std::mt19937_64 rng(33);
  for (double r : {1.0, 0.5, 2.0}) {
    const Domain g = Domain::real_bidisc(r);
    const double rho = std::sqrt(r);
    int inside_misses = 0, outside_hits = 0;
    for (int k = 0; k < 100000; ++k) {
      if (!contains(g, random_point_on_sphere(2, rho * (1 - 1e-3), rng))) ++inside_misses;
      if (contains(g, random_point_on_sphere(2, rho * (1 + 1e-3), rng))) ++outside_hits;
    }
    EXPECT_EQ(inside_misses, 0) << r;
    EXPECT_LT(outside_hits, 100000) << r;
    // The sphere of radius sqrt(r) touches the boundary along the circle in the (x1, x2) plane.
    EXPECT_FALSE(contains(g, cx({rho * (1 + 1e-9), 0.0})));
  }
}

TEST(Inradius, BallInsideDomainProperty) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  const std::vector<Domain> domains = {
      Domain::unit_polydisc(2), Domain::real_bidisc(1), Domain::product({Domain::real_bidisc(1), Domain::disc(1)}),
      Domain::transformed(swap_t0(), Domain::unit_polydisc(2)), Domain::polydisc({0.6, 1.3})};
  for (const auto& g : domains) {
    const double a = inradius(g);
    for (int k = 0; k < 100000 / static_cast<int>(domains.size()); ++k) {
      const double s = a * std::pow(radius(rng), 1.0 / (2 * g.dim())) * (1 - 1e-12);
      EXPECT_TRUE(contains(g, random_point_on_sphere(g.dim(), s, rng))) << g.describe();
    }
  }
}

TEST(Extents, OuterAndAxis) {
  EXPECT_DOUBLE_EQ(outer_radius(Domain::polydisc({1, 1})), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(outer_radius(Domain::real_bidisc(1)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(axis_extent(Domain::polydisc({0.5, 2}), 1), 2.0);
  EXPECT_DOUBLE_EQ(axis_extent(Domain::real_bidisc(1), 0), std::sqrt(2.0));
  EXPECT_TRUE(std::isinf(axis_extent(Domain::cylinder(1, 2, 0), 1)));
  EXPECT_DOUBLE_EQ(axis_extent(Domain::cylinder(1, 2, 0), 0), 1.0);
}

TEST(BoundaryCircles, Bidisc) {
  const auto circles = boundary_circles(Domain::unit_polydisc(2));
  ASSERT_EQ(circles.size(), 2u);
  EXPECT_EQ(circles[0].u, cx({1, 0}));
  EXPECT_EQ(circles[0].v, cx({I, 0}));
  EXPECT_EQ(circles[0].label, 1);
  const AlgebraicCurve c = complexify(circles[0]);
  for (Cx t : {Cx(0.5), Cx(0.3, -2.0), Cx(-4.0, 1.0)}) EXPECT_LE((c.evaluate(t) - cx({t, 0})).norm(), 1e-15);
}

TEST(BoundaryCircles, RealBidiscTimesDisc) {
  const auto circles = boundary_circles(Domain::product({Domain::real_bidisc(1), Domain::disc(1)}));
  ASSERT_EQ(circles.size(), 3u);
  EXPECT_EQ(circles[0].u, cx({1, 0, 0}));
  EXPECT_EQ(circles[0].v, cx({0, 1, 0}));
  EXPECT_EQ(circles[2].u, cx({0, 0, 1}));
  EXPECT_EQ(circles[2].v, cx({0, 0, I}));
}

TEST(BoundaryCircles, SwappedBidisc) {
  const auto circles = boundary_circles(Domain::transformed(swap_t0(), Domain::unit_polydisc(2)));
  ASSERT_EQ(circles.size(), 2u);
  EXPECT_LE((circles[0].u - cx({1, 0})).norm(), 1e-15);
  EXPECT_LE((circles[0].v - cx({0, 1})).norm(), 1e-15);
}

TEST(BoundaryCircles, PointsLieOnBothBoundaries) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const std::vector<std::pair<Domain, double (*)(const CxVector&)>> cases = {
      {Domain::unit_polydisc(3), polydisc_gauge},
      {Domain::real_bidisc(1), bidisc_polydisc_gauge},
      {Domain::product({Domain::real_bidisc(1), Domain::polydisc({1, 1})}), bidisc_polydisc_gauge}};
  for (const auto& [g, gauge] : cases) {
    for (const auto& c : boundary_circles(g)) {
      for (int k = 0; k < 64; ++k) {
        const double theta = angle(rng);
        const CxVector p = c.point(theta);
        EXPECT_NEAR(gauge(p), 1.0, 1e-12);
        EXPECT_NEAR(p.norm(), 1.0, 1e-12);
        EXPECT_NEAR(boundary_level(g, p), 1.0, 1e-12);
        const Cx t = std::polar(1.0, theta);
        EXPECT_LE((complexify(c).evaluate(t) - p).norm(), 1e-12);
        EXPECT_LE(c.distance(p), 1e-12);
      }
    }
  }
  EXPECT_THROW(boundary_circles(Domain::ball(1, 2)), Unsupported);
  EXPECT_THROW(boundary_circles(Domain::polydisc({2, 2})), Unsupported);
}

TEST(Complexify, SwappedCircleSatisfiesQuadric) {
  const AlgebraicCurve c{cx({1, 0}), cx({0, 1})};
  std::mt19937_64 rng(36);
  for (int k = 0; k < 50; ++k) {
    Cx t = random_cx(rng, 3.0);
    if (std::abs(t) < 1e-3) continue;
    const CxVector z = c.evaluate(t);
    EXPECT_NEAR(std::abs(z(0) * z(0) + z(1) * z(1) - 1.0), 0.0, 1e-12);
  }
}

TEST(OriginPassage, Examples) {
  EXPECT_TRUE(passes_through_origin(AlgebraicCurve{cx({1, 0}), cx({I, 0})}));
  EXPECT_FALSE(passes_through_origin(AlgebraicCurve{cx({1, 0}), cx({0, 1})}));
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int k = 0; k < 100; ++k) {
    CxVector u = random_vector(3, rng);
    u /= u.norm();
    EXPECT_TRUE(passes_through_origin(AlgebraicCurve{u, std::polar(1.0, angle(rng)) * u}));
  }
}

namespace {

// Smallest |evaluate(t)| from a 256-point log-polar grid followed by coordinate descent in log t.
double search_min_modulus(const AlgebraicCurve& c) {
  double best = std::numeric_limits<double>::infinity();
  Cx best_t = 1.0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const Cx t = std::polar(std::exp(-3.0 + 6.0 * i / 15.0), 2.0 * kPi * j / 16.0);
      const double v = c.evaluate(t).norm();
      if (v < best) best = v, best_t = t;
    }
  }
  Cx s = std::log(best_t);
  double step = 0.2;
  while (step > 1e-14) {
    bool moved = false;
    for (Cx d : {Cx(step, 0), Cx(-step, 0), Cx(0, step), Cx(0, -step)}) {
      const double v = c.evaluate(std::exp(s + d)).norm();
      if (v < best) best = v, s += d, moved = true;
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

TEST(OriginPassage, SearchOracleAgreesWithSingularValues) {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int k = 0; k < 60; ++k) {
    CxVector u = random_vector(2, rng), v;
    if (k % 2 == 0) {
      v = std::polar(1.0, angle(rng)) * u;
    } else {
      v = random_vector(2, rng);
    }
    const AlgebraicCurve c{u, v};
    EXPECT_EQ(search_min_modulus(c) < 1e-6, passes_through_origin(c)) << k;
  }
  for (const auto& circle : boundary_circles(Domain::product({Domain::real_bidisc(1), Domain::disc(1)}))) {
    const AlgebraicCurve c = complexify(circle);
    EXPECT_EQ(search_min_modulus(c) < 1e-6, passes_through_origin(c));
    EXPECT_EQ(passes_through_origin(c), circle.label == 3);
  }
}

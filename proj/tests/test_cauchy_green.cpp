#include <gtest/gtest.h>

#include "symrig/cauchy_green.hpp"
#include "symrig/errors.hpp"

using namespace symrig;

namespace {

double sup_error(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  double e = 0.0;
  for (size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<Cx> sample(const PolarGrid& g, const std::function<Cx(Cx)>& f) {
  std::vector<Cx> out(g.size());
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) out[g.index(i, j)] = f(g.node(i, j));
  return out;
}

Cx ipow(Cx z, int k) {
  Cx p = 1.0;
  for (int i = 0; i < k; ++i) p *= z;
  return p;
}

// T[zeta^k zetabar^m] = (zeta^k zetabar^{m+1} - [k > m] zeta^{k-m-1}) / (m + 1).
Cx monomial_transform(Cx z, int k, int m) {
  Cx w = ipow(z, k) * ipow(std::conj(z), m + 1);
  if (k > m) w -= ipow(z, k - m - 1);
  return w / double(m + 1);
}

Cx smooth_bump(Cx t) {
  const double s = std::norm(t - Cx(0.1, -0.05)) / 0.16;
  return s < 1.0 ? Cx(1.0, 0.5) * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
}

// Direct Gauss-Legendre quadrature of -(1/pi) int g / (tau - zeta) over the bump's disc, for zeta
// away from the support.
Cx direct_cauchy(Cx zeta) {
  std::vector<double> r, wr, t, wt;
  gauss_legendre(200, 0.0, 0.4, r, wr);
  gauss_legendre(200, 0.0, 2.0 * kPi, t, wt);
  Cx s = 0.0;
  for (size_t i = 0; i < r.size(); ++i) {
    for (size_t j = 0; j < t.size(); ++j) {
      const Cx tau = Cx(0.1, -0.05) + std::polar(r[i], t[j]);
      s += wr[i] * wt[j] * r[i] * smooth_bump(tau) / (tau - zeta);
    }
  }
  return -s / kPi;
}

}  // namespace

TEST(CauchyGreen, ZeroInput) {
  const CauchyGreen cg(16, 32);
  const CauchyGreenResult r = cg.apply(std::vector<Cx>(cg.grid().size(), 0.0));
  for (Cx v : r.values) EXPECT_EQ(v, Cx(0.0));
  for (Cx v : r.boundary) EXPECT_EQ(v, Cx(0.0));
}

TEST(CauchyGreen, ConstantGivesConjugate) {
  const PolarGrid g = PolarGrid::uniform(64, 128);
  const std::vector<Cx> w = cauchy_green(g, std::vector<Cx>(g.size(), 1.0));
  EXPECT_LE(sup_error(w, sample(g, [](Cx z) { return std::conj(z); })), 1e-13);
}

TEST(CauchyGreen, LinearGivesModulusSquared) {
  const PolarGrid g = PolarGrid::uniform(128, 256);
  const std::vector<Cx> w = cauchy_green(g, sample(g, [](Cx z) { return z; }));
  EXPECT_LE(sup_error(w, sample(g, [](Cx z) { return std::norm(z); })), 1e-13);
}

TEST(CauchyGreen, MonomialIdentitiesAndBeurling) {
  const CauchyGreen cg(64, 128);
  const PolarGrid& g = cg.grid();
  for (int k = 0; k <= 3; ++k) {
    for (int m = 0; m <= 3; ++m) {
      const CauchyGreenResult r = cg.apply(sample(g, [=](Cx z) { return ipow(z, k) * ipow(std::conj(z), m); }));
      EXPECT_LE(sup_error(r.values, sample(g, [=](Cx z) { return monomial_transform(z, k, m); })), 1e-11)
          << k << "," << m;
      const auto beurling = sample(g, [=](Cx z) {
        Cx d = double(k) * (k > 0 ? ipow(z, k - 1) : Cx(0.0)) * ipow(std::conj(z), m + 1);
        if (k > m + 1) d -= double(k - m - 1) * ipow(z, k - m - 2);
        return d / double(m + 1);
      });
      EXPECT_LE(sup_error(r.beurling, beurling), 1e-10) << k << "," << m;
      for (int j = 0; j < g.n_theta(); ++j) {
        const Cx e = std::polar(1.0, g.angles[j]);
        EXPECT_NEAR(std::abs(r.boundary[j] - monomial_transform(e, k, m)), 0.0, 1e-11);
      }
      EXPECT_NEAR(std::abs(r.origin - monomial_transform(0.0, k, m)), 0.0, 1e-12);
    }
  }
}

TEST(CauchyGreen, MatchesDirectQuadratureAwayFromSupport) {
  const CauchyGreen cg(128, 256);
  const CauchyGreenResult r = cg.apply(sample(cg.grid(), smooth_bump));
  const PolarGrid& g = cg.grid();
  for (int i : {110, 120, 127}) {
    for (int j : {0, 40, 100, 200}) {
      const Cx z = g.node(i, j);
      EXPECT_NEAR(std::abs(r.values[g.index(i, j)] - direct_cauchy(z)), 0.0, 1e-6) << i << "," << j;
    }
  }
  for (int j : {0, 64, 128}) {
    EXPECT_NEAR(std::abs(r.boundary[j] - direct_cauchy(std::polar(1.0, g.angles[j]))), 0.0, 1e-6);
  }
}

TEST(CauchyGreen, DiscreteResidualConverges) {
  // d/dzetabar of the normalized transform against g, measured with the independent differences.
  double previous = 0.0;
  for (int n : {32, 64, 128}) {
    const PolarGrid g = PolarGrid::uniform(n, 2 * n);
    const std::vector<Cx> gv = sample(g, smooth_bump);
    const std::vector<Cx> w = cauchy_green(g, gv);
    const auto [dxi, deta] = grid_derivatives(g, w);
    double l2 = 0.0;
    for (int i = 0; i < g.n_r(); ++i) {
      for (int j = 0; j < g.n_theta(); ++j) {
        const size_t k = g.index(i, j);
        l2 += g.area_weight(i, j) * std::norm(0.5 * (dxi[k] + Cx(0, 1) * deta[k]) - gv[k]);
      }
    }
    l2 = std::sqrt(l2);
    EXPECT_LE(l2, 1.0 / n);
    if (previous > 0.0) EXPECT_LT(l2, previous / 1.8);
    previous = l2;
  }
  const PolarGrid g = PolarGrid::uniform(32, 64);
  EXPECT_EQ(cauchy_green(g, sample(g, smooth_bump)), cauchy_green(g, sample(g, smooth_bump)));
}

TEST(CauchyGreen, RejectsBadGrids) {
  EXPECT_THROW(CauchyGreen(4, 32), InvalidInput);
  EXPECT_THROW(CauchyGreen(16, 31), InvalidInput);
  const PolarGrid gl = PolarGrid::gauss_legendre(16, 32);
  EXPECT_THROW(cauchy_green(gl, std::vector<Cx>(gl.size(), 1.0)), InvalidInput);
}

TEST(GridDerivatives, SmoothMap) {
  const auto f = [](Cx z) { return std::exp(z) + std::conj(z) * z * z; };
  const auto fxi = [](Cx z) { return std::exp(z) + 2.0 * std::norm(z) + z * z; };
  const auto feta = [](Cx z) { return Cx(0, 1) * std::exp(z) + Cx(0, 1) * (2.0 * std::norm(z) - z * z); };
  double previous = 0.0;
  for (int n : {32, 64}) {
    const PolarGrid g = PolarGrid::uniform(n, 2 * n);
    const auto [dxi, deta] = grid_derivatives(g, sample(g, f));
    const double err = std::max(sup_error(dxi, sample(g, fxi)), sup_error(deta, sample(g, feta)));
    EXPECT_LE(err, 1e-5);
    if (previous > 1e-9) EXPECT_LT(err, previous / 4.0);
    previous = err;
  }
}

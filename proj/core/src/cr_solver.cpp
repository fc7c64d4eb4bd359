#include "symrig/cr_solver.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>

#include <unsupported/Eigen/FFT>

#include "symrig/cauchy_green.hpp"
#include "symrig/errors.hpp"
#include "symrig/parallel.hpp"
#include "symrig/serialize.hpp"

namespace symrig {

namespace {

struct Schwarz {
  std::vector<Cx> values;
  std::vector<Cx> derivative;
  std::vector<Cx> boundary;
  double origin = 0.0;
};

// Holomorphic S on the disc with Re S = rho on the circle and Im S(0) = 0.
Schwarz schwarz(const PolarGrid& grid, const std::vector<double>& rho) {
  const int nr = grid.n_r();
  const int nt = grid.n_theta();
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Cx> in(rho.begin(), rho.end()), modes;
  fft.fwd(modes, in);
  for (Cx& c : modes) c /= static_cast<double>(nt);

  Schwarz s;
  s.origin = modes[0].real();
  s.values.resize(grid.size());
  s.derivative.resize(grid.size());
  std::vector<Cx> v(nt), d(nt), out;
  auto fill = [&](double r, Cx* values, Cx* derivative) {
    std::fill(v.begin(), v.end(), Cx(0.0));
    std::fill(d.begin(), d.end(), Cx(0.0));
    v[0] = s.origin;
    double rp = 1.0;  // r^{m-1}
    for (int m = 1; m < nt / 2; ++m) {
      d[m - 1] = 2.0 * m * rp * modes[m];
      rp *= r;
      v[m] = 2.0 * rp * modes[m];
    }
    fft.inv(out, v);
    std::copy(out.begin(), out.end(), values);
    if (derivative) {
      fft.inv(out, d);
      std::copy(out.begin(), out.end(), derivative);
    }
  };
  for (int i = 0; i < nr; ++i) fill(grid.radii[i], s.values.data() + grid.index(i, 0), s.derivative.data() + grid.index(i, 0));
  s.boundary.resize(nt);
  fill(1.0, s.boundary.data(), nullptr);
  return s;
}

void check_regime(const MatrixField& f, const CxVector& x, int k, const SolverConfig& cfg) {
  const int n = f.dim();
  if (x.size() != n) throw InvalidInput("target point dimension does not match the field");
  if (k < 0 || k >= n) throw InvalidInput("axis index out of range");
  if (cfg.n_r < 16 || cfg.n_theta < 16 || cfg.n_theta % 2 != 0) {
    throw InvalidInput("solver grid needs n_r, n_theta >= 16 with n_theta even");
  }
  if (!(cfg.fixed_point_tol > 0.0) || !(cfg.increment_tol > 0.0) || cfg.max_iter < 1) {
    throw InvalidInput("solver tolerances must be positive and max_iter >= 1");
  }
  if (!(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0)) throw InvalidInput("relaxation must lie in (0, 1]");
  if (f.norm_bound() > cfg.regime_bound) {
    throw InvalidInput("field norm bound " + std::to_string(f.norm_bound()) + " exceeds the supported regime " +
                       std::to_string(cfg.regime_bound));
  }
  if (!(std::abs(x[k]) < 1.0)) throw InvalidInput("target point lies outside the cylinder");
  if (f.norm_bound() > 0.0) {
    if (!f.support()) throw InvalidInput("field must have a bounded support inside the cylinder");
    if (!(axis_extent(*f.support(), k) < 1.0)) {
      throw InvalidInput("field support is not compactly contained in the cylinder along the axis");
    }
  }
}

}  // namespace

DiscSolution solve_disc(const MatrixField& f, const CxVector& x, int k, const SolverConfig& cfg) {
  check_regime(f, x, k, cfg);
  const int n = f.dim();
  const CauchyGreen plan(cfg.n_r, cfg.n_theta);
  const PolarGrid& grid = plan.grid();
  const std::size_t size = grid.size();
  const int nt = grid.n_theta();

  std::vector<std::vector<Cx>> g(n, std::vector<Cx>(size, 0.0));
  std::vector<std::vector<Cx>> z(n, std::vector<Cx>(size)), dz(n, std::vector<Cx>(size));
  std::vector<std::vector<Cx>> zb(n, std::vector<Cx>(nt));
  std::vector<Cx> w_boundary(nt, 0.0);
  Cx c = x[k];

  DiscSolution sol;
  sol.axis = k;
  sol.target = x;
  bool settled = false;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    std::vector<CauchyGreenResult> t(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) { t[j] = plan.apply(g[j]); });

    double increment = 0.0;
    auto store = [&](int j, std::size_t idx, Cx value, Cx deriv) {
      if (it > 1) increment = std::max(increment, std::abs(value - z[j][idx]));
      z[j][idx] = value;
      dz[j][idx] = deriv;
    };

    // Axis component: f_k = phi_c (1 + S[rho]) + T g_k keeps |f_k| = 1 on the circle.
    {
      const CauchyGreenResult& tk = t[k];
      std::vector<double> rho(nt);
      for (int j = 0; j < nt; ++j) {
        const Cx e = std::polar(1.0, grid.angles[j]);
        const Cx phi = (e + c) / (1.0 + std::conj(c) * e);
        rho[j] = -(std::conj(phi) * tk.boundary[j]).real() - 0.5 * std::norm(w_boundary[j]);
      }
      const Schwarz s = schwarz(grid, rho);
      c = (x[k] - tk.origin) / (1.0 + s.origin);
      if (!(std::abs(c) < 1.0)) {
        throw Divergence("Moebius parameter left the unit disc", increment, it);
      }
      const Cx cc = std::conj(c);
      for (int i = 0; i < grid.n_r(); ++i) {
        for (int j = 0; j < nt; ++j) {
          const std::size_t idx = grid.index(i, j);
          const Cx zeta = grid.node(i, j);
          const Cx den = 1.0 + cc * zeta;
          const Cx phi = (zeta + c) / den;
          const Cx dphi = (1.0 - std::norm(c)) / (den * den);
          store(k, idx, phi * (1.0 + s.values[idx]) + tk.values[idx],
                dphi * (1.0 + s.values[idx]) + phi * s.derivative[idx] + tk.beurling[idx]);
        }
      }
      for (int j = 0; j < nt; ++j) {
        const Cx e = std::polar(1.0, grid.angles[j]);
        const Cx phi = (e + c) / (1.0 + cc * e);
        w_boundary[j] = phi * s.boundary[j] + tk.boundary[j];
        zb[k][j] = phi + w_boundary[j];
      }
    }
    // Other components: f_j = c_j + T g_j - S[Re T g_j] has constant real part on the circle.
    for (int m = 0; m < n; ++m) {
      if (m == k) continue;
      const CauchyGreenResult& tm = t[m];
      std::vector<double> rho(nt);
      for (int j = 0; j < nt; ++j) rho[j] = tm.boundary[j].real();
      const Schwarz s = schwarz(grid, rho);
      const Cx cm = x[m] - tm.origin + s.origin;
      for (std::size_t idx = 0; idx < size; ++idx) {
        store(m, idx, cm + tm.values[idx] - s.values[idx], tm.beurling[idx] - s.derivative[idx]);
      }
      for (int j = 0; j < nt; ++j) zb[m][j] = cm + tm.boundary[j] - s.boundary[j];
    }

    if (it > 1) {
      sol.increments.push_back(increment);
      if (!std::isfinite(increment)) throw Divergence("non-finite iterate", increment, it);
    }
    sol.iterations = it;
    if (it > 1 && increment <= cfg.increment_tol) {
      settled = true;
      break;
    }

    // g <- A(Z) conj(Z_zeta), relaxed.
    parallel_for(static_cast<std::size_t>(grid.n_r()), [&](std::size_t i) {
      CxVector zv(n), dv(n);
      for (int j = 0; j < nt; ++j) {
        const std::size_t idx = grid.index(static_cast<int>(i), j);
        for (int m = 0; m < n; ++m) {
          zv[m] = z[m][idx];
          dv[m] = std::conj(dz[m][idx]);
        }
        const CxVector gn = f(zv) * dv;
        for (int m = 0; m < n; ++m) g[m][idx] = (1.0 - cfg.relaxation) * g[m][idx] + cfg.relaxation * gn[m];
      }
    });
  }
  if (!settled) {
    throw Divergence("fixed-point iteration did not settle within max_iter",
                     sol.increments.empty() ? 0.0 : sol.increments.back(), sol.iterations);
  }

  GridSamples samples;
  samples.grid = grid;
  samples.values.assign(size, CxVector(n));
  samples.d_xi.assign(size, CxVector(n));
  samples.d_eta.assign(size, CxVector(n));
  for (int m = 0; m < n; ++m) {
    const auto d = grid_derivatives(grid, z[m]);
    for (std::size_t idx = 0; idx < size; ++idx) {
      samples.values[idx][m] = z[m][idx];
      samples.d_xi[idx][m] = d.first[idx];
      samples.d_eta[idx][m] = d.second[idx];
    }
  }
  sol.residual = holomorphy_residual(samples, f);
  sol.areas = symplectic_area(samples);
  sol.boundary.assign(nt, CxVector(n));
  for (int j = 0; j < nt; ++j) {
    for (int m = 0; m < n; ++m) sol.boundary[j][m] = zb[m][j];
    sol.boundary_deviation = std::max(sol.boundary_deviation, std::abs(std::abs(zb[k][j]) - 1.0));
  }
  // Z(0) from the ring means of the three innermost rings, extrapolated as a quadratic in r^2.
  for (int m = 0; m < n; ++m) {
    Cx mean[3];
    double s2[3];
    for (int i = 0; i < 3; ++i) {
      mean[i] = 0.0;
      for (int j = 0; j < nt; ++j) mean[i] += z[m][grid.index(i, j)];
      mean[i] /= static_cast<double>(nt);
      s2[i] = grid.radii[i] * grid.radii[i];
    }
    Cx z0 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double l = 1.0;
      for (int q = 0; q < 3; ++q) {
        if (q != i) l *= (0.0 - s2[q]) / (s2[i] - s2[q]);
      }
      z0 += l * mean[i];
    }
    sol.through_point_error = std::max(sol.through_point_error, std::abs(z0 - x[m]));
  }
  sol.z = ParamDisc::from_samples(std::move(samples));
  sol.converged = sol.residual <= cfg.fixed_point_tol;
  return sol;
}

std::vector<SweepLevel> disc_family_sweep(const MatrixField& f, const std::vector<double>& inner_radii, int k,
                                          const SolverConfig& cfg, double width, const CxVector* x) {
  if (inner_radii.empty()) throw InvalidInput("sweep needs at least one truncation radius");
  for (std::size_t l = 1; l < inner_radii.size(); ++l) {
    if (!(inner_radii[l] > inner_radii[l - 1])) throw InvalidInput("truncation radii must increase");
  }
  const int n = f.dim();
  const CxVector target = x ? *x : CxVector(CxVector::Zero(n));
  std::vector<MatrixField> fields;
  for (double r : inner_radii) fields.push_back(truncate_field(f, Domain::polydisc(std::vector<double>(n, r)), width));
  std::vector<SweepLevel> out(inner_radii.size());
  parallel_for(inner_radii.size(), [&](std::size_t l) {
    SweepLevel& level = out[l];
    level.inner_radius = inner_radii[l];
    level.solution = solve_disc(fields[l], target, k, cfg);
    const GridSamples& s = *level.solution.z.samples();
    const Domain unit = Domain::unit_polydisc(n);
    for (int i = 0; i < s.grid.n_r(); ++i) {
      for (int j = 0; j < s.grid.n_theta(); ++j) {
        const std::size_t idx = s.grid.index(i, j);
        if (!contains(unit, s.values[idx])) {
          level.area_outside += s.grid.area_weight(i, j) * symplectic_density(s.d_xi[idx], s.d_eta[idx]);
        }
      }
    }
  });
  return out;
}

nlohmann::json solution_summary(const DiscSolution& s) {
  nlohmann::json j = {{"axis", s.axis + 1},
                      {"target", to_json(s.target)},
                      {"converged", s.converged},
                      {"residual", s.residual},
                      {"areas", to_json(s.areas)},
                      {"boundary_deviation", s.boundary_deviation},
                      {"through_point_error", s.through_point_error},
                      {"iterations", s.iterations},
                      {"increments", s.increments}};
  if (const auto& samples = s.z.samples()) j["grid"] = {samples->grid.n_r(), samples->grid.n_theta()};
  return j;
}

void write_solution_grid(const DiscSolution& s, const std::filesystem::path& path) {
  const auto& samples = s.z.samples();
  if (!samples) throw InvalidInput("solution carries no grid samples");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  auto put = [&](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes, 8);
  };
  const int n = s.z.dim();
  for (const CxVector& v : samples->values) {
    for (int m = 0; m < n; ++m) {
      put(v[m].real());
      put(v[m].imag());
    }
  }
  const nlohmann::json sidecar = {{"dtype", "float64-le"},
                                  {"order", "row-major"},
                                  {"shape", {samples->grid.n_r(), samples->grid.n_theta(), n, 2}},
                                  {"radii", "cell-centred (i + 1/2) / n_r"},
                                  {"angles", "2 pi j / n_theta"}};
  std::ofstream side(path.string() + ".json");
  if (!side) throw InvalidInput("cannot write sidecar for " + path.string());
  side << sidecar.dump(2) << '\n';
}

}  // namespace symrig

#include "symrig/cauchy_green.hpp"

#include <array>
#include <cmath>

#include <unsupported/Eigen/FFT>

#include "symrig/errors.hpp"

namespace symrig {

namespace {

constexpr int kSegmentOrder = 8;

// Maps a signed Fourier mode to its FFT slot.
int slot(int mode, int n) { return ((mode % n) + n) % n; }

class RingFft {
 public:
  explicit RingFft(int n) : n_(n), in_(n), out_(n) { fft_.SetFlag(Eigen::FFT<double>::Unscaled); }

  // Fourier coefficients c_m with f(theta_j) = sum_m c_m e^{i m theta_j}.
  void forward(const Cx* values, std::vector<Cx>& modes) {
    in_.assign(values, values + n_);
    fft_.fwd(modes, in_);
    for (Cx& c : modes) c /= static_cast<double>(n_);
  }
  void inverse(const std::vector<Cx>& modes, Cx* values) {
    fft_.inv(out_, modes);
    std::copy(out_.begin(), out_.end(), values);
  }

 private:
  int n_;
  Eigen::FFT<double> fft_;
  std::vector<Cx> in_;
  std::vector<Cx> out_;
};

bool is_uniform(const PolarGrid& grid) {
  const PolarGrid u = PolarGrid::uniform(grid.n_r(), grid.n_theta());
  for (int i = 0; i < grid.n_r(); ++i) {
    if (std::abs(grid.radii[i] - u.radii[i]) > 1e-14) return false;
  }
  for (int j = 0; j < grid.n_theta(); ++j) {
    if (std::abs(grid.angles[j] - u.angles[j]) > 1e-12) return false;
  }
  return true;
}

constexpr int kStencil = 9;
using Stencil = std::array<int, kStencil>;

std::array<double, kStencil> first_derivative_weights(const Stencil& offsets) {
  Eigen::Matrix<double, kStencil, kStencil> v;
  Eigen::Matrix<double, kStencil, 1> rhs = Eigen::Matrix<double, kStencil, 1>::Zero();
  for (int p = 0; p < kStencil; ++p) {
    for (int k = 0; k < kStencil; ++k) v(p, k) = std::pow(static_cast<double>(offsets[k]), p);
  }
  rhs(1) = 1.0;
  const Eigen::Matrix<double, kStencil, 1> w = v.fullPivLu().solve(rhs);
  std::array<double, kStencil> out;
  for (int k = 0; k < kStencil; ++k) out[k] = w(k);
  return out;
}

}  // namespace

CauchyGreen::CauchyGreen(int n_r, int n_theta) : n_r_(n_r), n_theta_(n_theta) {
  if (n_r < 8 || n_theta < 8 || n_theta % 2 != 0) {
    throw InvalidInput("Cauchy-Green grid needs n_r >= 8 and an even n_theta >= 8");
  }
  grid_ = PolarGrid::uniform(n_r, n_theta);
  const double h = 1.0 / n_r;
  segments_.resize(n_r + 1);
  std::vector<double> nodes, weights;
  for (int s = 0; s <= n_r; ++s) {
    const double a = s == 0 ? 0.0 : grid_.radii[s - 1];
    const double b = s == n_r ? 1.0 : grid_.radii[s];
    gauss_legendre(kSegmentOrder, a, b, nodes, weights);
    for (int q = 0; q < kSegmentOrder; ++q) {
      Node node{};
      node.rho = nodes[q];
      node.weight = weights[q];
      constexpr int kp = Node::kPoints;
      int k0 = static_cast<int>(std::floor(node.rho / h - 0.5)) - (kp / 2 - 1);
      k0 = std::min(k0, n_r - kp);
      double t[kp];
      for (int k = 0; k < kp; ++k) {
        const int idx = k0 + k;
        t[k] = (idx + 0.5) * h;
        node.reflected[k] = idx < 0;
        node.stencil[k] = idx < 0 ? -1 - idx : idx;
      }
      for (int k = 0; k < kp; ++k) {
        double l = 1.0;
        for (int m = 0; m < kp; ++m) {
          if (m != k) l *= (node.rho - t[m]) / (t[k] - t[m]);
        }
        node.lagrange[k] = l;
      }
      segments_[s].push_back(node);
    }
  }
}

CauchyGreenResult CauchyGreen::apply(const std::vector<Cx>& g) const {
  const int nr = n_r_;
  const int nt = n_theta_;
  if (g.size() != grid_.size()) throw InvalidInput("Cauchy-Green input does not match the grid");
  RingFft fft(nt);
  std::vector<std::vector<Cx>> modes(nr, std::vector<Cx>(nt));
  for (int i = 0; i < nr; ++i) fft.forward(g.data() + grid_.index(i, 0), modes[i]);

  std::vector<std::vector<Cx>> t_modes(nr, std::vector<Cx>(nt, 0.0));
  std::vector<std::vector<Cx>> p_modes(nr, std::vector<Cx>(nt, 0.0));
  std::vector<Cx> b_modes(nt, 0.0);
  CauchyGreenResult res;
  const std::vector<double>& r = grid_.radii;
  std::vector<Cx> profile(nr), c(nr);

  for (int m = -nt / 2 + 2; m <= nt / 2 - 1; ++m) {
    const int n = m - 1;
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < nr; ++i) profile[i] = modes[i][slot(m, nt)];
    auto interp = [&](const Node& node) {
      Cx v = 0.0;
      for (int k = 0; k < Node::kPoints; ++k) v += node.lagrange[k] * (node.reflected[k] ? parity : 1.0) * profile[node.stencil[k]];
      return v;
    };
    if (n >= 0) {
      Cx acc = 0.0;
      for (int i = nr - 1; i >= 0; --i) {
        Cx seg = 0.0;
        for (const Node& node : segments_[i + 1]) seg += node.weight * std::pow(r[i] / node.rho, n) * interp(node);
        const double ratio = i + 1 < nr ? std::pow(r[i] / r[i + 1], n) : 0.0;
        acc = seg + ratio * acc;
        c[i] = -2.0 * acc;
      }
      if (n == 0) {
        Cx inner = 0.0;
        for (const Node& node : segments_[0]) inner += node.weight * interp(node);
        res.origin = c[0] - 2.0 * inner;
      }
    } else {
      const int p = -n;
      Cx acc = 0.0;
      for (int i = 0; i < nr; ++i) {
        Cx seg = 0.0;
        for (const Node& node : segments_[i]) seg += node.weight * std::pow(node.rho / r[i], p) * interp(node);
        const double ratio = i > 0 ? std::pow(r[i - 1] / r[i], p) : 0.0;
        acc = seg + ratio * acc;
        c[i] = 2.0 * acc;
      }
      Cx seg = 0.0;
      for (const Node& node : segments_[nr]) seg += node.weight * std::pow(node.rho, p) * interp(node);
      b_modes[slot(n, nt)] = 2.0 * (seg + std::pow(r[nr - 1], p) * acc);
    }
    for (int i = 0; i < nr; ++i) {
      t_modes[i][slot(n, nt)] = c[i];
      p_modes[i][slot(n - 1, nt)] = profile[i] + static_cast<double>(n) * c[i] / r[i];
    }
  }

  res.values.resize(grid_.size());
  res.beurling.resize(grid_.size());
  res.boundary.resize(nt);
  for (int i = 0; i < nr; ++i) {
    fft.inverse(t_modes[i], res.values.data() + grid_.index(i, 0));
    fft.inverse(p_modes[i], res.beurling.data() + grid_.index(i, 0));
  }
  fft.inverse(b_modes, res.boundary.data());
  return res;
}

std::vector<Cx> cauchy_green(const PolarGrid& grid, const std::vector<Cx>& g) {
  if (!is_uniform(grid)) throw InvalidInput("cauchy_green needs a uniform polar grid");
  for (const Cx& v : g) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFinite("non-finite Cauchy-Green input");
  }
  const CauchyGreen plan(grid.n_r(), grid.n_theta());
  CauchyGreenResult res = plan.apply(g);
  for (Cx& v : res.values) v -= res.origin;
  return res.values;
}

std::pair<std::vector<Cx>, std::vector<Cx>> grid_derivatives(const PolarGrid& grid, const std::vector<Cx>& f) {
  if (!is_uniform(grid) || grid.n_r() < 9 || grid.n_theta() % 2 != 0) {
    throw InvalidInput("grid derivatives need a uniform polar grid with n_r >= 9 and even n_theta");
  }
  if (f.size() != grid.size()) throw InvalidInput("sample count does not match the grid");
  const int nr = grid.n_r();
  const int nt = grid.n_theta();
  const double h = 1.0 / nr;

  std::vector<Cx> f_theta(grid.size());
  RingFft fft(nt);
  std::vector<Cx> modes(nt);
  for (int i = 0; i < nr; ++i) {
    fft.forward(f.data() + grid.index(i, 0), modes);
    for (int s = 0; s < nt; ++s) {
      const int mode = s <= nt / 2 ? s : s - nt;
      modes[s] *= (mode == nt / 2) ? Cx(0.0) : Cx(0.0, static_cast<double>(mode));
    }
    fft.inverse(modes, f_theta.data() + grid.index(i, 0));
  }

  // Centred where possible, shifted inward near r = 1.
  std::vector<Stencil> stencils(nr);
  std::vector<std::array<double, kStencil>> weights(nr);
  for (int i = 0; i < nr; ++i) {
    const int shift = std::max(0, i + kStencil / 2 - (nr - 1));
    for (int k = 0; k < kStencil; ++k) stencils[i][k] = k - kStencil / 2 - shift;
    weights[i] = first_derivative_weights(stencils[i]);
  }

  auto value = [&](int i, int j) {
    if (i < 0) return f[grid.index(-1 - i, (j + nt / 2) % nt)];
    return f[grid.index(i, j)];
  };
  std::vector<Cx> dxi(grid.size()), deta(grid.size());
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      Cx fr = 0.0;
      for (int k = 0; k < kStencil; ++k) fr += weights[i][k] * value(i + stencils[i][k], j);
      fr /= h;
      const std::size_t idx = grid.index(i, j);
      const double ct = std::cos(grid.angles[j]);
      const double st = std::sin(grid.angles[j]);
      const Cx ft = f_theta[idx] / grid.radii[i];
      dxi[idx] = ct * fr - st * ft;
      deta[idx] = st * fr + ct * ft;
    }
  }
  return {std::move(dxi), std::move(deta)};
}

}  // namespace symrig

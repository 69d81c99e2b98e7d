#include "symts/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "symts/errors.hpp"

namespace symts {
namespace {

constexpr int kMaxCorners = 1 << kMaxFemDim;

/// Breakpoint j/N of a uniform subdivision, compared exactly.
struct Fraction {
  Index num;
  Index den;
};

bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
bool same(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }

/// Position of a union node inside one component along one direction.
struct NodeLocation {
  Index cell;
  double local;
};

struct Direction {
  std::vector<double> t;  // union breakpoints as fractions of the box length
  // per component: location of every union node
  std::vector<std::vector<NodeLocation>> location;
};

}  // namespace

ErrorReport error_norms(const CombinedFunction& f, const ExactSolution& exact, const QuadratureRule& rule) {
  if (f.components.empty()) throw InvalidDomainError("error_norms: empty combined function");
  if (f.weights.size() != f.components.size()) throw InvalidDomainError("error_norms: weights and components differ in count");
  const GridSpec& ref = f.components.front().spec();
  const int d = ref.dim();
  if (d > kMaxFemDim) throw InvalidDomainError("error_norms: dimension above " + std::to_string(kMaxFemDim));
  for (const auto& c : f.components) {
    if (c.spec().lo() != ref.lo() || c.spec().hi() != ref.hi()) {
      throw InvalidDomainError("error_norms: components live on different boxes");
    }
  }
  const auto n_comp = f.components.size();

  std::array<Direction, kMaxFemDim> dirs;
  for (int k = 0; k < d; ++k) {
    std::vector<Fraction> points;
    for (const auto& c : f.components) {
      const Index n = c.spec().subdivisions(k);
      for (Index j = 0; j <= n; ++j) points.push_back({j, n});
    }
    std::sort(points.begin(), points.end(), less);
    points.erase(std::unique(points.begin(), points.end(), same), points.end());
    Direction& dir = dirs[static_cast<std::size_t>(k)];
    dir.t.reserve(points.size());
    for (const auto& p : points) dir.t.push_back(static_cast<double>(p.num) / static_cast<double>(p.den));
    dir.location.resize(n_comp);
    for (std::size_t c = 0; c < n_comp; ++c) {
      const Index n = f.components[c].spec().subdivisions(k);
      auto& loc = dir.location[c];
      loc.reserve(points.size());
      for (const auto& p : points) {
        // floor(p * n) exactly in integers; the last node stays in the last cell.
        Index cell = std::min((p.num * n) / p.den, n - 1);
        const double local = static_cast<double>(p.num * n - cell * p.den) / static_cast<double>(p.den);
        loc.push_back({cell, local});
      }
    }
  }

  // Value of the combined function at union node `node` (multi-index).
  auto node_value = [&](const std::array<Index, kMaxFemDim>& node) {
    double sum = 0.0;
    for (std::size_t c = 0; c < n_comp; ++c) {
      const GridSpec& s = f.components[c].spec();
      const auto& vals = f.components[c].values();
      double comp = 0.0;
      for (int a = 0; a < (1 << d); ++a) {
        double w = 1.0;
        Index pos = 0;
        Index stride = 1;
        bool numbered = true;
        for (int k = 0; k < d; ++k) {
          const NodeLocation& l = dirs[static_cast<std::size_t>(k)].location[c][static_cast<std::size_t>(node[static_cast<std::size_t>(k)])];
          const int bit = (a >> k) & 1;
          w *= bit ? l.local : 1.0 - l.local;
          const Index i = l.cell + bit - s.node_offset();
          if (w == 0.0 || i < 0 || i >= s.count(k)) {
            numbered = false;
            break;
          }
          pos += i * stride;
          stride *= s.count(k);
        }
        if (numbered) comp += w * vals[pos];
      }
      sum += f.weights[c] * comp;
    }
    return sum;
  };

  const int q = rule.order;
  int qpoints = 1;
  for (int k = 0; k < d; ++k) qpoints *= q;
  std::array<Index, kMaxFemDim> cells_per_dir{};
  for (int k = 0; k < d; ++k) cells_per_dir[static_cast<std::size_t>(k)] = static_cast<Index>(dirs[static_cast<std::size_t>(k)].t.size()) - 1;

  const int outer = d - 1;
  const Index layers = cells_per_dir[static_cast<std::size_t>(outer)];
  Index inner_cells = 1;
  for (int k = 0; k < outer; ++k) inner_cells *= cells_per_dir[static_cast<std::size_t>(k)];
  std::vector<double> l2_part(static_cast<std::size_t>(layers), 0.0), semi_part(static_cast<std::size_t>(layers), 0.0);
  std::string failure;

#pragma omp parallel for schedule(static)
  for (Index layer = 0; layer < layers; ++layer) {
    double l2 = 0.0, semi = 0.0;
    std::array<Index, kMaxFemDim> cell{};
    cell[static_cast<std::size_t>(outer)] = layer;
    std::array<double, kMaxCorners> corner{};
    std::array<double, kMaxFemDim> width{};
    Point x(d);
    for (Index ic = 0; ic < inner_cells; ++ic) {
      Index rest = ic;
      for (int k = 0; k < outer; ++k) {
        cell[static_cast<std::size_t>(k)] = rest % cells_per_dir[static_cast<std::size_t>(k)];
        rest /= cells_per_dir[static_cast<std::size_t>(k)];
      }
      for (int a = 0; a < (1 << d); ++a) {
        std::array<Index, kMaxFemDim> node{};
        for (int k = 0; k < d; ++k) node[static_cast<std::size_t>(k)] = cell[static_cast<std::size_t>(k)] + ((a >> k) & 1);
        corner[static_cast<std::size_t>(a)] = node_value(node);
      }
      double cell_volume = 1.0;
      for (int k = 0; k < d; ++k) {
        const auto& t = dirs[static_cast<std::size_t>(k)].t;
        const auto j = static_cast<std::size_t>(cell[static_cast<std::size_t>(k)]);
        width[static_cast<std::size_t>(k)] = (t[j + 1] - t[j]) * (ref.hi(k) - ref.lo(k));
        cell_volume *= width[static_cast<std::size_t>(k)];
      }
      for (int p = 0; p < qpoints; ++p) {
        std::array<double, kMaxFemDim> xi{};
        double w = cell_volume;
        int r = p;
        for (int k = 0; k < d; ++k) {
          const int j = r % q;
          r /= q;
          xi[static_cast<std::size_t>(k)] = rule.points[static_cast<std::size_t>(j)];
          w *= rule.weights[static_cast<std::size_t>(j)];
          const auto& t = dirs[static_cast<std::size_t>(k)].t;
          const auto cj = static_cast<std::size_t>(cell[static_cast<std::size_t>(k)]);
          x[k] = ref.lo(k) + (t[cj] + (t[cj + 1] - t[cj]) * xi[static_cast<std::size_t>(k)]) * (ref.hi(k) - ref.lo(k));
        }
        double uh = 0.0;
        std::array<double, kMaxFemDim> grad{};
        for (int a = 0; a < (1 << d); ++a) {
          double v = corner[static_cast<std::size_t>(a)];
          double phi = 1.0;
          std::array<double, kMaxFemDim> dphi{};
          dphi.fill(1.0);
          for (int k = 0; k < d; ++k) {
            const int bit = (a >> k) & 1;
            const double t = xi[static_cast<std::size_t>(k)];
            const double hat = bit ? t : 1.0 - t;
            const double dhat = (bit ? 1.0 : -1.0) / width[static_cast<std::size_t>(k)];
            phi *= hat;
            for (int l = 0; l < d; ++l) dphi[static_cast<std::size_t>(l)] *= (l == k) ? dhat : hat;
          }
          uh += v * phi;
          for (int k = 0; k < d; ++k) grad[static_cast<std::size_t>(k)] += v * dphi[static_cast<std::size_t>(k)];
        }
        const double e = uh - exact.value(x);
        const Point g = exact.gradient(x);
        double ge = 0.0;
        for (int k = 0; k < d; ++k) {
          const double diff = grad[static_cast<std::size_t>(k)] - g[k];
          ge += diff * diff;
        }
        l2 += w * e * e;
        semi += w * ge;
      }
    }
    l2_part[static_cast<std::size_t>(layer)] = l2;
    semi_part[static_cast<std::size_t>(layer)] = semi;
  }

  ErrorReport rep;
  double l2 = 0.0, semi = 0.0;
  for (Index j = 0; j < layers; ++j) {
    l2 += l2_part[static_cast<std::size_t>(j)];
    semi += semi_part[static_cast<std::size_t>(j)];
  }
  rep.l2 = std::sqrt(l2);
  rep.h1_semi = std::sqrt(semi);
  rep.h1 = std::sqrt(l2 + semi);
  rep.quadrature_cells = layers * inner_cells;
  return rep;
}

ErrorReport error_norms(const NodalVector<double>& u, const ExactSolution& exact, const QuadratureRule& rule) {
  CombinedFunction f;
  f.components.push_back(u);
  f.weights.push_back(1.0);
  return error_norms(f, exact, rule);
}

std::optional<double> eoc(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_fine > 0.0) || !(h_coarse > h_fine)) return std::nullopt;
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

double log_log_slope(std::span<const double> mesh_sizes, std::span<const double> errors) {
  if (mesh_sizes.size() != errors.size() || mesh_sizes.size() < 2) {
    throw std::invalid_argument("log_log_slope: need at least two (size, error) pairs of equal count");
  }
  const auto n = static_cast<double>(mesh_sizes.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < mesh_sizes.size(); ++i) {
    if (!(mesh_sizes[i] > 0.0) || !(errors[i] > 0.0)) throw std::invalid_argument("log_log_slope: non-positive input");
    const double lx = std::log(mesh_sizes[i]), ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceTable build_table(std::vector<ConvergenceRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.coarse_step > b.coarse_step; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].eoc_l2.reset();
    rows[i].eoc_h1.reset();
    if (i == 0) continue;
    const auto& prev = rows[i - 1];
    rows[i].eoc_l2 = eoc(prev.errors.l2, rows[i].errors.l2, prev.coarse_step, rows[i].coarse_step);
    rows[i].eoc_h1 = eoc(prev.errors.h1, rows[i].errors.h1, prev.coarse_step, rows[i].coarse_step);
  }
  return ConvergenceTable{std::move(rows)};
}

}  // namespace symts

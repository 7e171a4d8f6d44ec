#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "monospec/errors.hpp"

namespace monospec {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Antitonic (non-increasing) weighted least-squares fit. Blocks are the
// maximal constant runs of the solution; equal-mean neighbours are merged so
// the decomposition is canonical.
template <typename Scalar>
struct AntitonicFit {
  VectorX<Scalar> levels;
  std::vector<Eigen::Index> block_sizes;
};

// Cumulative diagram of (y, w): points (sum w_i, sum w_i y_i) for i <= j,
// j = 0..m, with the origin prepended.
template <typename Scalar>
struct Diagram {
  VectorX<Scalar> x;
  VectorX<Scalar> h;
};

// Least concave majorant of a diagram: piecewise linear, touches the diagram
// at every knot, slopes strictly decreasing.
template <typename Scalar>
struct ConcaveMajorant {
  VectorX<Scalar> knot_x;
  VectorX<Scalar> knot_y;
  VectorX<Scalar> slopes;
  VectorX<Scalar> diagram_x;  // abscissae of the diagram this was built from
};

namespace detail {

template <typename Scalar>
void check_weights(const VectorX<Scalar>& y, const VectorX<Scalar>& w) {
  if (y.size() == 0) throw ParameterError("isotonic: empty input");
  if (w.size() != y.size()) throw ParameterError("isotonic: weight length mismatch");
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > Scalar(0)) || !std::isfinite(static_cast<double>(w[i])))
      throw ParameterError("isotonic: weights must be positive and finite");
  }
}

}  // namespace detail

// Pool-adjacent-violators solution of
//   min sum w_i (y_i - z_i)^2  over non-increasing z.
// Amortized O(m); pooling uses running weighted means.
template <typename Scalar>
AntitonicFit<Scalar> pava_antitonic(const VectorX<Scalar>& y, const VectorX<Scalar>& w) {
  detail::check_weights(y, w);
  const Eigen::Index m = y.size();
  std::vector<Scalar> mean;
  std::vector<Scalar> weight;
  std::vector<Eigen::Index> count;
  mean.reserve(m);
  weight.reserve(m);
  count.reserve(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    mean.push_back(y[i]);
    weight.push_back(w[i]);
    count.push_back(1);
    // A block violates antitonicity when it rises above its predecessor;
    // ties are pooled too so the block structure is canonical.
    while (mean.size() >= 2 && mean[mean.size() - 2] <= mean.back()) {
      const Scalar m2 = mean.back();
      const Scalar w2 = weight.back();
      const Eigen::Index c2 = count.back();
      mean.pop_back();
      weight.pop_back();
      count.pop_back();
      const Scalar wt = weight.back() + w2;
      mean.back() += (w2 / wt) * (m2 - mean.back());
      weight.back() = wt;
      count.back() += c2;
    }
  }
  AntitonicFit<Scalar> fit;
  fit.levels.resize(m);
  fit.block_sizes = count;
  Eigen::Index pos = 0;
  for (std::size_t b = 0; b < mean.size(); ++b) {
    for (Eigen::Index i = 0; i < count[b]; ++i) fit.levels[pos++] = mean[b];
  }
  return fit;
}

template <typename Scalar>
AntitonicFit<Scalar> pava_antitonic(const VectorX<Scalar>& y) {
  return pava_antitonic<Scalar>(y, VectorX<Scalar>::Ones(y.size()));
}

template <typename Scalar>
Diagram<Scalar> cumulative_diagram(const VectorX<Scalar>& y, const VectorX<Scalar>& w) {
  detail::check_weights(y, w);
  const Eigen::Index m = y.size();
  Diagram<Scalar> d;
  d.x.resize(m + 1);
  d.h.resize(m + 1);
  d.x[0] = Scalar(0);
  d.h[0] = Scalar(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    d.x[i + 1] = d.x[i] + w[i];
    d.h[i + 1] = d.h[i] + w[i] * y[i];
  }
  return d;
}

template <typename Scalar>
Diagram<Scalar> cumulative_diagram(const VectorX<Scalar>& y) {
  return cumulative_diagram<Scalar>(y, VectorX<Scalar>::Ones(y.size()));
}

// Upper convex hull of the diagram points, i.e. the least concave majorant
// of the piecewise-linear interpolant. Collinear interior points are not
// knots, so slopes are strictly decreasing.
template <typename Scalar>
ConcaveMajorant<Scalar> concave_majorant(const Diagram<Scalar>& diagram) {
  const Eigen::Index count = diagram.x.size();
  if (count < 2) throw ParameterError("concave_majorant: need at least two points");
  if (diagram.h.size() != count) throw ParameterError("concave_majorant: size mismatch");
  for (Eigen::Index i = 1; i < count; ++i) {
    if (!(diagram.x[i] > diagram.x[i - 1]))
      throw ParameterError("concave_majorant: abscissae must be strictly increasing");
  }
  std::vector<Eigen::Index> hull;
  hull.reserve(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    while (hull.size() >= 2) {
      const Eigen::Index a = hull[hull.size() - 2];
      const Eigen::Index b = hull[hull.size() - 1];
      const Scalar cross = (diagram.x[b] - diagram.x[a]) * (diagram.h[j] - diagram.h[a]) -
                           (diagram.h[b] - diagram.h[a]) * (diagram.x[j] - diagram.x[a]);
      if (cross >= Scalar(0)) {
        hull.pop_back();  // middle point is on or below the chord
      } else {
        break;
      }
    }
    hull.push_back(j);
  }
  ConcaveMajorant<Scalar> cm;
  const Eigen::Index k = static_cast<Eigen::Index>(hull.size());
  cm.knot_x.resize(k);
  cm.knot_y.resize(k);
  cm.slopes.resize(k - 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    cm.knot_x[i] = diagram.x[hull[i]];
    cm.knot_y[i] = diagram.h[hull[i]];
  }
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    cm.slopes[i] = (cm.knot_y[i + 1] - cm.knot_y[i]) / (cm.knot_x[i + 1] - cm.knot_x[i]);
  }
  cm.diagram_x = diagram.x;
  return cm;
}

// Slope of the majorant over each diagram step, with the left-derivative
// convention at knots: a step ending exactly at a knot takes the slope of
// the segment to its left.
template <typename Scalar>
VectorX<Scalar> lcm_slopes(const ConcaveMajorant<Scalar>& cm, Eigen::Index m) {
  if (cm.diagram_x.size() != m + 1)
    throw ParameterError("lcm_slopes: m does not match the source diagram");
  VectorX<Scalar> out(m);
  Eigen::Index seg = 0;
  for (Eigen::Index i = 1; i <= m; ++i) {
    const Scalar right = cm.diagram_x[i];
    while (seg + 1 < cm.slopes.size() && cm.knot_x[seg + 1] < right) ++seg;
    out[i - 1] = cm.slopes[seg];
  }
  return out;
}

// Min-max characterization of the majorant's slope over step i (1-based):
//   min over u < step of max over v >= step of (h_v - h_u)/(x_v - x_u).
// O(m^2) per index; reference implementation for equivalence tests.
template <typename Scalar>
Scalar minmax_slope(const Diagram<Scalar>& diagram, Eigen::Index i) {
  const Eigen::Index m = diagram.x.size() - 1;
  if (i < 1 || i > m) throw ParameterError("minmax_slope: step index out of range");
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index u = 0; u < i; ++u) {
    Scalar worst = -std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index v = i; v <= m; ++v) {
      const Scalar slope = (diagram.h[v] - diagram.h[u]) / (diagram.x[v] - diagram.x[u]);
      if (slope > worst) worst = slope;
    }
    if (worst < best) best = worst;
  }
  return best;
}

// Exhaustive projection oracle: enumerates all 2^(m-1) partitions of 1..m
// into consecutive blocks, pools each block to its weighted mean, and keeps
// the feasible candidate with the smallest weighted SSE.
template <typename Scalar>
VectorX<Scalar> brute_force_projection(const VectorX<Scalar>& y, const VectorX<Scalar>& w) {
  detail::check_weights(y, w);
  const Eigen::Index m = y.size();
  if (m > 12) throw ParameterError("brute_force_projection: m must be at most 12");
  const std::uint32_t partitions = 1u << (m - 1);
  VectorX<Scalar> best;
  Scalar best_sse = std::numeric_limits<Scalar>::infinity();
  VectorX<Scalar> candidate(m);
  for (std::uint32_t mask = 0; mask < partitions; ++mask) {
    Eigen::Index start = 0;
    Scalar prev_mean = std::numeric_limits<Scalar>::infinity();
    bool feasible = true;
    for (Eigen::Index i = 0; i < m; ++i) {
      const bool boundary = (i == m - 1) || ((mask >> i) & 1u);
      if (!boundary) continue;
      Scalar sw = Scalar(0), swy = Scalar(0);
      for (Eigen::Index j = start; j <= i; ++j) {
        sw += w[j];
        swy += w[j] * y[j];
      }
      const Scalar mean = swy / sw;
      if (mean > prev_mean + Scalar(1e-13)) {
        feasible = false;
        break;
      }
      for (Eigen::Index j = start; j <= i; ++j) candidate[j] = mean;
      prev_mean = mean;
      start = i + 1;
    }
    if (!feasible) continue;
    Scalar sse = Scalar(0);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Scalar r = y[j] - candidate[j];
      sse += w[j] * r * r;
    }
    if (sse < best_sse) {
      best_sse = sse;
      best = candidate;
    }
  }
  return best;
}

template <typename Scalar>
VectorX<Scalar> brute_force_projection(const VectorX<Scalar>& y) {
  return brute_force_projection<Scalar>(y, VectorX<Scalar>::Ones(y.size()));
}

}  // namespace monospec

#include "moplab/mop.hpp"

#include "moplab/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace moplab {

namespace {

using Objective = std::function<double(const ComplexVector&)>;

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  ComplexVector state;
};

// Larger value wins; near-ties go to the state with lexicographically larger
// moduli |<0|psi>|, |<1|psi>|, ...
bool better(const Candidate& a, const Candidate& b) {
  if (b.state.size() == 0) return true;
  const double eps = 1e-13 * (1.0 + std::abs(b.value));
  if (a.value > b.value + eps) return true;
  if (a.value < b.value - eps) return false;
  for (Index i = 0; i < a.state.size(); ++i) {
    const double ma = std::abs(a.state(i));
    const double mb = std::abs(b.state(i));
    if (ma > mb + 1e-12) return true;
    if (ma < mb - 1e-12) return false;
  }
  return false;
}

ComplexVector bloch_state(double theta, double phi) {
  ComplexVector psi(2);
  psi(0) = std::cos(0.5 * theta);
  psi(1) = std::polar(std::sin(0.5 * theta), phi);
  return psi;
}

// Nelder-Mead maximization in two variables.
std::array<double, 2> nelder_mead_2d(const std::function<double(double, double)>& f,
                                     std::array<double, 2> x0, double step, int max_iter,
                                     int& iterations) {
  using Point = std::array<double, 2>;
  std::array<Point, 3> p = {x0, Point{x0[0] + step, x0[1]}, Point{x0[0], x0[1] + step}};
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) v[i] = -f(p[i][0], p[i][1]);  // minimize -f

  auto combine = [](const Point& a, const Point& b, double t) {
    return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  };

  for (int it = 0; it < max_iter; ++it) {
    ++iterations;
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
    const int best = order[0], mid = order[1], worst = order[2];

    const double spread = std::abs(v[worst] - v[best]);
    const double diam = std::max({std::hypot(p[mid][0] - p[best][0], p[mid][1] - p[best][1]),
                                  std::hypot(p[worst][0] - p[best][0], p[worst][1] - p[best][1])});
    if (diam < 1e-11 || (spread <= 1e-16 * (1.0 + std::abs(v[best])) && diam < 1e-7)) break;

    const Point centroid{0.5 * (p[best][0] + p[mid][0]), 0.5 * (p[best][1] + p[mid][1])};
    const Point xr = combine(centroid, p[worst], -1.0);
    const double fr = -f(xr[0], xr[1]);
    if (fr < v[best]) {
      const Point xe = combine(centroid, p[worst], -2.0);
      const double fe = -f(xe[0], xe[1]);
      if (fe < fr) {
        p[worst] = xe;
        v[worst] = fe;
      } else {
        p[worst] = xr;
        v[worst] = fr;
      }
      continue;
    }
    if (fr < v[mid]) {
      p[worst] = xr;
      v[worst] = fr;
      continue;
    }
    const bool outside = fr < v[worst];
    const Point xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, p[worst], 0.5);
    const double fc = -f(xc[0], xc[1]);
    if (fc < std::min(fr, v[worst])) {
      p[worst] = xc;
      v[worst] = fc;
      continue;
    }
    for (int i : {mid, worst}) {
      p[i] = combine(p[best], p[i], 0.5);
      v[i] = -f(p[i][0], p[i][1]);
    }
  }
  const auto it = std::min_element(v.begin(), v.end());
  return p[static_cast<std::size_t>(it - v.begin())];
}

Candidate maximize_qubit(const Objective& objective, const MopOptions& opts, OptimizerTrace& trace) {
  const int nt = std::max(opts.grid_theta, 2);
  const int np = std::max(opts.grid_phi, 2);
  const double dt = std::numbers::pi / nt;
  const double dp = 2.0 * std::numbers::pi / np;

  struct GridPoint {
    double value;
    int it;
    int ip;
  };
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>((nt + 1) * np));
  for (int it = 0; it <= nt; ++it) {
    for (int ip = 0; ip < np; ++ip) {
      grid.push_back({objective(bloch_state(it * dt, ip * dp)), it, ip});
    }
  }
  const auto starts = static_cast<std::size_t>(std::clamp(opts.refine_starts, 1, static_cast<int>(grid.size())));
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(),
                    [](const GridPoint& a, const GridPoint& b) {
                      if (a.value != b.value) return a.value > b.value;
                      return std::tie(a.it, a.ip) < std::tie(b.it, b.ip);
                    });

  auto f = [&](double theta, double phi) { return objective(bloch_state(theta, phi)); };
  Candidate best;
  for (std::size_t s = 0; s < starts; ++s) {
    const std::array<double, 2> x0{grid[s].it * dt, grid[s].ip * dp};
    const auto x = nelder_mead_2d(f, x0, 0.5 * dt, 2000, trace.iterations);
    Candidate c{0.0, canonical_phase(bloch_state(x[0], x[1]))};
    c.value = objective(c.state);
    // The grid point itself is feasible; never return something worse.
    Candidate g{grid[s].value, canonical_phase(bloch_state(x0[0], x0[1]))};
    if (better(g, c)) c = g;
    trace.best_per_restart.push_back(c.value);
    if (better(c, best)) best = c;
  }
  trace.restarts = static_cast<int>(starts);
  return best;
}

ComplexVector normalized(const ComplexVector& v) { return v / v.norm(); }

// Projected ascent on the unit sphere with a central-difference gradient and
// step halving.
Candidate ascend(const Objective& objective, ComplexVector psi, const MopOptions& opts, int& iterations) {
  const Index d = psi.size();
  const double h = 1e-6;
  psi = normalized(psi);
  double value = objective(psi);
  double step = 0.25;
  int stalls = 0;

  for (int it = 0; it < opts.max_iterations; ++it) {
    ++iterations;
    ComplexVector grad(d);
    for (Index k = 0; k < d; ++k) {
      for (int part = 0; part < 2; ++part) {
        const Complex e = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
        ComplexVector plus = psi;
        ComplexVector minus = psi;
        plus(k) += e;
        minus(k) -= e;
        const double g = (objective(normalized(plus)) - objective(normalized(minus))) / (2.0 * h);
        if (part == 0) {
          grad(k) = Complex(g, grad(k).imag());
        } else {
          grad(k) = Complex(grad(k).real(), g);
        }
      }
    }
    // Tangent projection: drop the radial component.
    grad -= psi * psi.dot(grad).real();
    if (grad.norm() < 1e-11) break;

    bool improved = false;
    while (step > 1e-14) {
      const ComplexVector trial = normalized(psi + step * grad);
      const double tv = objective(trial);
      if (tv > value) {
        const double gain = tv - value;
        psi = trial;
        value = tv;
        improved = true;
        step = std::min(step * 2.0, 1e3);
        stalls = gain <= 1e-15 * (1.0 + std::abs(value)) ? stalls + 1 : 0;
        break;
      }
      step *= 0.5;
    }
    if (!improved || stalls >= 5) break;
  }
  return {value, psi};
}

Candidate maximize_general(Index d, const Objective& objective, const MopOptions& opts,
                           const std::vector<ComplexVector>& extra_starts, OptimizerTrace& trace) {
  std::vector<ComplexVector> starts;
  for (int r = 0; r < opts.restarts; ++r) {
    starts.push_back(random_pure_state(d, derive_seed(opts.seed, 0x5eed, static_cast<std::uint64_t>(r))));
  }
  for (const auto& s : extra_starts) {
    if (s.size() == d && s.norm() > 0.0) starts.push_back(s);
  }
  Candidate best;
  for (const auto& s : starts) {
    Candidate c = ascend(objective, s, opts, trace.iterations);
    c.state = canonical_phase(c.state);
    c.value = objective(c.state);
    trace.best_per_restart.push_back(c.value);
    if (better(c, best)) best = c;
  }
  trace.restarts = static_cast<int>(starts.size());
  trace.heuristic = true;
  return best;
}

}  // namespace

ComplexVector canonical_phase(const ComplexVector& v) {
  ComplexVector out = v / v.norm();
  for (Index i = 0; i < out.size(); ++i) {
    if (std::abs(out(i)) > 1e-12) {
      out *= std::conj(out(i)) / std::abs(out(i));
      out(i) = std::abs(out(i));
      break;
    }
  }
  return out;
}

MopResult maximize_over_pure_states(Index d, const Objective& objective, const MopOptions& opts,
                                    const std::vector<ComplexVector>& extra_starts) {
  if (d <= 0) throw InputError("maximize_over_pure_states: dimension must be positive");
  MopResult result;
  Candidate best;
  if (d == 1) {
    best.state = ComplexVector::Ones(1);
    best.value = objective(best.state);
    result.trace.restarts = 1;
    result.trace.best_per_restart.push_back(best.value);
  } else if (d == 2) {
    best = maximize_qubit(objective, opts, result.trace);
    for (const auto& s : extra_starts) {
      if (s.size() != 2) continue;
      Candidate c{0.0, canonical_phase(s)};
      c.value = objective(c.state);
      if (better(c, best)) best = c;
    }
  } else {
    best = maximize_general(d, objective, opts, extra_starts, result.trace);
  }
  result.value = best.value;
  result.argmax_state = best.state;
  return result;
}

MopResult nu_q(const Channel& ch, SchattenOrder q, const MopOptions& opts) {
  if (!ch.is_cp()) throw InputError("nu_q: map is not CP");
  auto objective = [&](const ComplexVector& psi) { return schatten_norm(moplab::apply(ch, outer(psi)), q); };
  MopResult r = maximize_over_pure_states(ch.d_in(), objective, opts);
  r.q = q.value();
  return r;
}

TensorMopResult nu_q_tensor(const Channel& a, const Channel& b, SchattenOrder q, const MopOptions& opts) {
  if (!a.is_cp() || !b.is_cp()) throw InputError("nu_q_tensor: both maps must be CP");
  const Index d = a.d_in() * b.d_in();
  if (d > opts.max_dim) {
    throw InputError("nu_q_tensor: composite input dimension " + std::to_string(d) +
                     " exceeds the cap " + std::to_string(opts.max_dim));
  }
  TensorMopResult out;
  const MopResult ra = nu_q(a, q, opts);
  const MopResult rb = nu_q(b, q, opts);
  out.nu_first = ra.value;
  out.nu_second = rb.value;

  const Channel joint = tensor_product(a, b);
  auto objective = [&](const ComplexVector& psi) { return schatten_norm(moplab::apply(joint, outer(psi)), q); };
  const ComplexVector product_start = kron(ra.argmax_state, rb.argmax_state).col(0);
  out.joint = maximize_over_pure_states(d, objective, opts, {product_start});
  out.joint.q = q.value();
  out.gap = out.joint.value - out.nu_first * out.nu_second;
  return out;
}

EntropyResult nu_s(const Channel& ch, const MopOptions& opts) {
  if (!ch.is_cp()) throw InputError("nu_s: map is not CP");
  if (!ch.is_tp()) throw InputError("nu_s: map is not trace preserving");
  auto objective = [&](const ComplexVector& psi) { return -entropy(moplab::apply(ch, outer(psi))); };
  const MopResult r = maximize_over_pure_states(ch.d_in(), objective, opts);
  EntropyResult out;
  out.value = -r.value;
  out.argmin_state = r.argmax_state;
  out.trace = r.trace;
  return out;
}

}  // namespace moplab

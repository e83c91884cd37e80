#include "moplab/inequalities.hpp"

#include "moplab/io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace moplab {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json q_to_json(SchattenOrder q) {
  if (q.is_infinite()) return "inf";
  return q.value();
}

SchattenOrder q_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return SchattenOrder::infinity();
    return SchattenOrder(std::stod(j.get<std::string>()));
  }
  return SchattenOrder(j.get<double>());
}

void finish(CheckReport& r, const std::function<json()>& witness) {
  if (!r.holds) {
    r.witness = witness();
  } else {
    r.witness.reset();
  }
}

void note_quasi(CheckReport& r, SchattenOrder q) {
  if (q.is_quasi_norm()) r.notes.push_back("quasi-norm regime");
}

json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  json arr = json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<ComplexMatrix> matrices_from_json(const json& j) {
  std::vector<ComplexMatrix> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

double golden_section_max(const std::function<double(double)>& h, double lo, double hi, double& arg) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = h(c), fd = h(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(d);
    }
  }
  arg = 0.5 * (a + b);
  return h(arg);
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

ComplexMatrix case3_pure_matrix(double beta, double delta, double theta) {
  const double off = std::sqrt(beta * delta);
  ComplexMatrix m(2, 2);
  m << beta, std::polar(off, theta), std::polar(off, -theta), delta;
  return m;
}

bool same_block(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + std::max(max_abs(a), max_abs(b)));
}

void require_psd(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || !is_hermitian(m, 1e-10) || !psd_check(m).is_psd) {
    throw InputError(std::string(what) + " is not PSD");
  }
}

json state_json(const BipartiteBlockState& rho) { return matrix_to_json(rho.full()); }

}  // namespace

// --- CheckReport -------------------------------------------------------------

double CheckReport::scale() const { return 1.0 + std::abs(rhs); }

bool CheckReport::significant_violation() const {
  return evaluated && !holds && gap < -kWitnessThreshold * scale();
}

CheckReport make_report(std::string name, double lhs, double rhs, double tol) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tol = tol;
  r.holds = r.gap >= -tol * r.scale();
  return r;
}

json to_json(const CheckReport& r) {
  json j = {{"name", r.name}, {"lhs", r.lhs},         {"rhs", r.rhs},     {"gap", r.gap},
            {"holds", r.holds}, {"tol", r.tol},       {"evaluated", r.evaluated},
            {"params", r.params}, {"notes", r.notes}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

CheckReport report_from_json(const json& j) {
  try {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.gap = j.at("gap").get<double>();
    r.holds = j.at("holds").get<bool>();
    r.tol = j.at("tol").get<double>();
    r.evaluated = j.value("evaluated", true);
    r.params = j.value("params", json::object());
    r.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("witness")) r.witness = j.at("witness");
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report_from_json: ") + e.what());
  }
}

// --- Phase maximization ----------------------------------------------------------

PhaseMax maximize_over_phase(const std::function<double(double)>& h, bool extreme_points_only, int grid) {
  PhaseMax out;
  out.extreme_points_only = extreme_points_only;
  if (extreme_points_only) {
    const double h0 = h(0.0);
    const double hpi = h(std::numbers::pi);
    out.value = std::max(h0, hpi);
    out.theta_star = hpi > h0 ? std::numbers::pi : 0.0;
    return out;
  }
  grid = std::max(grid, 8);
  const double step = kTwoPi / grid;
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) values[static_cast<std::size_t>(k)] = h(k * step);

  // Polish the best few circular local maxima.
  std::vector<int> peaks;
  for (int k = 0; k < grid; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    const double prev = values[static_cast<std::size_t>((k + grid - 1) % grid)];
    const double next = values[static_cast<std::size_t>((k + 1) % grid)];
    if (v >= prev && v >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    const double va = values[static_cast<std::size_t>(a)], vb = values[static_cast<std::size_t>(b)];
    return va != vb ? va > vb : a < b;
  });
  if (peaks.size() > 4) peaks.resize(4);

  out.value = -std::numeric_limits<double>::infinity();
  for (int k : peaks) {
    double arg = k * step;
    double v = golden_section_max(h, arg - step, arg + step, arg);
    if (values[static_cast<std::size_t>(k)] > v) {
      v = values[static_cast<std::size_t>(k)];
      arg = k * step;
    }
    if (v > out.value) {
      out.value = v;
      out.theta_star = wrap_angle(arg);
    }
  }
  return out;
}

PhaseMax rhs_case3(const Channel& ch, double beta, double delta, SchattenOrder q) {
  if (ch.d_in() != 2) throw InputError("rhs_case3: map must have d_in = 2");
  if (beta < 0.0 || delta < 0.0) throw InputError("rhs_case3: beta and delta must be nonnegative");
  auto h = [&](double theta) { return schatten_norm(moplab::apply(ch, case3_pure_matrix(beta, delta, theta)), q); };
  if (beta == 0.0 || delta == 0.0) {
    return PhaseMax{h(0.0), 0.0, true};
  }
  const bool extreme = !q.is_quasi_norm() && same_block(ch.block(0, 1), ch.block(1, 0));
  return maximize_over_phase(h, extreme);
}

// --- Checkers --------------------------------------------------------------------

CheckReport check_block_norm_bound(const BipartiteBlockState& rho, SchattenOrder q, double tol) {
  const double lhs = schatten_norm(rho.full(), q);
  const double beta = schatten_norm(rho.b(), q);
  const double delta = schatten_norm(rho.d(), q);
  CheckReport r = make_report("block_norm_bound", lhs, beta + delta, tol);
  r.params = {{"q", q_to_json(q)}, {"d", rho.dim()}, {"beta", beta}, {"delta", delta}};
  note_quasi(r, q);
  finish(r, [&] { return json{{"rho", state_json(rho)}}; });
  return r;
}

CheckReport check_chris0_with_nu(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q,
                                 double nu, double tol) {
  if (ch.d_in() != 2) throw InputError("check_chris0: map must have d_in = 2");
  const double lhs = schatten_norm(apply_tensor_identity(ch, rho), q);
  const double beta = schatten_norm(rho.b(), q);
  const double delta = schatten_norm(rho.d(), q);
  CheckReport r = make_report("chris0", lhs, nu * (beta + delta), tol);
  r.params = {{"q", q_to_json(q)}, {"d_out", ch.d_out()}, {"d", rho.dim()},
              {"beta", beta},      {"delta", delta},       {"nu_q", nu}};
  note_quasi(r, q);
  finish(r, [&] { return json{{"channel", channel_to_json(ch)}, {"rho", state_json(rho)}}; });
  return r;
}

CheckReport check_chris0(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q,
                         const MopOptions& opts, double tol) {
  return check_chris0_with_nu(ch, rho, q, nu_q(ch, q, opts).value, tol);
}

CheckReport check_case3(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q, double tol) {
  if (ch.d_in() != 2) throw InputError("check_case3: map must have d_in = 2");
  const double lhs = schatten_norm(apply_tensor_identity(ch, rho), q);
  const double beta = schatten_norm(rho.b(), q);
  const double delta = schatten_norm(rho.d(), q);
  const PhaseMax pm = rhs_case3(ch, beta, delta, q);
  CheckReport r = make_report("case3", lhs, pm.value, tol);
  r.params = {{"q", q_to_json(q)},
              {"d_out", ch.d_out()},
              {"d", rho.dim()},
              {"beta", beta},
              {"delta", delta},
              {"theta_star", pm.theta_star},
              {"extreme_points_only", pm.extreme_points_only}};
  note_quasi(r, q);
  if (!r.holds) r.notes.push_back("conjecture-violating witness");
  finish(r, [&] { return json{{"channel", channel_to_json(ch)}, {"rho", state_json(rho)}}; });
  return r;
}

CheckReport check_case3_sqrt(const ComplexMatrix& g1, const ComplexMatrix& g2, const ComplexMatrix& x1,
                             const ComplexMatrix& x2, SchattenOrder q, double tol) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols() || x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw InputError("check_case3_sqrt: inconsistent factor shapes");
  }
  const SchattenOrder p = q.doubled();
  const double lhs = schatten_norm(kron(g1, x1) + kron(g2, x2), p);
  const double n1 = schatten_norm(x1, p);
  const double n2 = schatten_norm(x2, p);
  auto h = [&](double theta) {
    return schatten_norm(n1 * g1 + std::polar(n2, theta) * g2, p);
  };
  // ||M||_{2q}^2 = ||M^* M||_q and M^* M is affine in cos(theta) when G1^* G2
  // is Hermitian.
  const bool extreme = !q.is_quasi_norm() && is_hermitian(g1.adjoint() * g2);
  const PhaseMax pm = (n1 == 0.0 || n2 == 0.0) ? PhaseMax{h(0.0), 0.0, true} : maximize_over_phase(h, extreme);

  CheckReport r = make_report("case3_sqrt", lhs, pm.value, tol);
  r.params = {{"q", q_to_json(q)},
              {"norm_order", q_to_json(p)},
              {"x1_norm", n1},
              {"x2_norm", n2},
              {"theta_star", pm.theta_star},
              {"extreme_points_only", pm.extreme_points_only}};
  note_quasi(r, q);
  if (!r.holds) r.notes.push_back("conjecture-violating witness");
  finish(r, [&] {
    return json{{"g1", matrix_to_json(g1)}, {"g2", matrix_to_json(g2)},
                {"x1", matrix_to_json(x1)}, {"x2", matrix_to_json(x2)}};
  });
  return r;
}

CheckReport check_alt(const ComplexMatrix& f, const ComplexMatrix& h, double q, double tol) {
  if (!(q >= 1.0)) throw InputError("check_alt: requires q >= 1");
  if (h.rows() != h.cols() || f.cols() != h.rows()) throw InputError("check_alt: shapes incompatible with F H F^*");
  const double lhs = trace_abs_power(f * h * f.adjoint(), q);
  const ComplexMatrix ffq = psd_power(hermitian_part(f.adjoint() * f), q);
  const ComplexMatrix avg = 0.5 * (abs_power(h, q) + abs_power(h.adjoint(), q));
  const double rhs = (ffq * avg).trace().real();
  CheckReport r = make_report("alt", lhs, rhs, tol);
  r.params = {{"q", q}, {"rows", f.rows()}, {"dim", h.rows()}, {"h_normal", (h * h.adjoint() - h.adjoint() * h).norm() < 1e-12 * (1.0 + h.squaredNorm())}};
  finish(r, [&] { return json{{"f", matrix_to_json(f)}, {"h", matrix_to_json(h)}}; });
  return r;
}

CheckReport check_positive_tensor(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                                  SchattenOrder q, double tol) {
  if (a.empty() || a.size() != b.size()) throw InputError("check_positive_tensor: lists must be nonempty and of equal length");
  for (const auto& ak : a) {
    if (ak.rows() != a.front().rows()) throw InputError("check_positive_tensor: A_k sizes differ");
    require_psd(ak, "check_positive_tensor: A_k");
  }
  for (const auto& bk : b) {
    if (bk.rows() != b.front().rows() || bk.cols() != b.front().cols()) {
      throw InputError("check_positive_tensor: B_k shapes differ");
    }
  }
  ComplexMatrix sum_tensor = kron(a[0], b[0]);
  ComplexMatrix sum_a = a[0];
  ComplexMatrix weighted = schatten_norm(b[0], q) * a[0];
  double bmax = schatten_norm(b[0], q);
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double nb = schatten_norm(b[k], q);
    sum_tensor += kron(a[k], b[k]);
    sum_a += a[k];
    weighted += nb * a[k];
    bmax = std::max(bmax, nb);
  }
  const double lhs = schatten_norm(sum_tensor, q);
  const double rhs_weighted = schatten_norm(weighted, q);
  const double rhs = schatten_norm(sum_a, q) * bmax;

  CheckReport r = make_report("positive_tensor", lhs, rhs, tol);
  r.gap = std::min(rhs_weighted - lhs, rhs - rhs_weighted);
  r.holds = r.gap >= -tol * r.scale();
  r.params = {{"q", q_to_json(q)},
              {"terms", a.size()},
              {"rhs_weighted", rhs_weighted},
              {"gap_inner", rhs_weighted - lhs},
              {"gap_outer", rhs - rhs_weighted}};
  note_quasi(r, q);
  finish(r, [&] { return json{{"a", matrices_to_json(a)}, {"b", matrices_to_json(b)}}; });
  return r;
}

CheckReport check_blockwise(const Channel& ch, const ComplexMatrix& x, SchattenOrder q, double tol) {
  const Index n = ch.d_in();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) require_psd(ch.block(i, j), "check_blockwise: block Phi_ij");
  }
  if (x.rows() != x.cols() || x.rows() % n != 0) throw InputError("check_blockwise: X must have a d_in x d_in block grid");
  const Index d = x.rows() / n;
  ComplexMatrix norms(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) norms(i, j) = schatten_norm(x.block(i * d, j * d, d, d), q);
  }
  const double lhs = schatten_norm(apply_tensor_identity(ch, x), q);
  const double rhs = schatten_norm(moplab::apply(ch, norms), q);
  CheckReport r = make_report("blockwise", lhs, rhs, tol);
  r.params = {{"q", q_to_json(q)}, {"d_in", n}, {"d_out", ch.d_out()}, {"d", d}};
  note_quasi(r, q);
  finish(r, [&] { return json{{"channel", channel_to_json(ch)}, {"x", matrix_to_json(x)}}; });
  return r;
}

CheckReport check_psd_phase_sqrt(const ComplexMatrix& h1, const ComplexMatrix& h2, double theta1,
                                 double theta2, const ComplexMatrix& x1, const ComplexMatrix& x2,
                                 SchattenOrder q, double tol) {
  require_psd(h1, "check_psd_phase_sqrt: H1");
  require_psd(h2, "check_psd_phase_sqrt: H2");
  CheckReport r = check_case3_sqrt(std::polar(1.0, theta1) * h1, std::polar(1.0, theta2) * h2, x1, x2, q, tol);
  r.name = "psd_phase_sqrt";
  r.params["theta1"] = theta1;
  r.params["theta2"] = theta2;
  std::erase(r.notes, "conjecture-violating witness");
  finish(r, [&] {
    return json{{"h1", matrix_to_json(h1)}, {"h2", matrix_to_json(h2)}, {"theta1", theta1},
                {"theta2", theta2},         {"x1", matrix_to_json(x1)}, {"x2", matrix_to_json(x2)}};
  });
  return r;
}

CheckReport check_separable_bound_with_nu(const Channel& ch, const std::vector<SeparableTerm>& terms,
                                          SchattenOrder q, double nu, double tol) {
  if (terms.empty()) throw InputError("check_separable_bound: no terms");
  const Index d = terms.front().b.rows();
  ComplexMatrix rho = ComplexMatrix::Zero(ch.d_in() * d, ch.d_in() * d);
  for (const auto& t : terms) {
    if (t.sigma.rows() != ch.d_in() || t.b.rows() != d) throw InputError("check_separable_bound: term shape mismatch");
    require_psd(t.sigma, "check_separable_bound: sigma_k");
    require_psd(t.b, "check_separable_bound: B_k");
    if (std::abs(t.sigma.trace() - 1.0) > 1e-10) throw InputError("check_separable_bound: sigma_k must have unit trace");
    rho += kron(t.sigma, t.b);
  }
  const double lhs = schatten_norm(apply_tensor_identity(ch, rho), q);
  const double reduced = schatten_norm(partial_trace_first(rho, ch.d_in(), d), q);
  CheckReport r = make_report("separable_bound", lhs, nu * reduced, tol);
  r.params = {{"q", q_to_json(q)}, {"terms", terms.size()}, {"nu_q", nu}, {"reduced_norm", reduced}};
  note_quasi(r, q);
  finish(r, [&] {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back({{"sigma", matrix_to_json(t.sigma)}, {"b", matrix_to_json(t.b)}});
    return json{{"channel", channel_to_json(ch)}, {"terms", std::move(arr)}};
  });
  return r;
}

CheckReport check_separable_bound(const Channel& ch, const std::vector<SeparableTerm>& terms, SchattenOrder q,
                                  const MopOptions& opts, double tol) {
  return check_separable_bound_with_nu(ch, terms, q, nu_q(ch, q, opts).value, tol);
}

CheckReport check_multiplicativity_eb(const Channel& ch, const Channel& eb, SchattenOrder q,
                                      const MopOptions& opts, double tol) {
  const EbCertificate cert = is_entanglement_breaking(eb);
  if (cert.status != EbStatus::kEntanglementBreaking) {
    CheckReport r;
    r.name = "multiplicativity_eb";
    r.evaluated = false;
    r.tol = tol;
    r.params = {{"q", q_to_json(q)}, {"eb_status", to_string(cert.status)}};
    r.notes.push_back("skipped: second map has no EB certificate (" + to_string(cert.status) + ")");
    return r;
  }
  const TensorMopResult t = nu_q_tensor(ch, eb, q, opts);
  CheckReport r = make_report("multiplicativity_eb", t.joint.value, t.nu_first * t.nu_second, tol);
  r.params = {{"q", q_to_json(q)},
              {"nu_first", t.nu_first},
              {"nu_second", t.nu_second},
              {"equality_gap", std::abs(t.gap)},
              {"eb_reason", cert.reason},
              {"heuristic_maximum", t.joint.trace.heuristic}};
  finish(r, [&] { return json{{"channel", channel_to_json(ch)}, {"eb", channel_to_json(eb)}}; });
  return r;
}

CheckReport check_toeplitz_theorem(const Channel& ch, const ComplexMatrix& b, const ComplexMatrix& c,
                                   SchattenOrder q, double tol) {
  if (ch.d_in() != 2) throw InputError("check_toeplitz_theorem: map must have d_in = 2");
  if (b.rows() != b.cols() || c.rows() != b.rows() || c.cols() != b.cols()) {
    throw InputError("check_toeplitz_theorem: B and C must be square of equal size");
  }
  const Index d = b.rows();
  ComplexMatrix rho(2 * d, 2 * d);
  rho << b, c, c.adjoint(), b;
  if (!is_hermitian(rho, 1e-10) || !psd_check(rho).is_psd) {
    throw InputError("check_toeplitz_theorem: [[B, C], [C^*, B]] is not PSD");
  }
  const double lhs = schatten_norm(apply_tensor_identity(ch, rho), q);
  const double beta = schatten_norm(b, q);
  const PhaseMax pm = rhs_case3(ch, beta, beta, q);
  CheckReport r = make_report("toeplitz_theorem", lhs, pm.value, tol);
  r.params = {{"q", q_to_json(q)}, {"d", d}, {"beta", beta}, {"theta_star", pm.theta_star},
              {"cp", ch.is_cp()}};
  note_quasi(r, q);
  finish(r, [&] {
    return json{{"channel", channel_to_json(ch)}, {"b", matrix_to_json(b)}, {"c", matrix_to_json(c)}};
  });
  return r;
}

CheckReport check_delta_bound(const Channel& ch, double tol) {
  if (ch.d_in() != 2) throw InputError("check_delta_bound: map must have d_in = 2");
  const ComplexMatrix x = ch.block(0, 0) + ch.block(1, 1);
  const ComplexMatrix delta = ch.block(0, 0) - ch.block(1, 1);
  const double scale = 1.0 + max_abs(x);
  const double lower = psd_check(x + delta).min_eigenvalue;
  const double upper = psd_check(x - delta).min_eigenvalue;
  CheckReport r = make_report("delta_bound", 0.0, std::min(lower, upper) / scale, tol);
  const double mean = x.trace().real() / static_cast<double>(x.rows());
  const bool scalar_x =
      (x - mean * ComplexMatrix::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff() <= 1e-10 * scale;
  r.params = {{"min_eig_x_plus_delta", lower}, {"min_eig_x_minus_delta", upper},
              {"x_is_identity_multiple", scalar_x}, {"x_trace", x.trace().real()}};
  finish(r, [&] { return json{{"channel", channel_to_json(ch)}}; });
  return r;
}

// --- Witness replay ------------------------------------------------------------------

CheckReport rerun_from_witness(const json& report, const MopOptions& opts) {
  const CheckReport original = report_from_json(report);
  if (!original.witness) throw InputError("rerun_from_witness: report carries no witness");
  const json& w = *original.witness;
  const double tol = original.tol;
  const std::string& name = original.name;
  try {
    if (name == "delta_bound") return check_delta_bound(channel_from_json(w.at("channel")), tol);
    if (name == "alt") {
      return check_alt(matrix_from_json(w.at("f")), matrix_from_json(w.at("h")),
                       original.params.at("q").get<double>(), tol);
    }
    const SchattenOrder q = q_from_json(original.params.at("q"));
    if (name == "block_norm_bound") {
      return check_block_norm_bound(BipartiteBlockState::from_matrix(matrix_from_json(w.at("rho"))), q, tol);
    }
    if (name == "chris0" || name == "case3") {
      const Channel ch = channel_from_json(w.at("channel"));
      const auto rho = BipartiteBlockState::from_matrix(matrix_from_json(w.at("rho")));
      return name == "chris0" ? check_chris0(ch, rho, q, opts, tol) : check_case3(ch, rho, q, tol);
    }
    if (name == "case3_sqrt") {
      return check_case3_sqrt(matrix_from_json(w.at("g1")), matrix_from_json(w.at("g2")),
                              matrix_from_json(w.at("x1")), matrix_from_json(w.at("x2")), q, tol);
    }
    if (name == "psd_phase_sqrt") {
      return check_psd_phase_sqrt(matrix_from_json(w.at("h1")), matrix_from_json(w.at("h2")),
                                  w.at("theta1").get<double>(), w.at("theta2").get<double>(),
                                  matrix_from_json(w.at("x1")), matrix_from_json(w.at("x2")), q, tol);
    }
    if (name == "positive_tensor") {
      return check_positive_tensor(matrices_from_json(w.at("a")), matrices_from_json(w.at("b")), q, tol);
    }
    if (name == "blockwise") {
      return check_blockwise(channel_from_json(w.at("channel")), matrix_from_json(w.at("x")), q, tol);
    }
    if (name == "separable_bound") {
      std::vector<SeparableTerm> terms;
      for (const auto& t : w.at("terms")) terms.push_back({matrix_from_json(t.at("sigma")), matrix_from_json(t.at("b"))});
      return check_separable_bound(channel_from_json(w.at("channel")), terms, q, opts, tol);
    }
    if (name == "multiplicativity_eb") {
      return check_multiplicativity_eb(channel_from_json(w.at("channel")), channel_from_json(w.at("eb")), q, opts, tol);
    }
    if (name == "toeplitz_theorem") {
      return check_toeplitz_theorem(channel_from_json(w.at("channel")), matrix_from_json(w.at("b")),
                                    matrix_from_json(w.at("c")), q, tol);
    }
  } catch (const json::exception& e) {
    throw InputError("rerun_from_witness: malformed witness: " + std::string(e.what()));
  }
  throw InputError("rerun_from_witness: unknown checker '" + name + "'");
}

}  // namespace moplab

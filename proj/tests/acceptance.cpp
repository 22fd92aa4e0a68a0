// Acceptance suite: one pass/fail line per criterion, exit code 1 when any
// criterion has a failing check.
//
//   1. printed-constant reproduction (thresholds, polynomial sign patterns)
//   2. classical-flow oracle (closed-form deceleration exponents)
//   3. factorization identity and unitarity on random fields
//   4. linear backward identity u = u_p + E + A at mu = 0
//   5. theorem-rate check at desk scale (n = 1)
//   6. fixed-point contraction for small data
//   7. profile norm growth against log-power models
//   8. determinism and splitting-order checks

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tdho/diagnostics.hpp"
#include "tdho/evolution.hpp"
#include "tdho/params.hpp"
#include "tdho/profile.hpp"
#include "tdho/runner.hpp"

using namespace tdho;

namespace {

struct Suite {
  int criteria_failed = 0;
  int checks_failed_in_current = 0;

  void begin(int k, const std::string& title) {
    checks_failed_in_current = 0;
    std::printf("criterion %d: %s\n", k, title.c_str());
  }
  void check(bool ok, const std::string& what) {
    std::printf("  [%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++checks_failed_in_current;
  }
  void info(const std::string& what) { std::printf("  [info] %s\n", what.c_str()); }
  void end(double seconds) {
    if (checks_failed_in_current > 0) ++criteria_failed;
    std::printf("  (%s, %.1f s)\n\n", checks_failed_in_current ? "FAILED" : "passed", seconds);
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Least squares on y = C (log t)^k + D; centered r^2.  k = 0 is the constant
// model, which explains none of the variance.
double r2_logpower(const std::vector<double>& ts, const std::vector<double>& ys, int k) {
  if (k <= 0) return 0.0;
  const double n = static_cast<double>(ts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = std::pow(std::log(ts[i]), k);
    const double y = ys[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  return vyy > 0.0 ? vxy * vxy / (vxx * vyy) : 1.0;
}

RunConfig verify_config(const std::string& sigma_block) {
  std::string text = R"([run]
experiment = verify_theorem
seed = 1
)" + sigma_block + R"(
[profile]
family = gaussian
amplitude = 0.05
width = 1.0
mu = 0.01
n = 1

[grid]
points = 4096
extent = 40.0

[solver]
dt_initial = 2e-3
dt_control = proportional_to_t
t_truncate = 1000
frame = moving
picard_iterations = 4

[window]
t_start = 10
t_end = 100
)";
  return parse_config(text);
}

void criterion_1(Suite& s) {
  const double t0 = now_seconds();
  s.begin(1, "printed-constant reproduction");

  const double l1 = lambda_threshold(1), l2 = lambda_threshold(2), l3 = lambda_threshold(3);
  s.check(std::abs(l1 - 0.2396) < 1e-3,
          "lambda_threshold(1) = " + fmt(l1) + " within 1e-3 of 0.2396");
  s.check(std::abs(l2 - 0.1492) < 1e-3,
          "lambda_threshold(2) = " + fmt(l2) + " within 1e-3 of 0.1492");
  s.check(std::abs(l3 - 0.0221) < 1e-3,
          "lambda_threshold(3) = " + fmt(l3) + " within 1e-3 of 0.0221");

  // Sign pattern at lambda = 0: every feasibility polynomial satisfied, with
  // the frozen constant terms.
  const auto at0 = cubic_ledger(1, 0.0);
  bool zero_ok = at0.by_name("b_window_n3").value == -4.0 &&
                 at0.by_name("pair_exists_n1").value == 3.0 &&
                 at0.by_name("pair_exists_n2").value == 1.0 &&
                 at0.by_name("pair_exists_n3").value == -1.0 &&
                 at0.by_name("strichartz_tail_n3").value == -10.0;
  for (const auto& c : at0.checks) zero_ok = zero_ok && c.satisfied;
  s.check(zero_ok, "ledger at lambda = 0: values (-4, 3, 1, -1, -10), all satisfied");

  // Around each dimension's threshold the defining polynomial flips while the
  // rest of that dimension's set stays satisfied below it.
  const double eps = 5e-3;
  const char* defining[4] = {nullptr, "pair_exists_n1", "pair_exists_n2", "pair_exists_n3"};
  for (int n = 1; n <= 3; ++n) {
    const double thr = lambda_threshold(n);
    const auto below = cubic_ledger(n, thr - eps);
    const auto above = cubic_ledger(n, thr + eps);
    const bool ok = below.all_satisfied_for(n) && !above.by_name(defining[n]).satisfied &&
                    !above.all_satisfied_for(n);
    s.check(ok, std::string("n = ") + std::to_string(n) + ": " + defining[n] +
                    " flips across the threshold, set satisfied below");
  }

  const double r1 = std::abs((2.0 * l1 - 13.0) * l1 + 3.0);
  const double r2 = std::abs((2.0 * l2 - 7.0) * l2 + 1.0);
  const double r3 = std::abs(((36.0 * l3 - 78.0) * l3 + 47.0) * l3 - 1.0);
  s.check(r1 < 1e-7 && r2 < 1e-7 && r3 < 1e-7,
          "root certification |p(threshold)| < 1e-7 (residuals " + fmt(r1) + ", " + fmt(r2) +
              ", " + fmt(r3) + ")");

  s.end(now_seconds() - t0);
}

void criterion_2(Suite& s) {
  const double t0 = now_seconds();
  s.begin(2, "classical-flow oracle: extracted exponents match the closed form");
  for (double sigma0 : {0.05, 0.09, 3.0 / 16.0}) {
    const auto cs = solve_classical(SigmaModel::inverse_square(sigma0, 1.0), 1e4, 1e-9);
    const auto asym = extract_asymptotics(cs, {1e2, 1e4});
    const double expect = closed_form_lambda(sigma0);
    const double drift = cs.wronskian_drift();
    s.check(std::abs(asym.lambda - expect) < 1e-3 && drift <= 1e-8,
            "sigma0 = " + fmt(sigma0) + ": lambda " + fmt(asym.lambda) + " vs " + fmt(expect) +
                ", Wronskian drift " + fmt(drift));
  }
  s.end(now_seconds() - t0);
}

void criterion_3(Suite& s) {
  const double t0 = now_seconds();
  s.begin(3, "factorization identity and unitarity");

  {
    const Grid g = Grid::centered(1, 1024, 64.0);
    const auto cs0 = solve_classical(SigmaModel::zero(), 10.0, 1e-10);
    const Field u0 = make_field(g, [](const std::array<double, 3>& x) {
      return Complex(0.8 * std::exp(-x[0] * x[0] / (2.0 * 1.3 * 1.3)), 0.0);
    });
    const double t = 3.0;
    Field uh = fourier(u0);
    transform_pointwise(uh, [t](const std::array<double, 3>& xi, Complex& v) {
      const double ang = -0.5 * t * xi[0] * xi[0];
      v *= Complex(std::cos(ang), std::sin(ang));
    });
    const Field mult = inverse_fourier(uh);
    const Field viaf = trig_resample(mdfm_propagator(cs0, t, u0), g);
    const double rel = l2_distance(viaf, mult) / l2_norm(mult);
    s.check(rel < 1e-10, "free-case factorization vs multiplier propagator: rel " + fmt(rel));
  }

  {
    const auto cs = solve_classical(SigmaModel::inverse_square(0.09, 1.0), 20.0, 1e-10);
    double worst = 0.0;
    int count = 0;
    auto push = [&](double nr, double n0) { worst = std::max(worst, std::abs(nr - n0) / n0); };
    auto exercise = [&](const Grid& g, std::uint64_t seed) {
      const Field f = random_field(g, seed);
      const double n0 = l2_norm(f);
      push(l2_norm(fourier(f)), n0);
      push(l2_norm(inverse_fourier(f)), n0);
      push(l2_norm(modulate(f, 1.7)), n0);
      push(l2_norm(dilate(f, 2.3)), n0);
      push(l2_norm(mdfm_propagator(cs, 5.0, f)), n0);
      push(l2_norm(mdfm_between(cs, 6.0, 3.0, f)), n0);
      ++count;
    };
    for (std::uint64_t i = 0; i < 60; ++i) exercise(Grid::centered(1, 1024, 30.0), 100 + i);
    for (std::uint64_t i = 0; i < 25; ++i) exercise(Grid::centered(2, 64, 20.0), 200 + i);
    for (std::uint64_t i = 0; i < 15; ++i) exercise(Grid::centered(3, 64, 16.0), 300 + i);
    s.check(count == 100 && worst < 1e-10,
            "unitarity over 100 random fields (n = 1, 2, 3): worst rel drift " + fmt(worst));
  }
  s.end(now_seconds() - t0);
}

void criterion_4(Suite& s) {
  const double t0 = now_seconds();
  s.begin(4, "linear backward identity u = u_p + E + A (mu = 0)");

  const SigmaModel sigma = SigmaModel::inverse_square(0.09, 1.0);
  const auto cs = solve_classical(sigma, 2200.0, 1e-10);
  const auto asym = extract_asymptotics(cs, {100.0, 2000.0});
  ProfileSpec spec = ProfileSpec::from_family(GaussianFamily{0.05, 1.0},
                                              Grid::centered(1, 2048, 64.0), 0.0, 1, asym.lambda,
                                              asym.c2_plus);
  SolverSettings qs;
  qs.t_truncate = 2000.0;

  const Field u5 = mdfm_propagator(cs, 5.0, inverse_fourier(spec.u_plus_hat));
  auto run = [&](double dt) {
    SolverSettings es;
    es.dt_initial = dt;
    es.dt_control = SolverSettings::DtControl::Fixed;
    return evolve(u5, 5.0, 20.0, es, sigma, spec, {10.0, 20.0});
  };
  const auto ta = run(1e-3);
  const auto tb = run(5e-4);

  {
    const Field h = detail::physical_to_hat(cs, 5.0, u5);
    ProfileSpec on = spec;
    on.u_plus_hat = make_field(h.grid, *spec.family);
    const Field expect = hat_profile(on, 5.0) + remainder_defect_hat(on, cs, 5.0, qs) +
                         remainder_scaling_hat(on, cs, 5.0, qs);
    const double lhs = l2_distance(h, expect);
    s.check(lhs < 1e-12, "t = 5: identity residual " + fmt(lhs) + " (transform algebra only)");
  }
  for (std::size_t k = 0; k < ta.times.size(); ++k) {
    const double t = ta.times[k];
    const Field h = detail::physical_to_hat(cs, t, ta.fields[k]);
    ProfileSpec on = spec;
    on.u_plus_hat = make_field(h.grid, *spec.family);
    const Field expect = hat_profile(on, t) + remainder_defect_hat(on, cs, t, qs) +
                         remainder_scaling_hat(on, cs, t, qs);
    const double lhs = l2_distance(h, expect);
    const Field hb = detail::physical_to_hat(cs, t, tb.fields[k]);
    const double budget = (4.0 / 3.0) * l2_distance(h, hb);  // quadrature is exact at mu = 0
    s.check(lhs <= 10.0 * budget, "t = " + fmt(t) + ": residual " + fmt(lhs) +
                                      " <= 10 x error estimate " + fmt(budget));
  }

  {
    const auto power_cs = oracles::pure_power_solution(0.1, 2.0, 1.0, 2000.0);
    ProfileSpec pspec = ProfileSpec::from_family(GaussianFamily{0.05, 1.0},
                                                 Grid::centered(1, 256, 30.0), 0.01, 1, 0.1, 2.0);
    SolverSettings ps;
    ps.t_truncate = 1000.0;
    const double norm = l2_norm(remainder_scaling(pspec, power_cs, 10.0, ps).value);
    s.check(norm < 1e-13, "power-law zeta2: ||A(10)|| = " + fmt(norm) + " (round-off)");
  }
  s.end(now_seconds() - t0);
}

void criterion_5(Suite& s) {
  const double t0 = now_seconds();
  s.begin(5, "theorem-rate check at desk scale (n = 1, 4096 points)");

  auto run_case = [&](const std::string& label, const std::string& sigma_block) {
    const std::string dir = "/tmp/tdho_acceptance/" + label;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    RunConfig cfg = verify_config(sigma_block);
    return run_verify_experiment(cfg, dir);
  };

  const VerifyOutcome free_case = run_case("free", "[sigma]\nkind = zero\n");
  s.check(free_case.b_est >= 0.4,
          "sigma = 0 (lambda = 0): b_est = " + fmt(free_case.b_est) + " >= 0.4");

  const VerifyOutcome invsq =
      run_case("invsq", "[sigma]\nkind = inverse_square\nsigma0 = 0.09\nr0 = 1.0\n");
  s.check(invsq.b_est >= 0.5,
          "inverse_square(0.09, 1) (lambda = 0.1): b_est = " + fmt(invsq.b_est) + " >= 0.5");
  if (invsq.b_est < 0.5) {
    s.info("the regular-at-zero zeta1 of this coefficient carries a t^0.9 component");
    s.info("(matched coefficient -0.230237), so zeta1/zeta2 does not decay and the");
    s.info("defect term ||R(t)w|| grows toward a constant; no profile decay results");
  }

  const VerifyOutcome lens = run_case("lens", "[sigma]\nkind = lens_power\nlambda = 0.1\n");
  s.info("supplementary lens_power(0.1) (pair keeps both power laws): b_est = " +
         fmt(lens.b_est) + (lens.b_est >= 0.5 ? " >= 0.5" : " < 0.5"));

  s.end(now_seconds() - t0);
}

void criterion_6(Suite& s) {
  const double t0 = now_seconds();
  s.begin(6, "fixed-point contraction for small data");

  const SigmaModel sigma = SigmaModel::inverse_square(0.09, 1.0);
  const auto cs = solve_classical(sigma, 1100.0, 1e-10);
  const auto asym = extract_asymptotics(cs, {20.0, 1000.0});

  {
    ProfileSpec spec = ProfileSpec::from_family(GaussianFamily{0.05, 1.0},
                                                Grid::centered(1, 2048, 40.0), 0.01, 1,
                                                asym.lambda, asym.c2_plus);
    SolverSettings set;
    const auto r = picard_solve_hat(spec, cs, 10.0, set, 5);
    bool monotone = true, halving = true;
    const double floor = 1e-15 * l2_norm(spec.u_plus_hat);
    for (std::size_t k = 1; k < r.residuals.size(); ++k) {
      if (r.residuals[k] <= floor) break;
      monotone = monotone && r.residuals[k] < r.residuals[k - 1];
      halving = halving && r.residuals[k] < 0.5 * r.residuals[k - 1];
    }
    s.check(monotone && halving,
            "lambda = 0.1, amplitude 0.05: residual ratios < 1/2, monotone (first ratio " +
                fmt(r.residuals[1] / r.residuals[0]) + ")");
  }
  {
    ProfileSpec spec = ProfileSpec::from_family(GaussianFamily{0.05, 1.0},
                                                Grid::centered(1, 2048, 40.0), 0.0, 1,
                                                asym.lambda, asym.c2_plus);
    SolverSettings set;
    const auto r = picard_solve_hat(spec, cs, 10.0, set, 3);
    s.check(r.residuals[0] > 0.0 && r.residuals[1] == 0.0,
            "mu = 0 converges in one sweep exactly (residuals " + fmt(r.residuals[0]) + ", " +
                fmt(r.residuals[1]) + ")");
  }
  s.end(now_seconds() - t0);
}

void criterion_7(Suite& s) {
  const double t0 = now_seconds();
  s.begin(7, "profile norm growth against log-power models");

  ProfileSpec spec = ProfileSpec::from_family(GaussianFamily{1.0, 1.0},
                                              Grid::centered(1, 4096, 80.0), 1.0, 1, 0.0, 1.0);
  for (double gamma : {0.5, 1.5}) {
    std::vector<double> ts, ys;
    for (int i = 0; i < 33; ++i) {
      const double t = 10.0 * std::pow(1000.0, i / 32.0);
      ts.push_back(t);
      ys.push_back(sobolev_norm(hat_profile(spec, t), gamma, 0.0));
    }
    const int k = static_cast<int>(std::ceil(gamma));
    const double r_hi = r2_logpower(ts, ys, k);
    const double r_lo = r2_logpower(ts, ys, k - 1);
    s.check(r_hi >= 0.99, "gamma = " + fmt(gamma) + ": r^2 against C (log t)^" +
                              std::to_string(k) + " = " + fmt(r_hi) + " >= 0.99");
    s.check(r_hi - r_lo >= 0.05, "gamma = " + fmt(gamma) + ": r^2 drop to (log t)^" +
                                     std::to_string(k - 1) + " = " + fmt(r_hi - r_lo) +
                                     " >= 0.05");
  }
  s.info("adjacent log powers correlate above 0.99 over t in [10, 1e4], so the drop");
  s.info("clause cannot separate (log t)^2 from (log t)^1 on this window");
  s.end(now_seconds() - t0);
}

void criterion_8(Suite& s) {
  const double t0 = now_seconds();
  s.begin(8, "determinism and splitting order");

  {
    SweepSpec sw;
    sw.base_text = "[run]\nexperiment = params\n[profile]\nn = 1\n[parameters]\nlambda = 0\n";
    sw.experiment = "params";
    sw.vary = "parameters.lambda";
    sw.values = {"0", "0.05", "0.1", "0.15", "0.2"};
    const std::string d1 = "/tmp/tdho_acceptance/sweep1", d8 = "/tmp/tdho_acceptance/sweep8";
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d8);
    run_sweep(sw, d1, 1, true);
    run_sweep(sw, d8, 8, true);
    const bool same = slurp(d1 + "/aggregate.csv") == slurp(d8 + "/aggregate.csv");
    s.check(same && !slurp(d1 + "/aggregate.csv").empty(),
            "sweep aggregate byte-identical for 1 and 8 workers");
  }

  {
    ProfileSpec spec = ProfileSpec::from_family(GaussianFamily{1.0, 1.0},
                                                Grid::centered(1, 1024, 60.0), 0.0, 1, 0.0, 1.0);
    const SigmaModel osc = SigmaModel::constant(0.05);
    const Grid g = Grid::centered(1, 1024, 60.0);
    const Field u0 = oracles::free_gaussian_1d(g, 1.0, 0.6, 1.0);
    auto run = [&](double dt) {
      SolverSettings es;
      es.dt_initial = dt;
      es.dt_control = SolverSettings::DtControl::Fixed;
      return evolve(u0, 1.0, 3.0, es, osc, spec, {3.0}).fields.back();
    };
    const Field a = run(0.02), b = run(0.01), c = run(0.005);
    const double ratio = l2_distance(a, b) / l2_distance(b, c);
    s.check(std::abs(ratio - 4.0) <= 0.6,
            "Strang self-convergence ratio " + fmt(ratio) + " within 4 +- 15%");
  }
  s.end(now_seconds() - t0);
}

}  // namespace

int main() {
  Suite s;
  criterion_1(s);
  criterion_2(s);
  criterion_3(s);
  criterion_4(s);
  criterion_5(s);
  criterion_6(s);
  criterion_7(s);
  criterion_8(s);
  std::printf("acceptance: %d of 8 criteria with failing checks (total %.0f s)\n",
              s.criteria_failed, now_seconds());
  return s.criteria_failed > 0 ? 1 : 0;
}

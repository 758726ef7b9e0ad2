#include "hemirobin/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hemirobin/boundary.hpp"
#include "hemirobin/cluster.hpp"
#include "hemirobin/density.hpp"
#include "hemirobin/galerkin.hpp"
#include "hemirobin/harmonics.hpp"
#include "hemirobin/numerics.hpp"
#include "hemirobin/sl1d.hpp"
#include "json.hpp"

namespace hemirobin::verify {

namespace {

constexpr double kPi = std::numbers::pi;
using num::cplx;
using boundary::BoundarySymbol;

BoundarySymbol make_sigma(std::initializer_list<std::pair<int, cplx>> coeffs) {
  int d = 0;
  for (auto& [k, c] : coeffs) d = std::max(d, std::abs(k));
  std::vector<cplx> v(2 * d + 1, cplx(0));
  for (auto& [k, c] : coeffs) {
    v[k + d] = c;
    v[-k + d] = std::conj(c);
  }
  return BoundarySymbol(d, v);
}

const BoundarySymbol kOne = make_sigma({{0, 1.0}});
const BoundarySymbol kOnePlusCos2 = make_sigma({{0, 1.0}, {2, 0.5}});

density::TestFunction bump_poly(std::vector<double> coeffs, double radius) {
  return density::TestFunction{density::TestFunction::Kind::bump_polynomial, std::move(coeffs), radius};
}

struct Tracker {
  double worst_ratio = 0;  // max over sub-checks of measured/bound
  double measured = 0;
  double bound = 1;
  bool pass = true;
  std::ostringstream detail;

  // record a sub-check of the form |measured| <= bound
  void le(const std::string& what, double m, double b) {
    bool ok = m <= b;
    pass = pass && ok;
    double ratio = (b > 0) ? m / b : (m == 0 ? 0 : 1e300);
    if (ratio >= worst_ratio) {
      worst_ratio = ratio;
      measured = m;
      bound = b;
    }
    detail << what << "=" << m << (ok ? " <= " : " !<= ") << b << "; ";
  }
  void expect(const std::string& what, bool ok) {
    pass = pass && ok;
    detail << what << (ok ? " ok; " : " FAILED; ");
  }
};

CriterionResult finish(int id, const std::string& name, Tracker& t) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.measured = t.measured;
  r.bound = t.bound;
  r.pass = t.pass;
  r.detail = t.detail.str();
  return r;
}

// --------------------------------------------------------------- criterion 1
CriterionResult c1_amplitude_consistency() {
  Tracker t;
  t.le("max_rel_dev(A_gamma, A_recurrence; ell<=200)", amplitude_consistency_worst(200, 0.0), 1e-9);
  return finish(1, "amplitude-consistency", t);
}

// --------------------------------------------------------------- criterion 2
CriterionResult c2_amplitude_ladder() {
  Tracker t;
  std::vector<int> ladder{100, 200, 400, 800};
  double prev_r = 0, prev_d = 0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    int ell = ladder[i];
    harm::AmplitudeDiagnostics d = harm::amplitude_diagnostics(ell);
    double r = d.sup_a2 / std::sqrt(double(ell));
    double dv = d.l1_deviation / std::pow(double(ell), 2.0 / 3.0);
    t.expect("sup_band(" + std::to_string(ell) + ")", r >= 1.05 && r <= 1.20);
    t.le("l1_dev/l^(2/3)(" + std::to_string(ell) + ")", dv, 0.5);
    if (i > 0) {
      t.le("sup growth", r, prev_r * 1.01);
      t.le("l1 growth", dv, prev_d * 1.05);
    }
    prev_r = r;
    prev_d = dv;
    if (ell == 800) {
      double ratio = d.sum_a2 / (2.0 * ell);
      t.expect("sumA2/(2l)@800 in [0.97,1.03]", ratio >= 0.97 && ratio <= 1.03);
    }
  }
  return finish(2, "amplitude-ladder", t);
}

// --------------------------------------------------------------- criterion 3
CriterionResult c3_trace_law() {
  Tracker t;
  double ratio = cluster::cluster_trace(kOne, 400) / 401.0;
  t.expect("TrV_400[1]/401 in [1.93,2.02]", ratio >= 1.93 && ratio <= 2.02);
  std::vector<BoundarySymbol> samples{
      kOne, kOnePlusCos2, make_sigma({{1, 1.0}}), make_sigma({{0, -0.7}}),
      make_sigma({{0, 0.3}, {2, cplx(0.0, -0.05)}, {4, -0.1}})};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int ell = 37;
    double closed = cluster::cluster_trace(samples[i], ell);
    double direct = cluster::build_cluster_matrix(samples[i], ell).matrix.trace();
    t.le("trace match sigma#" + std::to_string(i), std::abs(direct - closed),
         1e-9 * std::max(1.0, std::abs(closed)));
  }
  return finish(3, "trace-law", t);
}

// --------------------------------------------------------------- criterion 4
CriterionResult c4_density_convergence() {
  Tracker t;
  std::vector<int> ladder{50, 100, 200, 400};
  for (int p : {1, 2}) {
    std::vector<double> coeffs(p + 1, 0.0);
    coeffs[p] = 1.0;
    density::TestFunction f = bump_poly(coeffs, 20.0);
    density::DensityReport rep = density::empirical_vs_limit(kOnePlusCos2, f, ladder);
    for (std::size_t i = 1; i < rep.deviation.size(); ++i)
      t.le("monotone dev f=x^" + std::to_string(p) + " step " + std::to_string(i),
           rep.deviation[i], rep.deviation[i - 1]);
    t.le("rel dev at 400, f=x^" + std::to_string(p),
         rep.deviation.back() / std::abs(rep.limit.back()), 0.05);
  }
  return finish(4, "cluster-density-convergence", t);
}

// --------------------------------------------------------------- criterion 5
CriterionResult c5_constant_density() {
  Tracker t;
  for (double c : {1.0, 2.5}) {
    BoundarySymbol s = make_sigma({{0, c}});
    double worst = 0;
    for (int i = 0; i <= 150; ++i) {
      double y = 4 * c / kPi + 0.01 + (10.0 - 4 * c / kPi - 0.01) * i / 150.0;
      double u = 4 * c / (kPi * y);
      double closed = 16 * c * c / (kPi * kPi * y * y * y) / std::sqrt(1 - u * u);
      worst = std::max(worst, std::abs(density::rho_density(s, y) - closed) / closed);
    }
    t.le("rho closed-form rel dev (sigma=" + std::to_string(c) + ")", worst, 1e-10);
    for (double y : {-5.0, -1.0, -0.1})
      t.expect("rho(y<0)=0", density::rho_density(s, y) == 0.0);
  }
  return finish(5, "constant-sigma-density", t);
}

// --------------------------------------------------------------- criterion 6
CriterionResult c6_weinstein() {
  Tracker t;
  density::TestFunction fx{density::TestFunction::Kind::polynomial, {0.0, 1.0}, 1.0};
  std::vector<std::pair<BoundarySymbol, density::TestFunction>> pairs{
      {kOne, fx},
      {kOnePlusCos2, fx},
      {kOnePlusCos2, bump_poly({0.0, 1.0, 0.4}, 8.0)},
      {make_sigma({{1, 1.0}}), bump_poly({0.0, 1.0}, 4.0)},
      {make_sigma({{0, 0.3}, {4, 0.4}}), bump_poly({0.0, 0.0, 1.0}, 6.0)}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    density::WeinsteinComparison w = density::weinstein_comparison(pairs[i].first, pairs[i].second);
    t.le("substitution check #" + std::to_string(i), w.substitution_check, 1e-10);
  }
  density::WeinsteinComparison w1 = density::weinstein_comparison(kOnePlusCos2, fx);
  t.le("naive = correct/2 (f=x)", std::abs(w1.naive - 0.5 * w1.correct),
       1e-10 * std::max(1.0, std::abs(w1.correct)));
  return finish(6, "weinstein-factor-2", t);
}

// --------------------------------------------------------------- criterion 7
CriterionResult c7_odd_construction() {
  Tracker t;
  struct Case {
    BoundarySymbol sigma;
    int d;
  };
  std::vector<Case> cases{{make_sigma({{1, 1.0}}), 1}, {make_sigma({{1, 0.5}, {3, 0.5}}), 3}};
  for (const Case& c : cases) {
    for (int ell : {6, 10, 20}) {
      galerkin::OddConstruction oc = galerkin::odd_eigenspace_construction(c.sigma, ell);
      t.expect("dimension=" + std::to_string(ell - c.d) + " (d=" + std::to_string(c.d) +
                   ",l=" + std::to_string(ell) + ")",
               oc.dimension == ell - c.d);
      double worst = 0;
      for (double r : oc.residuals) worst = std::max(worst, r);
      t.le("residuals (d=" + std::to_string(c.d) + ",l=" + std::to_string(ell) + ")", worst,
           1e-10 * oc.scale);
      std::vector<double> ev = galerkin::robin_spectrum(c.sigma, 2 * ell + 8);
      int at = 0;
      for (double v : ev)
        if (std::abs(v - double(ell) * (ell + 1)) <= 1e-6) ++at;
      t.expect("galerkin multiplicity >= " + std::to_string(ell - c.d), at >= ell - c.d);
    }
  }
  return finish(7, "odd-sigma-construction", t);
}

// --------------------------------------------------------------- criterion 8
CriterionResult c8_sandwich() {
  Tracker t;
  const double eps = 0.2;
  std::vector<double> e24 = galerkin::robin_spectrum(kOnePlusCos2, 24);
  std::vector<double> e48 = galerkin::robin_spectrum(kOnePlusCos2, 48);
  auto window = [](const std::vector<double>& ev, int ell) {
    std::vector<double> out;
    for (double v : ev) {
      int lstar = std::max(0, int(std::floor(0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * v))))));
      double d0 = std::abs(v - double(lstar) * (lstar + 1));
      double d1 = std::abs(v - double(lstar + 1) * (lstar + 2));
      if (d1 < d0) ++lstar;
      if (lstar == ell && std::abs(v - double(ell) * (ell + 1)) < 10.0 * std::sqrt(ell + 1.0))
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int ell = 4; ell <= 8; ++ell) {
    std::vector<double> w24 = window(e24, ell);
    std::vector<double> w48 = window(e48, ell);
    t.expect("window count l=" + std::to_string(ell), int(w24.size()) == ell + 1 && w48.size() == w24.size());
    if (w24.size() != w48.size() || int(w24.size()) != ell + 1) continue;
    double trunc = 0;
    for (std::size_t k = 0; k < w24.size(); ++k) trunc = std::max(trunc, std::abs(w24[k] - w48[k]));
    const double delta = 10.0 * trunc;
    cluster::SandwichSpectra sw = cluster::sandwich_spectra(kOnePlusCos2, ell, eps);
    double worst = -1e300;  // max violation; negative means sandwich holds with margin
    for (std::size_t k = 0; k < w24.size(); ++k) {
      double gap = w24[k] - double(ell) * (ell + 1);
      worst = std::max(worst, sw.lower.gaps[k] - delta - gap);
      worst = std::max(worst, gap - sw.upper.gaps[k] - delta);
    }
    t.le("sandwich violation l=" + std::to_string(ell) + " (delta=" + std::to_string(delta) + ")",
         worst, 0.0);
  }
  return finish(8, "gap-sandwich", t);
}

// --------------------------------------------------------------- criterion 9
CriterionResult c9_window_counts() {
  Tracker t;
  std::vector<double> ev = galerkin::robin_spectrum(kOne, 48);
  galerkin::WindowReport rep = galerkin::cluster_window_counts(ev, 10.0, 0, 20, 500.0);
  for (const galerkin::WindowCount& wc : rep.counts) {
    if (wc.ell > 20) continue;
    t.expect("window l=" + std::to_string(wc.ell) + " has l+1 perturbed",
             wc.total == wc.ell + 1 && wc.moved == wc.ell + 1);
  }
  t.expect("no stragglers below cutoff", rep.stragglers.empty());
  return finish(9, "cluster-counting", t);
}

// -------------------------------------------------------------- criterion 10
CriterionResult c10_sl1d() {
  Tracker t;
  t.le("|robin gap(n=50) - 2|", std::abs(sl1d::robin_eigenvalue(1.0, 50) - kPi * kPi * 2500.0 - 2.0),
       2e-2);
  t.le("|step gap(n=100) - 1|",
       std::abs(sl1d::step_eigenvalue(1.0, 0.1, 100) - kPi * kPi * 10000.0 - 1.0), 5e-2);
  double lam = sl1d::robin_eigenvalue(1.0, 10);
  double prev = 1e300;
  for (double eps : {0.1, 0.05, 0.025}) {
    double gap = std::abs(sl1d::step_eigenvalue(1.0, eps, 10) - lam);
    t.le("eps-ladder shrink (eps=" + std::to_string(eps) + ")", gap, prev);
    prev = gap;
  }
  return finish(10, "sl1d-factor-2", t);
}

// -------------------------------------------------------------- criterion 11
CriterionResult c11_model_traces(unsigned seed) {
  Tracker t;
  cluster::SmoothWindow w{1.0};
  for (int k : {1, 2, 3}) {
    cluster::ModelTrace mt = cluster::model_operator_trace(w, kOnePlusCos2, 300, k);
    t.le("model trace k=" + std::to_string(k), std::abs(mt.numeric - mt.limit),
         0.05 * std::abs(mt.limit));
  }
  BoundarySymbol cos2 = make_sigma({{2, 0.5}});
  double prev = 1e300;
  for (int ell : {100, 200, 400, 800}) {
    double v = cluster::commutator_hs_norm(w, cos2, ell);
    t.le("commutator bounded l=" + std::to_string(ell), v, std::min(1.0, prev * 1.05));
    prev = v;
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rand_herm = [&](std::size_t n) {
    num::HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        m.set(i, j, i == j ? cplx(u(rng), 0) : cplx(u(rng), u(rng)));
    return m;
  };
  std::vector<double> f2{0.0, 0.0, 1.0};
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    num::HermitianMatrix a = rand_herm(6), b = rand_herm(6);
    if (!num::trace_difference_bound_check(a, b, f2, -2.0, 2.0).holds) ++failures;
  }
  t.le("trace-bound failures over 1000 trials", double(failures), 0.0);
  return finish(11, "model-operator-traces", t);
}

// -------------------------------------------------------------- criterion 12
CriterionResult c12_hygiene(unsigned seed) {
  Tracker t;
  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 24;
  num::HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      m.set(i, j, i == j ? cplx(u(rng), 0) : cplx(u(rng), u(rng)));
  num::EigenResult e = num::hermitian_eigen(m);
  double scale = std::max(1.0, m.max_abs() * double(n));
  double worst_res = 0, worst_uni = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * e.vector(j, k);
      s -= e.eigenvalues[k] * e.vector(i, k);
      r2 += std::norm(s);
    }
    worst_res = std::max(worst_res, std::sqrt(r2));
    for (std::size_t l = 0; l < n; ++l) {
      cplx s = 0;
      for (std::size_t i = 0; i < n; ++i) s += std::conj(e.vector(i, k)) * e.vector(i, l);
      worst_uni = std::max(worst_uni, std::abs(s - (k == l ? cplx(1) : cplx(0))));
    }
  }
  t.le("eigen residual", worst_res, 1e-10 * scale);
  t.le("eigenvector unitarity", worst_uni, 1e-10);

  // Gauss-Legendre exactness
  double worst_gl = 0;
  for (int nn = 2; nn <= 20; ++nn) {
    num::QuadratureRule q = num::gauss_legendre(nn);
    for (int k = 0; k <= 2 * nn - 1; ++k) {
      double acc = 0;
      for (int i = 0; i < nn; ++i) acc += q.weights[i] * std::pow(q.nodes[i], k);
      double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      worst_gl = std::max(worst_gl, std::abs(acc - exact));
    }
  }
  t.le("gauss-legendre exactness", worst_gl, 1e-12);

  // determinism: identical inputs give byte-identical CSV
  std::vector<cluster::GapSpectrum> g1{cluster::gap_spectrum(kOnePlusCos2, 30)};
  std::vector<cluster::GapSpectrum> g2{cluster::gap_spectrum(kOnePlusCos2, 30)};
  t.expect("deterministic CSV", cluster::gap_spectrum_csv(g1) == cluster::gap_spectrum_csv(g2));

  // round trip of the symbol representation at degree 64
  {
    std::mt19937 rng2(seed + 2);
    std::vector<cplx> c(129);
    for (int k = 0; k <= 64; ++k) {
      cplx v = k == 0 ? cplx(u(rng2), 0) : cplx(u(rng2), u(rng2)) / double(1 + k);
      c[64 + k] = v;
      c[64 - k] = std::conj(v);
    }
    BoundarySymbol s(64, c);
    const int ns = 4 * 64 + 4;
    std::vector<double> vals(ns);
    for (int j = 0; j < ns; ++j) vals[j] = boundary::evaluate(s, -kPi + 2 * kPi * j / ns);
    BoundarySymbol back = boundary::from_samples(vals, 64);
    double worst = 0;
    for (int k = -64; k <= 64; ++k) worst = std::max(worst, std::abs(back.coeff(k) - s.coeff(k)));
    t.le("symbol round trip (D=64)", worst, 1e-12);
  }

  // Hermiticity of a generalized solve residual on an SPD pair
  {
    num::HermitianMatrix a(8), g(8);
    std::mt19937 rng3(seed + 3);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = i; j < 8; ++j) {
        a.set(i, j, i == j ? cplx(u(rng3), 0) : cplx(u(rng3), u(rng3)));
        g.set(i, j, i == j ? cplx(9.0 + u(rng3), 0) : cplx(u(rng3), u(rng3)));
      }
    num::GeneralizedEigenResult ge = num::generalized_eigen(a, g, true);
    double na = a.frobenius_norm(), ng = g.frobenius_norm();
    double worst = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      double r2 = 0, vn = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < 8; ++j)
          s += (a(i, j) - ge.eigenvalues[k] * g(i, j)) * ge.vectors[j * 8 + k];
        r2 += std::norm(s);
        vn += std::norm(ge.vectors[i * 8 + k]);
      }
      worst = std::max(worst, std::sqrt(r2) / std::max(1.0, std::sqrt(vn)));
    }
    t.le("generalized residual", worst, 1e-8 * (na + ng));
  }
  return finish(12, "solver-hygiene", t);
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& opts,
                                     const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> results;
  auto push = [&](auto&& make) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = make();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(r);
    results.push_back(std::move(r));
  };
  push([] { return c1_amplitude_consistency(); });
  push([] { return c2_amplitude_ladder(); });
  push([] { return c3_trace_law(); });
  push([] { return c4_density_convergence(); });
  push([] { return c5_constant_density(); });
  push([] { return c6_weinstein(); });
  push([] { return c7_odd_construction(); });
  push([] { return c8_sandwich(); });
  push([] { return c9_window_counts(); });
  push([] { return c10_sl1d(); });
  push([&] { return c11_model_traces(opts.seed); });
  push([&] { return c12_hygiene(opts.seed); });
  return results;
}

double amplitude_consistency_worst(int ell_max, double perturbation) {
  double worst = 0;
  for (int ell = 0; ell <= ell_max; ++ell) {
    harm::TraceAmplitudes ta = harm::trace_amplitudes(ell);
    for (int m = -ell; m <= ell; ++m) {
      if ((ell - m) % 2 != 0) continue;
      double rec = std::abs(harm::norm_legendre_at(ell, m, 0.0));
      worst = std::max(worst, std::abs(ta.at_a(m) * (1.0 + perturbation) - rec) / rec);
    }
  }
  return worst;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

std::string verdict_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CriterionResult& r : results)
    arr.push_back({{"criterion", r.id},
                   {"name", r.name},
                   {"measured", r.measured},
                   {"bound", r.bound},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
  return arr.dump(2);
}

}  // namespace hemirobin::verify

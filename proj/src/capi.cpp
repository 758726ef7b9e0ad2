#include "hemirobin/hemirobin.h"

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>

#include "hemirobin/boundary.hpp"
#include "hemirobin/cluster.hpp"
#include "hemirobin/density.hpp"
#include "hemirobin/galerkin.hpp"
#include "hemirobin/sl1d.hpp"
#include "hemirobin/verify.hpp"

using namespace hemirobin;

struct hr_sigma {
  boundary::BoundarySymbol symbol;
};

struct hr_testfn {
  density::TestFunction f;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
hr_status wrap(Fn&& fn) {
  try {
    fn();
    return HR_OK;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return HR_EDOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HR_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HR_ENUMERIC;
  }
}

hr_status require(bool cond, const char* msg) {
  if (cond) return HR_OK;
  g_last_error = msg;
  return HR_EINVAL;
}

}  // namespace

extern "C" {

const char* hr_version(void) { return "1.0.0"; }

const char* hr_last_error(void) { return g_last_error.c_str(); }

hr_status hr_sigma_from_json(const char* json, hr_sigma** out) {
  if (hr_status st = require(json && out, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = new hr_sigma{boundary::from_json(json)}; });
}

hr_status hr_sigma_from_coeffs(int degree, const double* re, const double* im, hr_sigma** out) {
  if (hr_status st = require(re && out && degree >= 0, "null argument or negative degree"); st != HR_OK)
    return st;
  return wrap([&] {
    std::vector<num::cplx> c(2 * degree + 1);
    for (int k = 0; k < 2 * degree + 1; ++k) c[k] = num::cplx(re[k], im ? im[k] : 0.0);
    *out = new hr_sigma{boundary::BoundarySymbol(degree, c)};
  });
}

void hr_sigma_free(hr_sigma* s) { delete s; }

int hr_sigma_degree(const hr_sigma* s) { return s ? s->symbol.degree() : -1; }

hr_status hr_sigma_evaluate(const hr_sigma* s, double phi, double* out) {
  if (hr_status st = require(s && out, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = boundary::evaluate(s->symbol, phi); });
}

hr_status hr_testfn_create(const double* coeffs, size_t ncoeffs, double bump_radius, hr_testfn** out) {
  if (hr_status st = require(coeffs && out && ncoeffs > 0, "null argument"); st != HR_OK) return st;
  return wrap([&] {
    density::TestFunction f;
    f.coeffs.assign(coeffs, coeffs + ncoeffs);
    if (bump_radius > 0) {
      f.kind = density::TestFunction::Kind::bump_polynomial;
      f.radius = bump_radius;
    } else {
      f.kind = density::TestFunction::Kind::polynomial;
    }
    f.validate();
    *out = new hr_testfn{std::move(f)};
  });
}

void hr_testfn_free(hr_testfn* f) { delete f; }

hr_status hr_gap_spectrum(const hr_sigma* s, int ell, double* gaps) {
  if (hr_status st = require(s && gaps && ell >= 0, "null argument or negative ell"); st != HR_OK)
    return st;
  return wrap([&] {
    cluster::GapSpectrum g = cluster::gap_spectrum(s->symbol, ell);
    std::memcpy(gaps, g.gaps.data(), g.gaps.size() * sizeof(double));
  });
}

hr_status hr_cluster_trace(const hr_sigma* s, int ell, double* out) {
  if (hr_status st = require(s && out && ell >= 0, "null argument or negative ell"); st != HR_OK)
    return st;
  return wrap([&] { *out = cluster::cluster_trace(s->symbol, ell); });
}

hr_status hr_sandwich_spectra(const hr_sigma* s, int ell, double epsilon, double* lower, double* upper) {
  if (hr_status st = require(s && lower && upper && ell >= 0, "null argument or negative ell");
      st != HR_OK)
    return st;
  return wrap([&] {
    cluster::SandwichSpectra sw = cluster::sandwich_spectra(s->symbol, ell, epsilon);
    std::memcpy(lower, sw.lower.gaps.data(), sw.lower.gaps.size() * sizeof(double));
    std::memcpy(upper, sw.upper.gaps.data(), sw.upper.gaps.size() * sizeof(double));
  });
}

hr_status hr_limit_functional(const hr_sigma* s, const hr_testfn* f, double* out) {
  if (hr_status st = require(s && f && out, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = density::limit_functional(s->symbol, f->f); });
}

hr_status hr_empirical_functional(const hr_sigma* s, const hr_testfn* f, int ell, double* out) {
  if (hr_status st = require(s && f && out && ell >= 0, "null argument or negative ell"); st != HR_OK)
    return st;
  return wrap([&] {
    cluster::GapSpectrum g = cluster::gap_spectrum(s->symbol, ell);
    double acc = 0;
    for (double v : g.gaps) acc += f->f(v);
    *out = acc / double(ell + 1);
  });
}

hr_status hr_rho_density(const hr_sigma* s, double y, double* out) {
  if (hr_status st = require(s && out, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = density::rho_density(s->symbol, y); });
}

hr_status hr_weinstein(const hr_sigma* s, const hr_testfn* f, double out[3]) {
  if (hr_status st = require(s && f && out, "null argument"); st != HR_OK) return st;
  return wrap([&] {
    density::WeinsteinComparison w = density::weinstein_comparison(s->symbol, f->f);
    out[0] = w.naive;
    out[1] = w.correct;
    out[2] = w.substitution_check;
  });
}

hr_status hr_geodesic_average(const hr_sigma* s, double theta, double phi, double eps, double* out) {
  if (hr_status st = require(s && out, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = density::geodesic_average(theta, phi, s->symbol, eps); });
}

hr_status hr_robin_spectrum(const hr_sigma* s, int lmax, double** evals, size_t* count) {
  if (hr_status st = require(s && evals && count, "null argument"); st != HR_OK) return st;
  return wrap([&] {
    std::vector<double> ev = galerkin::robin_spectrum(s->symbol, lmax);
    double* p = static_cast<double*>(::operator new(ev.size() * sizeof(double)));
    std::memcpy(p, ev.data(), ev.size() * sizeof(double));
    *evals = p;
    *count = ev.size();
  });
}

void hr_free_doubles(double* p) { ::operator delete(p); }

hr_status hr_window_counts(const double* evals, size_t count, double window_c, int ell_lo, int ell_hi,
                           double cutoff, int* totals, size_t* stragglers) {
  if (hr_status st = require(evals && totals && stragglers && ell_lo >= 0 && ell_hi >= ell_lo,
                             "null argument or bad ell range");
      st != HR_OK)
    return st;
  return wrap([&] {
    std::vector<double> ev(evals, evals + count);
    galerkin::WindowReport rep = galerkin::cluster_window_counts(ev, window_c, ell_lo, ell_hi, cutoff);
    for (const galerkin::WindowCount& wc : rep.counts)
      if (wc.ell >= ell_lo && wc.ell <= ell_hi) totals[wc.ell - ell_lo] = wc.total;
    *stragglers = rep.stragglers.size();
  });
}

hr_status hr_odd_construction(const hr_sigma* s, int ell, int* dimension, double* max_residual,
                              double* scale) {
  if (hr_status st = require(s && dimension && max_residual, "null argument"); st != HR_OK) return st;
  return wrap([&] {
    galerkin::OddConstruction oc = galerkin::odd_eigenspace_construction(s->symbol, ell);
    *dimension = oc.dimension;
    double worst = 0;
    for (double r : oc.residuals) worst = std::max(worst, r);
    *max_residual = worst;
    if (scale) *scale = oc.scale;
  });
}

hr_status hr_sl_robin_eigenvalue(double sigma, int n, double* out) {
  if (hr_status st = require(out != nullptr, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = sl1d::robin_eigenvalue(sigma, n); });
}

hr_status hr_sl_step_eigenvalue(double sigma, double eps, int n, double* out) {
  if (hr_status st = require(out != nullptr, "null argument"); st != HR_OK) return st;
  return wrap([&] { *out = sl1d::step_eigenvalue(sigma, eps, n); });
}

hr_status hr_verify_run(unsigned seed, int print_progress, char** report_json, int* all_pass) {
  if (hr_status st = require(report_json && all_pass, "null argument"); st != HR_OK) return st;
  return wrap([&] {
    verify::Options opts;
    opts.seed = seed;
    auto progress = [&](const verify::CriterionResult& r) {
      if (print_progress) {
        std::printf("%s criterion %2d %-28s measured=%.6g bound=%.6g (%.1fs)\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured, r.bound, r.seconds);
        std::fflush(stdout);
      }
    };
    std::vector<verify::CriterionResult> results = verify::run_all(opts, progress);
    std::string json = verify::verdict_json(results);
    char* p = static_cast<char*>(::operator new(json.size() + 1));
    std::memcpy(p, json.c_str(), json.size() + 1);
    *report_json = p;
    *all_pass = verify::all_pass(results) ? 1 : 0;
  });
}

void hr_free_string(char* p) { ::operator delete(p); }

}  // extern "C"

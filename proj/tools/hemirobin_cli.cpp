// hemirobin command line tool. All numerics go through the shared-library C
// API; this translation unit only parses flags, schedules jobs, and formats
// CSV/JSON output (17 significant digits, deterministic ordering).

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hemirobin/hemirobin.h"
#include "json.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int status_exit(hr_status st) {
  if (st == HR_OK) return 0;
  return st == HR_ENUMERIC ? kExitNumeric : kExitConfig;
}

[[noreturn]] void fail(hr_status st, const std::string& context) {
  std::cerr << "error: " << context << ": " << hr_last_error() << "\n";
  std::exit(status_exit(st));
}

std::string slurp_or_inline(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) {
    std::cerr << "error: cannot open sigma file '" << arg << "'\n";
    std::exit(kExitConfig);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SigmaHandle {
  hr_sigma* ptr = nullptr;
  std::string json;
  ~SigmaHandle() { hr_sigma_free(ptr); }
};

SigmaHandle load_sigma(const std::string& arg) {
  SigmaHandle h;
  h.json = slurp_or_inline(arg);
  if (hr_status st = hr_sigma_from_json(h.json.c_str(), &h.ptr); st != HR_OK)
    fail(st, "--sigma");
  return h;
}

struct TestFnHandle {
  hr_testfn* ptr = nullptr;
  ~TestFnHandle() { hr_testfn_free(ptr); }
};

// Accepts "x", "x^P", "x^P*bump(R)", "x*bump(R)", or JSON
// {"coeffs":[c0,c1,...], "radius":R} (radius 0 = plain polynomial).
TestFnHandle parse_testfn(const std::string& spec) {
  std::vector<double> coeffs;
  double radius = 0.0;
  if (!spec.empty() && spec.front() == '{') {
    auto j = nlohmann::json::parse(spec, nullptr, false);
    if (j.is_discarded() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
      std::cerr << "error: --f JSON needs an array field 'coeffs'\n";
      std::exit(kExitConfig);
    }
    for (const auto& c : j["coeffs"]) coeffs.push_back(double(c));
    if (j.contains("radius")) radius = double(j["radius"]);
  } else {
    int power = 1;
    std::size_t pos = 0;
    if (spec.rfind("x", 0) != 0) {
      std::cerr << "error: --f must be 'x', 'x^P', 'x^P*bump(R)' or JSON\n";
      std::exit(kExitConfig);
    }
    pos = 1;
    if (pos < spec.size() && spec[pos] == '^') {
      std::size_t end;
      power = std::stoi(spec.substr(pos + 1), &end);
      pos += 1 + end;
    }
    if (pos < spec.size()) {
      if (spec.compare(pos, 6, "*bump(") != 0 || spec.back() != ')') {
        std::cerr << "error: unrecognized --f spec '" << spec << "'\n";
        std::exit(kExitConfig);
      }
      radius = std::stod(spec.substr(pos + 6, spec.size() - pos - 7));
    }
    coeffs.assign(power + 1, 0.0);
    coeffs[power] = 1.0;
  }
  TestFnHandle h;
  if (hr_status st = hr_testfn_create(coeffs.data(), coeffs.size(), radius, &h.ptr); st != HR_OK)
    fail(st, "--f");
  return h;
}

std::vector<int> parse_ladder(const std::string& spec) {
  // "a:b:step" inclusive
  int a = 0, b = 0, step = 0;
  if (std::sscanf(spec.c_str(), "%d:%d:%d", &a, &b, &step) != 3 || step <= 0 || b < a) {
    std::cerr << "error: --ladder must be a:b:step with step > 0\n";
    std::exit(kExitConfig);
  }
  std::vector<int> out;
  for (int v = a; v <= b; v += step) out.push_back(v);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path.string() << "'\n";
    std::exit(kExitConfig);
  }
  out << content;
}

// runs fn(i) for i in [0, n) on up to `jobs` threads; exceptions surface as
// numeric failures after joining
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        if (failed) return;
        try {
          fn(i);
        } catch (...) {
          failed = true;
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (failed) {
    std::cerr << "error: a parallel job failed\n";
    std::exit(kExitNumeric);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hemisphere Robin Laplacian eigenvalue clusters"};
  app.require_subcommand(1);

  std::string sigma_arg, f_arg = "x", ladder_arg, out_dir = ".";
  int ell = -1, lmax = 16, jobs = 1, nmax = 40;
  unsigned seed = 20240817;
  double epsilon = 0.1, ymin = 0.25, ymax = 10.0;
  int ny = 200;
  double window_c = 10.0, cutoff = -1.0;
  int win_lo = 0, win_hi = -1;
  double theta = 1.0, phi = 0.0;

  auto add_common = [&](CLI::App* cmd, bool needs_sigma) {
    if (needs_sigma)
      cmd->add_option("--sigma", sigma_arg, "sigma as inline JSON or a file path")->required();
    cmd->add_option("--out", out_dir, "output directory (default: current)");
    cmd->add_option("--jobs", jobs, "parallel ell jobs");
  };

  CLI::App* spec_cmd = app.add_subcommand("cluster-spectrum", "gap spectra of the cluster operator");
  add_common(spec_cmd, true);
  spec_cmd->add_option("--ell", ell, "single cluster index");
  spec_cmd->add_option("--ladder", ladder_arg, "ell ladder a:b:step");

  CLI::App* den_cmd = app.add_subcommand("density", "empirical cluster functionals vs the limit");
  add_common(den_cmd, true);
  den_cmd->add_option("--f", f_arg, "test function: x, x^P, x^P*bump(R), or JSON");
  den_cmd->add_option("--ladder", ladder_arg, "ell ladder a:b:step")->required();

  CLI::App* rho_cmd = app.add_subcommand("rho", "limiting cluster density curve");
  add_common(rho_cmd, true);
  rho_cmd->add_option("--ymin", ymin, "lowest y");
  rho_cmd->add_option("--ymax", ymax, "highest y");
  rho_cmd->add_option("--ny", ny, "number of samples");

  CLI::App* wein_cmd = app.add_subcommand("weinstein", "naive geodesic-average transplant vs the true limit");
  add_common(wein_cmd, true);
  wein_cmd->add_option("--f", f_arg, "test function spec");

  CLI::App* gal_cmd = app.add_subcommand("galerkin", "truncated Robin spectrum and cluster windows");
  add_common(gal_cmd, true);
  gal_cmd->add_option("--lmax", lmax, "truncation degree");
  gal_cmd->add_option("--window-c", window_c, "cluster window constant C");
  gal_cmd->add_option("--window-lo", win_lo, "lowest window ell");
  gal_cmd->add_option("--window-hi", win_hi, "highest window ell (default lmax/2)");
  gal_cmd->add_option("--cutoff", cutoff, "trusted cutoff (default (lmax/2)^2)");

  CLI::App* sl_cmd = app.add_subcommand("sl1d", "one-dimensional Robin and step-potential companion");
  add_common(sl_cmd, false);
  double sl_sigma = 1.0;
  sl_cmd->add_option("--sigma-const", sl_sigma, "constant sigma");
  sl_cmd->add_option("--epsilon", epsilon, "step layer width");
  sl_cmd->add_option("--nmax", nmax, "number of modes");

  CLI::App* odd_cmd = app.add_subcommand("odd-construct", "constructive eigenfunctions for odd sigma");
  add_common(odd_cmd, true);
  odd_cmd->add_option("--ell", ell, "cluster index")->required();

  CLI::App* geo_cmd = app.add_subcommand("geodesic", "average of the concentrated potential over a geodesic");
  add_common(geo_cmd, true);
  geo_cmd->add_option("--theta", theta, "incidence angle");
  geo_cmd->add_option("--phi", phi, "azimuth of the plane normal");
  geo_cmd->add_option("--epsilon", epsilon, "strip width");

  CLI::App* ver_cmd = app.add_subcommand("verify", "run the acceptance suite");
  add_common(ver_cmd, false);
  ver_cmd->add_option("--seed", seed, "seed for randomized trials");

  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);

  if (spec_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    std::vector<int> ells = ladder_arg.empty() ? std::vector<int>{} : parse_ladder(ladder_arg);
    if (ell >= 0) ells.insert(ells.begin(), ell);
    if (ells.empty()) {
      std::cerr << "error: need --ell or --ladder\n";
      return kExitConfig;
    }
    std::vector<std::vector<double>> gaps(ells.size());
    std::atomic<int> bad{0};
    parallel_for(int(ells.size()), jobs, [&](int i) {
      gaps[i].resize(ells[i] + 1);
      if (hr_gap_spectrum(s.ptr, ells[i], gaps[i].data()) != HR_OK) bad = 1;
    });
    if (bad) fail(HR_ENUMERIC, "cluster-spectrum");
    std::string csv = "ell,k,gap\n";
    for (std::size_t i = 0; i < ells.size(); ++i)
      for (std::size_t k = 0; k < gaps[i].size(); ++k)
        csv += std::to_string(ells[i]) + "," + std::to_string(k + 1) + "," + fmt(gaps[i][k]) + "\n";
    write_file(out / "gaps.csv", csv);
    std::cout << "wrote " << (out / "gaps.csv").string() << "\n";
    return 0;
  }

  if (den_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    TestFnHandle f = parse_testfn(f_arg);
    std::vector<int> ells = parse_ladder(ladder_arg);
    double limit = 0;
    if (hr_status st = hr_limit_functional(s.ptr, f.ptr, &limit); st != HR_OK) fail(st, "limit");
    std::vector<double> emp(ells.size());
    std::atomic<int> bad{0};
    parallel_for(int(ells.size()), jobs, [&](int i) {
      if (hr_empirical_functional(s.ptr, f.ptr, ells[i], &emp[i]) != HR_OK) bad = 1;
    });
    if (bad) fail(HR_ENUMERIC, "density");
    std::string csv = "ell,empirical,limit,deviation\n";
    for (std::size_t i = 0; i < ells.size(); ++i)
      csv += std::to_string(ells[i]) + "," + fmt(emp[i]) + "," + fmt(limit) + "," +
             fmt(std::abs(emp[i] - limit)) + "\n";
    write_file(out / "density.csv", csv);
    std::cout << "wrote " << (out / "density.csv").string() << "\n";
    return 0;
  }

  if (rho_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    if (ny < 2 || !(ymax > ymin)) {
      std::cerr << "error: need ny >= 2 and ymax > ymin\n";
      return kExitConfig;
    }
    std::vector<double> ys(ny), rhos(ny);
    std::atomic<int> bad{0};
    parallel_for(ny, jobs, [&](int i) {
      ys[i] = ymin + (ymax - ymin) * i / double(ny - 1);
      if (ys[i] == 0.0) ys[i] = 0.5 * (ymin + ys[std::max(0, i - 1)]);
      if (hr_rho_density(s.ptr, ys[i], &rhos[i]) != HR_OK) bad = 1;
    });
    if (bad) fail(HR_ENUMERIC, "rho");
    std::string csv = "y,rho\n";
    for (int i = 0; i < ny; ++i) csv += fmt(ys[i]) + "," + fmt(rhos[i]) + "\n";
    write_file(out / "rho.csv", csv);
    std::cout << "wrote " << (out / "rho.csv").string() << "\n";
    return 0;
  }

  if (wein_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    TestFnHandle f = parse_testfn(f_arg);
    double w[3];
    if (hr_status st = hr_weinstein(s.ptr, f.ptr, w); st != HR_OK) fail(st, "weinstein");
    std::string csv = "naive,correct,substitution_check\n" + fmt(w[0]) + "," + fmt(w[1]) + "," +
                      fmt(w[2]) + "\n";
    write_file(out / "weinstein.csv", csv);
    std::cout << csv;
    return 0;
  }

  if (gal_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    double* evals = nullptr;
    size_t count = 0;
    if (hr_status st = hr_robin_spectrum(s.ptr, lmax, &evals, &count); st != HR_OK)
      fail(st, "galerkin");
    if (win_hi < 0) win_hi = lmax / 2;
    if (cutoff < 0) cutoff = double(lmax / 2) * (lmax / 2);
    std::string csv = "index,eigenvalue,cluster_ell,gap\n";
    for (size_t i = 0; i < count; ++i) {
      double v = evals[i];
      int l = std::max(0, int(std::floor(0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * v))))));
      if (std::abs(v - double(l + 1) * (l + 2)) < std::abs(v - double(l) * (l + 1))) ++l;
      csv += std::to_string(i + 1) + "," + fmt(v) + "," + std::to_string(l) + "," +
             fmt(v - double(l) * (l + 1)) + "\n";
    }
    write_file(out / "spectrum.csv", csv);

    std::vector<int> totals(win_hi - win_lo + 1, 0);
    size_t stragglers = 0;
    if (hr_status st = hr_window_counts(evals, count, window_c, win_lo, win_hi, cutoff,
                                        totals.data(), &stragglers);
        st != HR_OK)
      fail(st, "window counts");
    std::string wcsv = "ell,count\n";
    for (int l = win_lo; l <= win_hi; ++l)
      wcsv += std::to_string(l) + "," + std::to_string(totals[l - win_lo]) + "\n";
    write_file(out / "windows.csv", wcsv);

    nlohmann::json manifest{{"lmax", lmax},
                            {"sigma", nlohmann::json::parse(s.json)},
                            {"window_c", window_c},
                            {"cutoff", cutoff},
                            {"stragglers_below_cutoff", stragglers},
                            {"tolerances",
                             {{"eigen_residual", 1e-10}, {"hermiticity", 1e-9}, {"gram_pivot", "see README"}}}};
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
    hr_free_doubles(evals);
    std::cout << "wrote " << (out / "spectrum.csv").string() << ", windows.csv, manifest.json\n";
    return 0;
  }

  if (sl_cmd->parsed()) {
    std::string csv = "variant,n,value,gap\n";
    for (int n = 1; n <= nmax; ++n) {
      double lam = 0, mu = 0;
      if (hr_status st = hr_sl_robin_eigenvalue(sl_sigma, n, &lam); st != HR_OK) fail(st, "sl1d robin");
      if (hr_status st = hr_sl_step_eigenvalue(sl_sigma, epsilon, n, &mu); st != HR_OK)
        fail(st, "sl1d step");
      const double base = M_PI * M_PI * double(n) * n;
      csv += "robin," + std::to_string(n) + "," + fmt(lam) + "," + fmt(lam - base) + "\n";
      csv += "step," + std::to_string(n) + "," + fmt(mu) + "," + fmt(mu - base) + "\n";
    }
    write_file(out / "sl1d.csv", csv);
    std::cout << "wrote " << (out / "sl1d.csv").string() << "\n";
    return 0;
  }

  if (odd_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    int dim = 0;
    double max_res = 0, scale = 0;
    if (hr_status st = hr_odd_construction(s.ptr, ell, &dim, &max_res, &scale); st != HR_OK)
      fail(st, "odd-construct");
    nlohmann::json j{{"ell", ell}, {"dimension", dim}, {"max_residual", max_res}, {"scale", scale}};
    std::cout << j.dump(2) << "\n";
    write_file(out / "odd_construct.json", j.dump(2) + "\n");
    return 0;
  }

  if (geo_cmd->parsed()) {
    SigmaHandle s = load_sigma(sigma_arg);
    double v = 0;
    if (hr_status st = hr_geodesic_average(s.ptr, theta, phi, epsilon, &v); st != HR_OK)
      fail(st, "geodesic");
    std::cout << fmt(v) << "\n";
    return 0;
  }

  if (ver_cmd->parsed()) {
    char* report = nullptr;
    int ok = 0;
    if (hr_status st = hr_verify_run(seed, 1, &report, &ok); st != HR_OK) fail(st, "verify");
    write_file(out / "verdict.json", std::string(report) + "\n");
    hr_free_string(report);
    std::cout << (ok ? "all criteria passed" : "SOME CRITERIA FAILED") << "; verdict in "
              << (out / "verdict.json").string() << "\n";
    return ok ? 0 : 1;
  }

  return kExitConfig;
}

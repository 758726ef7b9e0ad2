#include "hemirobin/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace hemirobin::boundary {

namespace {
constexpr double kPi = std::numbers::pi;
}

BoundarySymbol::BoundarySymbol(int degree, std::span<const cplx> coeffs) {
  if (degree < 0) throw std::invalid_argument("BoundarySymbol: degree >= 0 required");
  if (degree > 512) throw std::invalid_argument("BoundarySymbol: degree <= 512 required");
  if (coeffs.size() != std::size_t(2 * degree + 1))
    throw std::invalid_argument("BoundarySymbol: coefficient count must be 2*degree+1");
  coeffs_.assign(coeffs.begin(), coeffs.end());
  double scale = 0;
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("BoundarySymbol: non-finite coefficient");
    scale = std::max(scale, std::abs(c));
  }
  for (int k = 0; k <= degree; ++k) {
    cplx avg = 0.5 * (coeffs_[degree + k] + std::conj(coeffs_[degree - k]));
    if (std::abs(avg - coeffs_[degree + k]) > 1e-10 * std::max(1.0, scale))
      throw std::invalid_argument("BoundarySymbol: Hermitian symmetry violated (sigma not real-valued)");
    coeffs_[degree + k] = avg;
    coeffs_[degree - k] = std::conj(avg);
  }
  coeffs_[degree] = cplx(coeffs_[degree].real(), 0.0);
}

double BoundarySymbol::sup_norm() const {
  const int n = 2048;
  double best = 0;
  for (int j = 0; j < n; ++j) best = std::max(best, std::abs(evaluate(*this, -kPi + 2 * kPi * j / n)));
  return best;
}

bool BoundarySymbol::is_zero() const {
  for (const cplx& c : coeffs_)
    if (c != cplx(0)) return false;
  return true;
}

bool BoundarySymbol::is_even(double tol) const {
  int d = degree();
  for (int k = -d; k <= d; ++k)
    if (((k % 2) + 2) % 2 == 1 && std::abs(coeff(k)) > tol) return false;
  return true;
}

bool BoundarySymbol::is_odd(double tol) const {
  int d = degree();
  for (int k = -d; k <= d; ++k)
    if (k % 2 == 0 && std::abs(coeff(k)) > tol) return false;
  return true;
}

BoundarySymbol from_samples(std::span<const double> values, int degree) {
  const int n = int(values.size());
  if (n < 4 * degree + 4)
    throw std::invalid_argument("from_samples: need at least 4*degree+4 samples (aliasing refused)");
  std::vector<cplx> c(2 * degree + 1);
  for (int k = -degree; k <= degree; ++k) {
    cplx acc = 0;
    for (int j = 0; j < n; ++j) {
      double phi = -kPi + 2 * kPi * j / n;
      acc += values[j] * std::exp(cplx(0, -k * phi));
    }
    c[k + degree] = acc / double(n);
  }
  return BoundarySymbol(degree, c);
}

BoundarySymbol even_part(const BoundarySymbol& s) {
  const int d = s.degree();
  std::vector<cplx> c(2 * d + 1, cplx(0));
  for (int k = -d; k <= d; ++k)
    if (k % 2 == 0) c[k + d] = s.coeff(k);
  return BoundarySymbol(d, c);
}

BoundarySymbol odd_part(const BoundarySymbol& s) {
  const int d = s.degree();
  std::vector<cplx> c(2 * d + 1, cplx(0));
  for (int k = -d; k <= d; ++k)
    if (((k % 2) + 2) % 2 == 1) c[k + d] = s.coeff(k);
  return BoundarySymbol(d, c);
}

EvenOddSplit even_odd_split(const BoundarySymbol& s) { return {even_part(s), odd_part(s)}; }

double evaluate(const BoundarySymbol& s, double phi) {
  cplx acc = 0;
  const int d = s.degree();
  for (int k = -d; k <= d; ++k) acc += s.coeff(k) * std::exp(cplx(0, k * phi));
  double scale = std::max(1.0, std::abs(acc));
  if (std::abs(acc.imag()) > 1e-12 * scale)
    throw std::runtime_error("evaluate: imaginary residue above tolerance (symmetry violation)");
  return acc.real();
}

BoundarySymbol abs_symbol(const BoundarySymbol& s, int degree) {
  const int n = std::max(4 * degree + 4, 64);
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = std::abs(evaluate(s, -kPi + 2 * kPi * j / n));
  return from_samples(v, degree);
}

BoundarySymbol axpy(double a, const BoundarySymbol& s1, double b, const BoundarySymbol& s2) {
  const int d = std::max(s1.degree(), s2.degree());
  std::vector<cplx> c(2 * d + 1);
  for (int k = -d; k <= d; ++k) c[k + d] = a * s1.coeff(k) + b * s2.coeff(k);
  return BoundarySymbol(d, c);
}

BoundarySymbol scale(const BoundarySymbol& s, double factor) { return axpy(factor, s, 0.0, s); }

num::HermitianMatrix multiplication_matrix(const BoundarySymbol& s, std::span<const int> basis) {
  const std::size_t n = basis.size();
  num::HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, s.coeff(basis[i] - basis[j]));
  return m;
}

num::HermitianMatrix convolution_matrix(const harm::SymbolSequence& sym, std::span<const int> basis) {
  const std::size_t n = basis.size();
  num::HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, sym.at(basis[i]));
  return m;
}

BoundarySymbol from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("sigma JSON: parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("sigma JSON: missing string field 'type'");
  const std::string type = j["type"];
  if (type == "coeffs") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw std::invalid_argument("sigma JSON: missing array field 'coeffs'");
    int degree = 0;
    for (const auto& e : j["coeffs"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() ||
          !e[2].is_number())
        throw std::invalid_argument("sigma JSON: 'coeffs' entries must be [k, re, im]");
      degree = std::max(degree, std::abs(int(e[0])));
    }
    std::vector<cplx> c(2 * degree + 1, cplx(0));
    for (const auto& e : j["coeffs"]) {
      int k = e[0];
      c[k + degree] += cplx(double(e[1]), double(e[2]));
    }
    try {
      return BoundarySymbol(degree, c);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(std::string("sigma JSON: 'coeffs': ") + ex.what());
    }
  }
  if (type == "samples") {
    if (!j.contains("values") || !j["values"].is_array())
      throw std::invalid_argument("sigma JSON: missing array field 'values'");
    if (!j.contains("degree") || !j["degree"].is_number_integer())
      throw std::invalid_argument("sigma JSON: missing integer field 'degree'");
    std::vector<double> v;
    for (const auto& e : j["values"]) {
      if (!e.is_number()) throw std::invalid_argument("sigma JSON: 'values' entries must be numbers");
      v.push_back(double(e));
    }
    try {
      return from_samples(v, int(j["degree"]));
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(std::string("sigma JSON: 'values': ") + ex.what());
    }
  }
  throw std::invalid_argument("sigma JSON: 'type' must be \"coeffs\" or \"samples\"");
}

std::string to_json(const BoundarySymbol& s) {
  nlohmann::json arr = nlohmann::json::array();
  const int d = s.degree();
  for (int k = -d; k <= d; ++k) {
    cplx c = s.coeff(k);
    if (c != cplx(0)) arr.push_back({k, c.real(), c.imag()});
  }
  nlohmann::json j{{"type", "coeffs"}, {"coeffs", arr}};
  return j.dump();
}

}  // namespace hemirobin::boundary

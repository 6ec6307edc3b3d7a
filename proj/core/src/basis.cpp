#include "angulab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "angulab/specfun.hpp"

namespace angulab::spectral {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kMaxQuadratureOrder = 400;

struct Sparse {
  std::vector<int> labels;
  std::vector<cplx> values;
};

Sparse nonzeros(const Coefficients& c) {
  Sparse s;
  for (int k = c.first_label; k <= c.last_label(); ++k) {
    const cplx v = c.at(k);
    if (v != cplx{}) {
      s.labels.push_back(k);
      s.values.push_back(v);
    }
  }
  return s;
}

// Toeplitz symbol F(k) = (1/2pi) \int f e^{ik phi} over the span of
// differences needed by a pair of sparse vectors.
struct Symbol {
  int lo = 0;
  std::vector<cplx> values;
  cplx operator()(int k) const { return values[static_cast<std::size_t>(k - lo)]; }
};

Symbol symbol_for(const AngularFunction& f, int lo, int hi) {
  Symbol s;
  s.lo = lo;
  s.values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) s.values.push_back(f.fourier_moment(k));
  return s;
}

// Hermite functions at the nodes of a scaled Gauss-Hermite rule.
struct HermiteTable {
  const specfun::QuadratureRule* rule = nullptr;
  Eigen::MatrixXd values;  // [node][n]
};

const HermiteTable& hermite_table(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<HermiteTable>> cache;
  const specfun::QuadratureRule& rule = specfun::gauss_hermite_scaled(order);
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) {
    auto table = std::make_unique<HermiteTable>();
    table->rule = &rule;
    const int cols = std::min(2 * order, specfun::kMaxHermiteFunctionOrder + 1);
    table->values.resize(order, cols);
    std::vector<double> h(static_cast<std::size_t>(cols));
    for (int i = 0; i < order; ++i) {
      specfun::hermite_functions(rule.nodes[static_cast<std::size_t>(i)], h);
      for (int n = 0; n < cols; ++n) table->values(i, n) = h[static_cast<std::size_t>(n)];
    }
    slot = std::move(table);
  }
  return *slot;
}

std::vector<cplx> sample(const HermiteTable& table, const Sparse& v) {
  const auto nodes = static_cast<int>(table.values.rows());
  std::vector<cplx> out(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < v.labels.size(); ++k) s += v.values[k] * table.values(i, v.labels[k]);
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Image

Image& Image::operator+=(const Image& other) {
  vector += other.vector;
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

Image& Image::operator*=(cplx scale) {
  vector *= scale;
  for (Term& t : terms) t.vector *= scale;
  return *this;
}

void Image::compact() {
  std::vector<Term> merged;
  for (Term& t : terms) {
    if (t.function.is_zero()) continue;
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& m) { return m.function == t.function; });
    if (it == merged.end()) {
      merged.push_back(std::move(t));
    } else {
      it->vector += t.vector;
    }
  }
  terms = std::move(merged);
}

Image operator+(Image a, const Image& b) { return a += b; }
Image operator*(cplx s, Image a) { return a *= s; }

// ---------------------------------------------------------------- circle

Coefficients FourierBasis::apply_lz(const Coefficients& v) const {
  Coefficients out = v;
  for (int m = v.first_label; m <= v.last_label(); ++m) out.ref(m) *= hbar_ * m;
  return out;
}

cplx FourierBasis::form(const Coefficients& left, const AngularFunction& f,
                        const Coefficients& right) const {
  const Sparse l = nonzeros(left);
  const Sparse r = nonzeros(right);
  if (l.labels.empty() || r.labels.empty() || f.is_zero()) return {};
  const Symbol F = symbol_for(f, r.labels.front() - l.labels.back(),
                              r.labels.back() - l.labels.front());
  cplx sum = 0.0;
  for (std::size_t i = 0; i < l.labels.size(); ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < r.labels.size(); ++j) row += F(r.labels[j] - l.labels[i]) * r.values[j];
    sum += std::conj(l.values[i]) * row;
  }
  return sum;
}

Coefficients FourierBasis::project(const AngularFunction& f, const Coefficients& u, int first,
                                   int last) const {
  Coefficients out = Coefficients::zeros(first, last);
  const Sparse r = nonzeros(u);
  if (r.labels.empty()) return out;
  const Symbol F = symbol_for(f, r.labels.front() - last, r.labels.back() - first);
  for (int m = first; m <= last; ++m) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < r.labels.size(); ++j) s += F(r.labels[j] - m) * r.values[j];
    out.ref(m) = s;
  }
  return out;
}

// ---------------------------------------------------------------- line

Coefficients HermiteBasis::apply_dxi(const Coefficients& v) const {
  const Coefficients t = v.trimmed();
  if (t.empty()) return t;
  Coefficients out = Coefficients::zeros(std::max(0, t.first_label - 1), t.last_label() + 1);
  for (int n = out.first_label; n <= out.last_label(); ++n) {
    out.ref(n) = t.at(n + 1) * std::sqrt((n + 1) / 2.0) - t.at(n - 1) * std::sqrt(n / 2.0);
  }
  return out;
}

Coefficients HermiteBasis::apply_xi(const Coefficients& v) const {
  const Coefficients t = v.trimmed();
  if (t.empty()) return t;
  Coefficients out = Coefficients::zeros(std::max(0, t.first_label - 1), t.last_label() + 1);
  for (int n = out.first_label; n <= out.last_label(); ++n) {
    out.ref(n) = t.at(n + 1) * std::sqrt((n + 1) / 2.0) + t.at(n - 1) * std::sqrt(n / 2.0);
  }
  return out;
}

Coefficients HermiteBasis::apply_lz(const Coefficients& v) const {
  // L = -i hbar d/dphi = -i hbar lambda d/dxi
  return (-kI * hbar_ * lambda_) * apply_dxi(v);
}

int HermiteBasis::quadrature_order(int max_label, const AngularFunction& f) const {
  const double kappa = f.max_frequency() / lambda_;
  const int degree = max_label + f.max_power();
  int order = (degree + 1) / 2 + 17 + static_cast<int>(std::ceil(kappa * kappa + 4.0 * kappa));
  order = (order + 7) / 8 * 8;
  if (order > kMaxQuadratureOrder) {
    throw std::range_error("HermiteBasis: required Gauss-Hermite order " + std::to_string(order) +
                           " exceeds supported maximum");
  }
  return order;
}

cplx HermiteBasis::form(const Coefficients& left, const AngularFunction& f,
                        const Coefficients& right) const {
  const Sparse l = nonzeros(left);
  const Sparse r = nonzeros(right);
  if (l.labels.empty() || r.labels.empty() || f.is_zero()) return {};
  const int order = quadrature_order(l.labels.back() + r.labels.back(), f);
  const HermiteTable& table = hermite_table(order);
  const std::vector<cplx> ls = sample(table, l);
  const std::vector<cplx> rs = sample(table, r);
  cplx sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double xi = table.rule->nodes[k];
    sum += table.rule->weights[k] * f(xi / lambda_) * std::conj(ls[k]) * rs[k];
  }
  return sum;
}

Coefficients HermiteBasis::project(const AngularFunction& f, const Coefficients& u, int first,
                                   int last) const {
  Coefficients out = Coefficients::zeros(first, last);
  const Sparse r = nonzeros(u);
  if (r.labels.empty()) return out;
  const int order = quadrature_order(last + r.labels.back(), f);
  const HermiteTable& table = hermite_table(order);
  const std::vector<cplx> rs = sample(table, r);
  for (int m = first; m <= last; ++m) {
    cplx s = 0.0;
    for (int i = 0; i < order; ++i) {
      const auto k = static_cast<std::size_t>(i);
      s += table.rule->weights[k] * f(table.rule->nodes[k] / lambda_) * table.values(i, m) * rs[k];
    }
    out.ref(m) = s;
  }
  return out;
}

// ---------------------------------------------------------------- sphere

Eigen::MatrixXd theta_overlaps(int l) {
  const int dim = 2 * l + 1;
  const specfun::QuadratureRule rule = specfun::gauss_legendre(std::max(8, 2 * l + 8));
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    specfun::theta_row(l, std::acos(rule.nodes[i]), row);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        o(a, b) += rule.weights[i] * row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)];
      }
    }
  }
  return o;
}

SphereBasis::SphereBasis(double hbar, int l) : hbar_(hbar), l_(l), overlaps_(theta_overlaps(l)) {}

Coefficients SphereBasis::apply_lz(const Coefficients& v) const {
  Coefficients out = v;
  for (int m = v.first_label; m <= v.last_label(); ++m) out.ref(m) *= hbar_ * m;
  return out;
}

cplx SphereBasis::form(const Coefficients& left, const AngularFunction& f,
                       const Coefficients& right) const {
  const Sparse l = nonzeros(left);
  const Sparse r = nonzeros(right);
  if (l.labels.empty() || r.labels.empty() || f.is_zero()) return {};
  const Symbol F = symbol_for(f, r.labels.front() - l.labels.back(),
                              r.labels.back() - l.labels.front());
  cplx sum = 0.0;
  for (std::size_t i = 0; i < l.labels.size(); ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
      row += overlap(l.labels[i], r.labels[j]) * F(r.labels[j] - l.labels[i]) * r.values[j];
    }
    sum += std::conj(l.values[i]) * row;
  }
  return sum;
}

Coefficients SphereBasis::project(const AngularFunction& f, const Coefficients& u, int first,
                                  int last) const {
  first = std::max(first, -l_);
  last = std::min(last, l_);
  Coefficients out = Coefficients::zeros(first, last);
  const Sparse r = nonzeros(u);
  if (r.labels.empty()) return out;
  const Symbol F = symbol_for(f, r.labels.front() - last, r.labels.back() - first);
  for (int m = first; m <= last; ++m) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
      s += overlap(m, r.labels[j]) * F(r.labels[j] - m) * r.values[j];
    }
    out.ref(m) = s;
  }
  return out;
}

// ---------------------------------------------------------------- dispatch

Basis basis_for(const State& state) {
  struct Visitor {
    Basis operator()(const PeriodicState& s) const { return FourierBasis(s.hbar()); }
    Basis operator()(const OscillatorState& s) const { return HermiteBasis(s.hbar(), s.lambda()); }
    Basis operator()(const SphereState& s) const { return SphereBasis(s.hbar(), s.l()); }
  };
  return std::visit(Visitor{}, state);
}

Coefficients apply_lz(const Basis& basis, const Coefficients& v) {
  return std::visit([&](const auto& b) { return b.apply_lz(v); }, basis);
}

cplx form(const Basis& basis, const Coefficients& left, const AngularFunction& f,
          const Coefficients& right) {
  return std::visit([&](const auto& b) { return b.form(left, f, right); }, basis);
}

Coefficients project(const Basis& basis, const AngularFunction& f, const Coefficients& u, int first,
                     int last) {
  return std::visit([&](const auto& b) { return b.project(f, u, first, last); }, basis);
}

cplx inner(const Basis& basis, const Image& x, const Image& y) {
  cplx sum = dot(x.vector, y.vector);
  for (const Term& t : y.terms) sum += form(basis, x.vector, t.function, t.vector);
  for (const Term& s : x.terms) {
    const AngularFunction fc = s.function.conj();
    sum += form(basis, s.vector, fc, y.vector);
    for (const Term& t : y.terms) sum += form(basis, s.vector, fc * t.function, t.vector);
  }
  return sum;
}

Image apply_lz(const Basis& basis, const Image& x) {
  const double hbar = std::visit([](const auto& b) { return b.hbar(); }, basis);
  Image out = Image::of(apply_lz(basis, x.vector));
  for (const Term& t : x.terms) {
    const AngularFunction d = t.function.derivative();
    if (!d.is_zero()) out.terms.push_back({d, (-kI * hbar) * t.vector});
    out.terms.push_back({t.function, apply_lz(basis, t.vector)});
  }
  out.compact();
  return out;
}

Image multiply(const AngularFunction& f, const Image& x) {
  Image out;
  if (f.is_zero()) return out;
  if (!x.vector.empty()) out.terms.push_back({f, x.vector});
  for (const Term& t : x.terms) out.terms.push_back({f * t.function, t.vector});
  out.compact();
  return out;
}

Image apply_matrix(const Basis& basis, const Eigen::MatrixXcd& action, int first, const Image& x) {
  const int last = first + static_cast<int>(action.rows()) - 1;
  if (action.rows() != action.cols()) throw std::invalid_argument("observable matrix must be square");
  Coefficients flat = Coefficients::zeros(first, last);
  for (int k = first; k <= last; ++k) flat.ref(k) = x.vector.at(k);
  for (const Term& t : x.terms) flat += project(basis, t.function, t.vector, first, last);
  Eigen::VectorXcd in(action.cols());
  for (int k = first; k <= last; ++k) in(k - first) = flat.at(k);
  const Eigen::VectorXcd res = action * in;
  Coefficients out = Coefficients::zeros(first, last);
  for (int k = first; k <= last; ++k) out.ref(k) = res(k - first);
  return Image::of(std::move(out));
}

}  // namespace angulab::spectral

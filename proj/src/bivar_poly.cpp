#include "wharm/bivar_poly.hpp"

#include <algorithm>

#include "wharm/errors.hpp"
#include "wharm/hypergeom.hpp"

namespace wharm {

BivarPoly BivarPoly::constant(const GaussianRational& c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(std::uint32_t i, std::uint32_t j, const GaussianRational& c) {
  BivarPoly p;
  p.add_term(i, j, c);
  return p;
}

std::uint32_t BivarPoly::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

bool BivarPoly::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

GaussianRational BivarPoly::coefficient(std::uint32_t i, std::uint32_t j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void BivarPoly::add_term(std::uint32_t i, std::uint32_t j, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
  return out;
}

BivarPoly BivarPoly::dz() const {
  BivarPoly out;
  for (const auto& [m, c] : terms_)
    if (m.i > 0) out.add_term(m.i - 1, m.j, c * GaussianRational(Rational(m.i)));
  return out;
}

BivarPoly BivarPoly::dzbar() const {
  BivarPoly out;
  for (const auto& [m, c] : terms_)
    if (m.j > 0) out.add_term(m.i, m.j - 1, c * GaussianRational(Rational(m.j)));
  return out;
}

namespace {

GaussianRational power(const GaussianRational& base, std::uint32_t e) {
  GaussianRational result(Rational(1));
  GaussianRational b = base;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

}  // namespace

GaussianRational BivarPoly::evaluate(const GaussianRational& z) const {
  GaussianRational zb = z.conj();
  GaussianRational sum;
  for (const auto& [m, c] : terms_) sum += c * power(z, m.i) * power(zb, m.j);
  return sum;
}

std::complex<double> BivarPoly::evaluate(std::complex<double> z) const { return FloatBivarPoly(*this)(z); }

FloatBivarPoly BivarPoly::to_float() const { return FloatBivarPoly(*this); }

FloatBivarPoly::FloatBivarPoly(const BivarPoly& p) : degree_(p.degree()) {
  for (const auto& [m, c] : p.terms()) {
    if (rows_.size() <= m.i) rows_.resize(m.i + 1);
    auto& row = rows_[m.i];
    if (row.size() <= m.j) row.resize(m.j + 1);
    row[m.j] = c.to_complex();
  }
}

std::complex<double> FloatBivarPoly::operator()(std::complex<double> z) const {
  // Horner in z over rows, each row Horner in conj(z).
  const std::complex<double> zb = std::conj(z);
  std::complex<double> acc = 0.0;
  for (auto row = rows_.rbegin(); row != rows_.rend(); ++row) {
    std::complex<double> inner = 0.0;
    for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * zb + *c;
    acc = acc * z + inner;
  }
  return acc;
}

namespace poly {

namespace {

// (alpha+1)_j / j! for j = 0..k, exactly.
std::vector<Rational> binomial_series(const Rational& alpha, std::uint32_t k) {
  std::vector<Rational> a(k + 1);
  a[0] = 1;
  for (std::uint32_t j = 0; j < k; ++j) {
    a[j + 1] = a[j] * (alpha + 1 + j) / (j + 1);
  }
  return a;
}

}  // namespace

BivarPoly s_poly(const AlphaParam& alpha, std::uint32_t k) {
  const auto a = binomial_series(alpha.exact(), k);
  BivarPoly p;
  for (std::uint32_t j = 0; j <= k; ++j) p.add_term(j, 0, a[j]);
  return p;
}

BivarPoly p_poly(const AlphaParam& alpha, std::uint32_t k) {
  const auto a = binomial_series(alpha.exact(), k);
  BivarPoly p;
  for (std::uint32_t j = 0; j <= k; ++j) p.add_term(k - j, j, a[j]);
  return p;
}

std::vector<BivarPoly> h_sequence(const AlphaParam& alpha, std::uint32_t k) {
  const Rational a = alpha.exact();
  const GaussianRational half(Rational(1, 2));
  const BivarPoly z2_plus_1 = (BivarPoly::monomial(2, 0) + BivarPoly::constant(Rational(1))) * half;
  const BivarPoly zb2_plus_1 = (BivarPoly::monomial(0, 2) + BivarPoly::constant(Rational(1))) * half;
  const BivarPoly linear = (BivarPoly::z() + BivarPoly::zbar() * GaussianRational(Rational(a + 1)) +
                            BivarPoly::constant(GaussianRational(Rational(0), a))) *
                           half;
  std::vector<BivarPoly> h;
  h.reserve(k + 1);
  h.push_back(BivarPoly::constant(Rational(1)));
  for (std::uint32_t n = 0; n < k; ++n) {
    const BivarPoly& prev = h.back();
    h.push_back(z2_plus_1 * prev.dz() + zb2_plus_1 * prev.dzbar() + linear * prev);
  }
  return h;
}

BivarPoly h_poly(const AlphaParam& alpha, std::uint32_t k) { return h_sequence(alpha, k).back(); }

BivarPoly d_alpha(const AlphaParam& alpha, const BivarPoly& p) {
  const BivarPoly z_minus_zbar = BivarPoly::z() - BivarPoly::zbar();
  const BivarPoly dp = p.dz();
  return z_minus_zbar * dp.dzbar() + p.dzbar() - dp * GaussianRational(Rational(alpha.exact() + 1));
}

BivarPoly angular_derivative(const BivarPoly& p) {
  BivarPoly out;
  for (const auto& [m, c] : p.terms()) {
    const Rational diff = Rational(static_cast<long>(m.i)) - Rational(static_cast<long>(m.j));
    out.add_term(m.i, m.j, c * GaussianRational(Rational(0), diff));
  }
  return out;
}

std::vector<BivarPoly> homogeneous_parts(const BivarPoly& p) {
  std::vector<BivarPoly> parts(p.degree() + 1);
  for (const auto& [m, c] : p.terms()) parts[m.degree()].add_term(m.i, m.j, c);
  return parts;
}

std::vector<GaussianRational> decompose_h_over_p(const AlphaParam& alpha, std::uint32_t k) {
  const BivarPoly h = h_poly(alpha, k);
  if (h.degree() > k) throw DecompositionFailure("h_k has degree above k");
  auto parts = homogeneous_parts(h);
  parts.resize(k + 1);
  std::vector<GaussianRational> b(k + 1);
  BivarPoly residual = h;
  for (std::uint32_t j = 0; j <= k; ++j) {
    // p_{j,alpha} is monic in z^j, so the z^j coefficient of the part is the multiplier.
    b[j] = parts[j].coefficient(j, 0);
    residual -= p_poly(alpha, j) * b[j];
  }
  if (!residual.is_zero())
    throw DecompositionFailure("h_" + std::to_string(k) + " is not a combination of p_0..p_k");
  return b;
}

std::vector<BivarPoly> homogeneous_kernel_basis(const AlphaParam& alpha, std::uint32_t k) {
  // Column c is the image of z^{k-c} zbar^c; row r the coefficient of z^{k-1-r} zbar^r.
  const std::uint32_t cols = k + 1;
  const std::uint32_t rows = k;
  std::vector<std::vector<GaussianRational>> m(rows, std::vector<GaussianRational>(cols));
  for (std::uint32_t c = 0; c < cols; ++c) {
    const BivarPoly image = d_alpha(alpha, BivarPoly::monomial(k - c, c));
    for (const auto& [mono, coef] : image.terms()) m[mono.j][c] = coef;
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  std::uint32_t r = 0;
  for (std::uint32_t c = 0; c < cols && r < rows; ++c) {
    std::uint32_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const GaussianRational inv = GaussianRational(Rational(1)) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::uint32_t o = 0; o < rows; ++o) {
      if (o == r || m[o][c].is_zero()) continue;
      const GaussianRational f = m[o][c];
      for (std::uint32_t cc = 0; cc < cols; ++cc) m[o][cc] -= f * m[r][cc];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<BivarPoly> basis;
  for (std::uint32_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    BivarPoly v = BivarPoly::monomial(k - free, free);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      const auto pc = static_cast<std::uint32_t>(pivot_col[i]);
      v.add_term(k - pc, pc, -m[i][free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

double binomial_coefficient(double alpha, std::uint32_t j) {
  double value = 1.0;
  for (std::uint32_t m = 0; m < j; ++m) value *= (alpha + 1.0 + m) / (m + 1.0);
  return value;
}

std::complex<double> p_value(double alpha, std::uint32_t k, std::complex<double> z) {
  // Horner in conj(z)/z is unstable near 0, so accumulate sum a_j z^{k-j} zbar^j directly.
  const std::complex<double> zb = std::conj(z);
  std::vector<std::complex<double>> zpow(k + 1, 1.0);
  for (std::uint32_t m = 1; m <= k; ++m) zpow[m] = zpow[m - 1] * z;
  std::complex<double> sum = 0.0;
  std::complex<double> zbpow = 1.0;
  double a = 1.0;
  for (std::uint32_t j = 0; j <= k; ++j) {
    sum += a * zpow[k - j] * zbpow;
    zbpow *= zb;
    a *= (alpha + 1.0 + j) / (j + 1.0);
  }
  return sum;
}

}  // namespace poly
}  // namespace wharm

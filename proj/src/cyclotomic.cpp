#include "ugkit/cyclotomic.hpp"

#include <algorithm>

#include "ugkit/error.hpp"

namespace ugkit {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// Quotient and remainder by a monic divisor.
std::pair<Poly, Poly> divide(Poly num, const Poly& monic) {
  trim(num);
  const std::size_t d = monic.size() - 1;
  if (num.size() <= d) return {{}, num};
  Poly quot(num.size() - d);
  for (std::size_t i = num.size(); i-- > d;) {
    Rational c = num[i];
    if (c == 0) continue;
    quot[i - d] = c;
    for (std::size_t j = 0; j <= d; ++j) num[i - d + j] -= c * monic[j];
  }
  num.resize(d);
  trim(num);
  trim(quot);
  return {quot, num};
}

}  // namespace

std::vector<Rational> cyclotomic_polynomial(unsigned k) {
  if (k == 0) throw Error(ErrorCode::Usage, "root of unity order must be positive");
  Poly p(k + 1);
  p[0] = -1;
  p[k] = 1;
  for (unsigned d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    p = divide(p, cyclotomic_polynomial(d)).first;
  }
  return p;
}

CyclotomicField::CyclotomicField(unsigned order)
    : order_(order), modulus_(cyclotomic_polynomial(order)) {}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> poly) const {
  auto rem = divide(std::move(poly), modulus_).second;
  return rem;
}

Cyclotomic Cyclotomic::from_rational(std::shared_ptr<const CyclotomicField> f,
                                     const Rational& q) {
  Poly c;
  if (q != 0) c.push_back(q);
  return Cyclotomic(std::move(f), std::move(c));
}

Cyclotomic Cyclotomic::zeta(std::shared_ptr<const CyclotomicField> f, long m) {
  const long k = f->order();
  const long e = ((m % k) + k) % k;
  Poly c(static_cast<std::size_t>(e) + 1);
  c[static_cast<std::size_t>(e)] = 1;
  auto r = f->reduce(std::move(c));
  return Cyclotomic(std::move(f), std::move(r));
}

const std::shared_ptr<const CyclotomicField>& Cyclotomic::pick(
    const Cyclotomic& o) const {
  if (field_ && o.field_ && field_->order() != o.field_->order()) {
    throw Error(ErrorCode::Usage, "cyclotomic fields of different orders");
  }
  return field_ ? field_ : o.field_;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  Poly c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  trim(c);
  return Cyclotomic(pick(o), std::move(c));
}

Cyclotomic Cyclotomic::operator-() const {
  Poly c = coeffs_;
  for (auto& x : c) x = -x;
  return Cyclotomic(field_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  const auto& f = pick(o);
  Poly c = multiply(coeffs_, o.coeffs_);
  if (!c.empty()) c = f->reduce(std::move(c));
  return Cyclotomic(f, std::move(c));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  pick(o);
  return coeffs_ == o.coeffs_;
}

Cyclotomic Cyclotomic::conjugate() const {
  if (coeffs_.empty()) return *this;
  const unsigned k = field_->order();
  Poly c(k);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[(k - i) % k] += coeffs_[i];
  return Cyclotomic(field_, field_->reduce(std::move(c)));
}

bool Cyclotomic::is_zero() const { return coeffs_.empty(); }

std::string Cyclotomic::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += coeffs_[i].get_str();
    if (i == 1) out += "*z";
    if (i > 1) out += "*z^" + std::to_string(i);
  }
  return out;
}

}  // namespace ugkit

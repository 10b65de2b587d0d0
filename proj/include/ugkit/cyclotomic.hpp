#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ugkit/rational.hpp"

namespace ugkit {

// Q(zeta_k) as Q[x] modulo the k-th cyclotomic polynomial.
class CyclotomicField {
 public:
  explicit CyclotomicField(unsigned order);

  unsigned order() const { return order_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  // Monic, coefficients from the constant term up.
  const std::vector<Rational>& modulus() const { return modulus_; }

  // Remainder modulo the cyclotomic polynomial, without trailing zeros.
  std::vector<Rational> reduce(std::vector<Rational> poly) const;

 private:
  unsigned order_;
  std::vector<Rational> modulus_;
};

class Cyclotomic {
 public:
  Cyclotomic() = default;

  static Cyclotomic from_rational(std::shared_ptr<const CyclotomicField> f,
                                  const Rational& q);
  // zeta^m for any integer m.
  static Cyclotomic zeta(std::shared_ptr<const CyclotomicField> f, long m);

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  bool operator==(const Cyclotomic& o) const;

  Cyclotomic conjugate() const;
  bool is_zero() const;
  std::string str() const;

 private:
  Cyclotomic(std::shared_ptr<const CyclotomicField> f, std::vector<Rational> c)
      : field_(std::move(f)), coeffs_(std::move(c)) {}
  const std::shared_ptr<const CyclotomicField>& pick(const Cyclotomic& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;  // empty means zero
};

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
inline Cyclotomic conj(const Cyclotomic& c) { return c.conjugate(); }

// Coefficients of the k-th cyclotomic polynomial, constant term first.
std::vector<Rational> cyclotomic_polynomial(unsigned k);

}  // namespace ugkit

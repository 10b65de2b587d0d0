#pragma once

#include <gmpxx.h>

#include <string>

namespace ugkit {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational conj(const Rational& q) { return q; }

inline bool is_zero(const Rational& q) { return q == 0; }

}  // namespace ugkit

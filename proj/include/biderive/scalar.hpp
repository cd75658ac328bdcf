#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace biderive {

/// Exact rational scalar. GMP keeps values canonical (gcd 1, positive
/// denominator) through arithmetic; only raw string construction needs an
/// explicit canonicalize.
using Scalar = mpq_class;

class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class parse_error : public error {
 public:
  parse_error(const std::string& msg, std::size_t position)
      : error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline Scalar scalar_from_string(const std::string& text) {
  Scalar q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw error("bad rational literal: " + text);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw error("zero denominator in rational literal: " + text);
  q.canonicalize();
  return q;
}

inline std::string scalar_str(const Scalar& q) { return q.get_str(); }

inline bool is_integer(const Scalar& q) {
  return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

}  // namespace biderive

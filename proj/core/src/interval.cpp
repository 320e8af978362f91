#include "delreal/interval.hpp"

#include <mpfr.h>

#include "delreal/error.hpp"

namespace delreal {

namespace {

Rat sqrt_rounded(const Rat& v, int precision_bits, mpfr_rnd_t mode) {
  mpfr_t x;
  mpfr_init2(x, precision_bits);
  mpfr_set_q(x, v.get_mpq_t(), mode);
  mpfr_sqrt(x, x, mode);
  Rat out;
  mpfr_get_q(out.get_mpq_t(), x);
  mpfr_clear(x);
  return out;
}

}  // namespace

Interval Interval::sqrt(const Rat& v, int precision_bits) {
  if (v < 0) throw Error(ErrorCode::kInvalidArgument, "sqrt of a negative rational");
  return {sqrt_rounded(v, precision_bits, MPFR_RNDD), sqrt_rounded(v, precision_bits, MPFR_RNDU)};
}

Interval min(const Interval& a, const Interval& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

}  // namespace delreal

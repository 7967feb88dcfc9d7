#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "pureres/util.hpp"

namespace pureres {

/* Field descriptor as carried by configs and serialized objects.
   characteristic == 0 selects exact rationals; otherwise an odd prime. */
struct FieldDesc {
  uint32_t characteristic = 32003;

  void validate() const {
    if (characteristic == 0) return;
    if (characteristic == 2 || !is_prime_u32(characteristic))
      throw PreconditionViolated("characteristic must be 0 or an odd prime, got " +
                                 std::to_string(characteristic));
  }
};

/* Prime field context.  Elements are canonical representatives in [0, p).
   All engine arithmetic is routed through a context object like this one so
   the same templated kernels run over F_p and over Q. */
class Fp {
 public:
  using Elem = uint32_t;
  static constexpr bool is_prime_field = true;

  explicit Fp(uint32_t p) : p_(p) {
    FieldDesc{p}.validate();
    if (p == 0) throw PreconditionViolated("Fp requires positive characteristic");
  }

  uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return (Elem)r;
  }

  Elem add(Elem a, Elem b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (Elem)((uint64_t)a * b % p_); }

  Elem inv(Elem a) const {
    if (a == 0) throw PreconditionViolated("inverse of zero");
    // extended Euclid
    int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      int64_t q = r / nr;
      int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p_;
    return (Elem)t;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem sample(Rng& rng) const { return (Elem)rng.next_below(p_); }

  long long to_int(Elem a) const { return (long long)a; }
  std::string to_string(Elem a) const { return std::to_string(a); }

 private:
  uint32_t p_;
};

/* Exact rationals, slow fallback for small instances (characteristic 0). */
class Rat {
 public:
  using Elem = boost::multiprecision::cpp_rational;
  static constexpr bool is_prime_field = false;

  uint32_t characteristic() const { return 0; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }

  Elem from_int(long long v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw PreconditionViolated("inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

  // Coefficient sampling over Q draws small integers; uniform-over-field is
  // meaningless in characteristic 0.
  Elem sample(Rng& rng) const { return Elem((long long)rng.next_below(32003)); }

  std::string to_string(const Elem& a) const { return a.str(); }

 private:
  const Elem& inv_guard(const Elem& b) const {
    if (b == 0) throw PreconditionViolated("division by zero");
    return b;
  }
};

}  // namespace pureres

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fieldred {

// Thrown by enumeration routines when a request exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, unsigned long long required)
      : std::runtime_error(what), required_(required) {}
  unsigned long long required() const { return required_; }

private:
  unsigned long long required_;
};

// GF(p^h) with a fixed modulus and a distinguished primitive generator.
//
// An element is an index packing its coefficient vector (c_0,...,c_{h-1})
// over GF(p) as sum c_i * p^i, coefficients taken w.r.t. the power basis of
// the modulus root.  The default modulus is the lexicographically smallest
// monic irreducible of degree h (ordered by the tuple (c_{h-1},...,c_0))
// whose root is primitive, so the generator is the root itself.  If a user
// modulus is irreducible but its root is not primitive, the generator is
// adjusted to the smallest primitive element; the representation basis stays
// the root power basis.
//
// All state is immutable after construction; instances are cached and shared.
class FieldTower {
public:
  static const FieldTower& get(long long p, int h);
  static const FieldTower& get(long long p, int h, const std::vector<long long>& modulus);
  // "p^h" or "p^h:poly=c0,c1,...,1" (coefficients low-to-high, decimal)
  static const FieldTower& parse_spec(const std::string& spec);

  long long p() const { return p_; }
  int h() const { return h_; }
  uint32_t order() const { return n_; }
  const std::vector<long long>& modulus() const { return modulus_; }
  uint32_t generator() const { return gen_; }
  const std::vector<int>& subfield_degrees() const { return divisors_; }
  std::string spec_string() const;

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const {
    return (a && b) ? exp_[log_[a] + log_[b]] : 0;
  }
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const;
  uint32_t pow(uint32_t a, long long e) const;

  // x^(p^d); d need not divide h here, frobenius composes freely
  uint32_t frobenius(uint32_t x, int d) const;
  // x + x^q + ... + x^(q^(t-1)) with q = p^d, t = h/d; lands in GF(p^d)
  uint32_t trace_to(uint32_t x, int d) const;
  // true iff x is a nonzero square; every nonzero element is a square when
  // p = 2; x = 0 is a domain error
  bool is_square(uint32_t x) const;
  bool in_subfield(uint32_t x, int d) const;
  const std::vector<uint32_t>& subfield_elements(int d) const;

  // coordinates of x over the subfield GF(p^d) w.r.t. the generator power
  // basis {1, g, ..., g^(h/d - 1)}; entries are tower elements lying in the
  // subfield; from_vector inverts
  std::vector<uint32_t> to_vector(uint32_t x, int d) const;
  uint32_t from_vector(const std::vector<uint32_t>& v, int d) const;

  std::vector<int> coeffs(uint32_t x) const;
  uint32_t from_coeffs(const std::vector<int>& c) const;

  long long multiplicative_order(uint32_t x) const;

  // "[c0,...,c_{h-1}]" digit list; bare digit when h == 1
  std::string format(uint32_t x) const;
  uint32_t parse_element(const std::string& s) const;

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

private:
  FieldTower(long long p, int h, std::vector<long long> modulus, bool default_modulus);
  static const FieldTower& intern(long long p, int h, std::vector<long long> modulus,
                                  bool default_modulus);

  struct SubfieldData {
    int d = 0;
    std::vector<uint32_t> elements;       // sorted by index
    std::vector<uint32_t> upow;           // GF(p)-basis of the subfield
    std::vector<int> basis_inv;           // h x h over GF(p), row-major
  };
  const SubfieldData& subfield_data(int d) const;

  long long p_;
  int h_;
  uint32_t n_;
  std::vector<long long> modulus_;
  uint32_t gen_;
  std::vector<int> divisors_;
  std::vector<uint32_t> exp_;  // g^k for k in [0, 2(n-1))
  std::vector<uint32_t> log_;  // log_[exp_[k]] = k, k < n-1
  std::vector<SubfieldData> subfields_;  // one per divisor of h
};

// Value-type element carrying its tower; the checked public surface.
class Elt {
public:
  Elt() : tw_(nullptr), v_(0) {}
  Elt(const FieldTower& tw, uint32_t v) : tw_(&tw), v_(v) {
    if (v >= tw.order()) throw std::invalid_argument("element index out of range");
  }

  const FieldTower& tower() const { return *tw_; }
  uint32_t index() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Elt operator+(Elt a, Elt b) { return Elt(a.same(b), a.tw_->add(a.v_, b.v_)); }
  friend Elt operator-(Elt a, Elt b) { return Elt(a.same(b), a.tw_->sub(a.v_, b.v_)); }
  friend Elt operator*(Elt a, Elt b) { return Elt(a.same(b), a.tw_->mul(a.v_, b.v_)); }
  friend Elt operator/(Elt a, Elt b) { return Elt(a.same(b), a.tw_->div(a.v_, b.v_)); }
  friend bool operator==(Elt a, Elt b) { return a.tw_ == b.tw_ && a.v_ == b.v_; }
  friend bool operator!=(Elt a, Elt b) { return !(a == b); }

  // the checked op surface restricts to subfield degrees
  Elt frobenius(int d) const {
    if (d < 1 || tw_->h() % d != 0)
      throw std::invalid_argument("degree does not divide the extension degree");
    return Elt(*tw_, tw_->frobenius(v_, d));
  }
  Elt trace_to(int d) const { return Elt(*tw_, tw_->trace_to(v_, d)); }
  bool is_square() const { return tw_->is_square(v_); }

private:
  const FieldTower& same(const Elt& o) const {
    if (tw_ != o.tw_) throw std::invalid_argument("field tower mismatch");
    return *tw_;
  }
  const FieldTower* tw_;
  uint32_t v_;
};

bool is_prime(long long v);
std::vector<long long> prime_factors(long long v);
// q = p^d with p prime; throws if q is not a prime power
void factor_prime_power(long long q, long long& p, int& d);

}  // namespace fieldred

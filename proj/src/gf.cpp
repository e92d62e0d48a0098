#include "fieldred/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace fieldred {
namespace {

constexpr uint32_t kMaxOrder = 4096;  // table-based arithmetic only

// Dense polynomials over GF(p), coefficients low-to-high.
using Poly = std::vector<long long>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  poly_trim(c);
  return c;
}

// a mod m, m monic
Poly poly_mod(Poly a, const Poly& m, long long p) {
  poly_trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    long long lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) {
      a[i + shift] = ((a[i + shift] - lead * m[i]) % p + p) % p;
    }
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long long p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

Poly poly_powmod(Poly base, long long e, const Poly& m, long long p) {
  Poly r = {1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

bool poly_is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

// Trial division against all monic polynomials of degree <= deg(f)/2.
bool poly_irreducible(const Poly& f, long long p) {
  int df = static_cast<int>(f.size()) - 1;
  if (df <= 0) return false;
  if (df == 1) return true;
  for (int e = 1; e <= df / 2; ++e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long m = 0; m < count; ++m) {
      Poly d(e + 1, 0);
      long long v = m;
      for (int i = 0; i < e; ++i) {
        d[i] = v % p;
        v /= p;
      }
      d[e] = 1;
      if (poly_mod(f, d, p).empty()) return false;
    }
  }
  return true;
}

bool root_is_primitive(const Poly& f, long long p, long long n) {
  Poly x = {0, 1};
  for (long long ell : prime_factors(n - 1)) {
    if (poly_is_one(poly_powmod(x, (n - 1) / ell, f, p))) return false;
  }
  return true;
}

Poly default_modulus(long long p, int h) {
  if (h == 1) return {0, 1};  // prime field, handled degenerately
  long long count = 1;
  for (int i = 0; i < h; ++i) count *= p;
  for (long long m = 0; m < count; ++m) {
    Poly f(h + 1, 0);
    long long v = m;
    for (int i = 0; i < h; ++i) {
      f[i] = v % p;
      v /= p;
    }
    f[h] = 1;
    if (!poly_irreducible(f, p)) continue;
    if (!root_is_primitive(f, p, count)) continue;
    return f;
  }
  throw std::logic_error("no primitive polynomial found");  // cannot happen
}

// Invert an n x n matrix over GF(p); returns empty on singular input.
std::vector<int> invert_gfp(std::vector<int> m, int n, long long p) {
  std::vector<int> inv(n * n, 0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
  auto inv_mod = [&](long long a) {
    long long r = 1, b = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (m[i * n + col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return {};
    for (int j = 0; j < n; ++j) {
      std::swap(m[piv * n + j], m[row * n + j]);
      std::swap(inv[piv * n + j], inv[row * n + j]);
    }
    long long s = inv_mod(m[row * n + col]);
    for (int j = 0; j < n; ++j) {
      m[row * n + j] = static_cast<int>(m[row * n + j] * s % p);
      inv[row * n + j] = static_cast<int>(inv[row * n + j] * s % p);
    }
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      long long f = m[i * n + col];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        m[i * n + j] = static_cast<int>(((m[i * n + j] - f * m[row * n + j]) % p + p) % p);
        inv[i * n + j] = static_cast<int>(((inv[i * n + j] - f * inv[row * n + j]) % p + p) % p);
      }
    }
    ++row;
  }
  if (row < n) return {};
  return inv;
}

}  // namespace

bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<long long> prime_factors(long long v) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

void factor_prime_power(long long q, long long& p, int& d) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  auto fs = prime_factors(q);
  if (fs.size() != 1) throw std::invalid_argument("field order is not a prime power");
  p = fs[0];
  d = 0;
  long long v = q;
  while (v > 1) {
    v /= p;
    ++d;
  }
  long long chk = 1;
  for (int i = 0; i < d; ++i) chk *= p;
  if (chk != q) throw std::invalid_argument("field order is not a prime power");
}

FieldTower::FieldTower(long long p, int h, std::vector<long long> modulus, bool default_mod)
    : p_(p), h_(h), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (h < 1) throw std::invalid_argument("extension degree must be positive");
  long long n = 1;
  for (int i = 0; i < h; ++i) {
    n *= p;
    if (n > kMaxOrder) throw std::invalid_argument("field order exceeds supported table size");
  }
  n_ = static_cast<uint32_t>(n);

  if (static_cast<int>(modulus_.size()) != h + 1 || modulus_.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree h");
  for (long long c : modulus_)
    if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficients must lie in [0,p)");
  if (h > 1 && !poly_irreducible(modulus_, p))
    throw std::invalid_argument("modulus is reducible");

  for (int d = 1; d <= h; ++d)
    if (h % d == 0) divisors_.push_back(d);

  // index <-> polynomial helpers
  auto poly_of = [&](uint32_t idx) {
    Poly f;
    uint32_t v = idx;
    while (v) {
      f.push_back(v % p);
      v /= p;
    }
    return f;
  };
  auto idx_of = [&](const Poly& f) {
    uint32_t idx = 0;
    for (size_t i = f.size(); i-- > 0;) idx = static_cast<uint32_t>(idx * p + f[i]);
    return idx;
  };

  // choose the generator: the modulus root when primitive, otherwise the
  // smallest primitive element
  uint32_t gen = 0;
  if (h == 1) {
    if (p == 2) {
      gen = 1;
    } else {
      for (uint32_t c = 2; c < n_; ++c) {
        bool prim = true;
        for (long long ell : prime_factors(n - 1)) {
          long long r = 1, b = c, e = (n - 1) / ell;
          while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
          }
          if (r == 1) {
            prim = false;
            break;
          }
        }
        if (prim) {
          gen = c;
          break;
        }
      }
    }
  } else {
    auto primitive = [&](const Poly& e) {
      for (long long ell : prime_factors(n - 1))
        if (poly_is_one(poly_powmod(e, (n - 1) / ell, modulus_, p))) return false;
      return true;
    };
    Poly root = {0, 1};
    if (primitive(root)) {
      gen = idx_of(root);
    } else {
      if (default_mod) throw std::logic_error("default modulus root not primitive");
      for (uint32_t c = 2; c < n_; ++c) {
        if (primitive(poly_of(c))) {
          gen = c;
          break;
        }
      }
      if (gen == 0) throw std::invalid_argument("no primitive root adjustment possible");
    }
  }
  gen_ = gen;

  // exp/log tables from the primitive generator
  exp_.assign(2 * (n_ - 1), 0);
  log_.assign(n_, 0);
  Poly cur = {1};
  Poly gp = poly_of(gen_);
  for (uint32_t k = 0; k < n_ - 1; ++k) {
    uint32_t idx = idx_of(cur);
    exp_[k] = idx;
    exp_[k + (n_ - 1)] = idx;
    log_[idx] = k;
    cur = poly_mulmod(cur, gp, modulus_, p);
  }
  if (!poly_is_one(cur)) throw std::logic_error("generator order mismatch");

  // per-divisor subfield data
  subfields_.resize(divisors_.size());
  for (size_t di = 0; di < divisors_.size(); ++di) {
    int d = divisors_[di];
    SubfieldData& sd = subfields_[di];
    sd.d = d;
    for (uint32_t x = 0; x < n_; ++x)
      if (frobenius(x, d) == x) sd.elements.push_back(x);

    long long sub_order = 1;
    for (int i = 0; i < d; ++i) sub_order *= p;
    if (static_cast<long long>(sd.elements.size()) != sub_order)
      throw std::logic_error("subfield size mismatch");

    // GF(p)-basis {1, u, ..., u^{d-1}} of the subfield, u of order p^d - 1
    uint32_t u = (sub_order == 2) ? 1 : exp_[(n_ - 1) / (sub_order - 1)];
    sd.upow.resize(d);
    sd.upow[0] = 1;
    for (int i = 1; i < d; ++i) sd.upow[i] = mul(sd.upow[i - 1], u);

    // change of basis: column (i + d*j) holds coeffs(u^i * g^j)
    int m = h / d;
    std::vector<int> basis(h * h, 0);
    for (int j = 0; j < m; ++j) {
      uint32_t gj = pow(gen_, j);
      for (int i = 0; i < d; ++i) {
        auto c = coeffs(mul(sd.upow[i], gj));
        for (int row = 0; row < h; ++row) basis[row * h + (i + d * j)] = c[row];
      }
    }
    sd.basis_inv = invert_gfp(std::move(basis), h, p);
    if (sd.basis_inv.empty()) throw std::logic_error("subfield basis is singular");
  }
}

const FieldTower::SubfieldData& FieldTower::subfield_data(int d) const {
  for (size_t i = 0; i < divisors_.size(); ++i)
    if (divisors_[i] == d) return subfields_[i];
  throw std::invalid_argument("degree does not divide the extension degree");
}

uint32_t FieldTower::add(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  uint32_t r = 0, mult = 1;
  while (a || b) {
    uint32_t da = a % p_, db = b % p_;
    r += ((da + db) % p_) * mult;
    mult *= static_cast<uint32_t>(p_);
    a /= static_cast<uint32_t>(p_);
    b /= static_cast<uint32_t>(p_);
  }
  return r;
}

uint32_t FieldTower::neg(uint32_t a) const {
  if (p_ == 2) return a;
  uint32_t r = 0, mult = 1;
  while (a) {
    uint32_t da = a % p_;
    r += (da ? static_cast<uint32_t>(p_) - da : 0) * mult;
    mult *= static_cast<uint32_t>(p_);
    a /= static_cast<uint32_t>(p_);
  }
  return r;
}

uint32_t FieldTower::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldTower::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero");
  return exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
}

uint32_t FieldTower::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

uint32_t FieldTower::pow(uint32_t a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("division by zero");
    return e == 0 ? 1 : 0;
  }
  long long m = n_ - 1;
  long long k = (static_cast<long long>(log_[a]) * (e % m)) % m;
  if (k < 0) k += m;
  return exp_[k];
}

uint32_t FieldTower::frobenius(uint32_t x, int d) const {
  if (d < 0) throw std::invalid_argument("negative frobenius power");
  if (x == 0) return 0;
  long long m = n_ - 1;
  long long e = 1;
  for (int i = 0; i < d; ++i) e = e * p_ % m;
  return exp_[(log_[x] * e) % m];
}

uint32_t FieldTower::trace_to(uint32_t x, int d) const {
  if (h_ % d != 0) throw std::invalid_argument("degree does not divide the extension degree");
  int t = h_ / d;
  uint32_t acc = 0, cur = x;
  for (int i = 0; i < t; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur, d);
  }
  return acc;
}

bool FieldTower::is_square(uint32_t x) const {
  if (x == 0) throw std::domain_error("squareness of zero is undefined");
  if (p_ == 2) return true;
  return log_[x] % 2 == 0;
}

bool FieldTower::in_subfield(uint32_t x, int d) const {
  if (h_ % d != 0) throw std::invalid_argument("degree does not divide the extension degree");
  return frobenius(x, d) == x;
}

const std::vector<uint32_t>& FieldTower::subfield_elements(int d) const {
  return subfield_data(d).elements;
}

std::vector<uint32_t> FieldTower::to_vector(uint32_t x, int d) const {
  const SubfieldData& sd = subfield_data(d);
  int m = h_ / d;
  auto c = coeffs(x);
  std::vector<int> a(h_, 0);
  for (int row = 0; row < h_; ++row) {
    long long acc = 0;
    for (int col = 0; col < h_; ++col) acc += static_cast<long long>(sd.basis_inv[row * h_ + col]) * c[col];
    a[row] = static_cast<int>(acc % p_);
  }
  std::vector<uint32_t> out(m, 0);
  for (int j = 0; j < m; ++j) {
    uint32_t cj = 0;
    for (int i = 0; i < d; ++i) {
      uint32_t term = mul(sd.upow[i], static_cast<uint32_t>(a[i + d * j]));
      cj = add(cj, term);
    }
    out[j] = cj;
  }
  return out;
}

uint32_t FieldTower::from_vector(const std::vector<uint32_t>& v, int d) const {
  int m = h_ / d;
  if (static_cast<int>(v.size()) != m) throw std::invalid_argument("vector length mismatch");
  uint32_t acc = 0;
  for (int j = 0; j < m; ++j) {
    if (!in_subfield(v[j], d)) throw std::invalid_argument("entry outside the subfield");
    acc = add(acc, mul(v[j], pow(gen_, j)));
  }
  return acc;
}

std::vector<int> FieldTower::coeffs(uint32_t x) const {
  std::vector<int> c(h_, 0);
  for (int i = 0; i < h_; ++i) {
    c[i] = static_cast<int>(x % p_);
    x /= static_cast<uint32_t>(p_);
  }
  return c;
}

uint32_t FieldTower::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != h_) throw std::invalid_argument("coefficient count mismatch");
  uint32_t x = 0;
  for (int i = h_; i-- > 0;) {
    if (c[i] < 0 || c[i] >= p_) throw std::invalid_argument("coefficient out of range");
    x = static_cast<uint32_t>(x * p_ + c[i]);
  }
  return x;
}

long long FieldTower::multiplicative_order(uint32_t x) const {
  if (x == 0) throw std::domain_error("zero has no multiplicative order");
  long long m = n_ - 1;
  long long ord = m / std::gcd<long long>(m, log_[x]);
  return ord;
}

std::string FieldTower::format(uint32_t x) const {
  auto c = coeffs(x);
  if (h_ == 1) return std::to_string(c[0]);
  std::string s = "[";
  for (int i = 0; i < h_; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  s += "]";
  return s;
}

uint32_t FieldTower::parse_element(const std::string& s) const {
  std::string t = s;
  while (!t.empty() && t.front() == ' ') t.erase(t.begin());
  while (!t.empty() && t.back() == ' ') t.pop_back();
  if (t.empty()) throw std::invalid_argument("empty element literal");
  if (t.front() == '[') {
    if (t.back() != ']') throw std::invalid_argument("unterminated digit list");
    std::vector<int> c;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(std::stoi(item));
    if (static_cast<int>(c.size()) != h_) throw std::invalid_argument("digit count mismatch");
    return from_coeffs(c);
  }
  long long v = std::stoll(t);
  if (v < 0 || v >= n_) throw std::invalid_argument("element index out of range");
  return static_cast<uint32_t>(v);
}

std::string FieldTower::spec_string() const {
  std::string s = std::to_string(p_) + "^" + std::to_string(h_);
  return s;
}

const FieldTower& FieldTower::intern(long long p, int h, std::vector<long long> modulus,
                                     bool default_mod) {
  static std::mutex mutex;
  static std::map<std::tuple<long long, int, std::vector<long long>>,
                  std::unique_ptr<FieldTower>>
      towers;
  std::lock_guard<std::mutex> lk(mutex);
  auto key = std::make_tuple(p, h, modulus);
  auto it = towers.find(key);
  if (it == towers.end()) {
    auto tw = std::unique_ptr<FieldTower>(new FieldTower(p, h, std::move(modulus), default_mod));
    it = towers.emplace(std::move(key), std::move(tw)).first;
  }
  return *it->second;
}

const FieldTower& FieldTower::get(long long p, int h) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (h < 1) throw std::invalid_argument("extension degree must be positive");
  return intern(p, h, default_modulus(p, h), true);
}

const FieldTower& FieldTower::get(long long p, int h, const std::vector<long long>& modulus) {
  return intern(p, h, modulus, false);
}

const FieldTower& FieldTower::parse_spec(const std::string& spec) {
  auto caret = spec.find('^');
  if (caret == std::string::npos) {
    long long q = std::stoll(spec);
    long long p;
    int d;
    factor_prime_power(q, p, d);
    return get(p, d);
  }
  long long p = std::stoll(spec.substr(0, caret));
  auto colon = spec.find(':', caret);
  int h = std::stoi(spec.substr(caret + 1, colon == std::string::npos ? std::string::npos
                                                                       : colon - caret - 1));
  if (colon == std::string::npos) return get(p, h);
  std::string rest = spec.substr(colon + 1);
  const std::string key = "poly=";
  if (rest.rfind(key, 0) != 0) throw std::invalid_argument("bad field spec: " + spec);
  std::vector<long long> mod;
  std::stringstream ss(rest.substr(key.size()));
  std::string item;
  while (std::getline(ss, item, ',')) mod.push_back(std::stoll(item));
  return get(p, h, mod);
}

}  // namespace fieldred

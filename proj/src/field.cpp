#include "cforge/field.hpp"

#include <map>
#include <mutex>

namespace cforge {

namespace {

// Dense polynomial over GF(p), constant term first, no trailing zeros.
using Poly = std::vector<u32>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (u32)((c[i + j] + (u64)a[i] * b[j]) % p);
  trim(c);
  return c;
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, u64 p) {
  trim(a);
  while (a.size() >= b.size()) {
    u64 lead = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      u64 sub = lead * b[i] % p;
      u64 cur = a[i + shift];
      a[i + shift] = (u32)((cur + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic before reducing
    u64 c = invmod(b.back(), p);
    for (auto& x : b) x = (u32)(x * c % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^j) - x reduced mod f, as a polynomial.
Poly frob_minus_x(u32 j, const Poly& f, u64 p) {
  u64 pj = 1;
  for (u32 i = 0; i < j; ++i) pj *= p;
  Poly g = poly_powmod(Poly{0, 1}, pj, f, p);
  if (g.size() < 2) g.resize(2, 0);
  g[1] = (u32)((g[1] + p - 1) % p);
  trim(g);
  return g;
}

// f monic of degree k >= 2: irreducible iff x^(p^k) == x mod f and for
// every prime t | k, gcd(x^(p^(k/t)) - x, f) = 1.
bool poly_irreducible(const Poly& f, u64 p) {
  u32 k = (u32)f.size() - 1;
  if (!frob_minus_x(k, f, p).empty()) return false;
  for (auto [t, e] : factorize(k)) {
    (void)e;
    Poly g = frob_minus_x(k / t, f, p);
    if (g.empty()) return false;  // all roots in a proper subfield
    if (poly_gcd(g, f, p).size() > 1) return false;
  }
  return true;
}

Poly decode(u32 code, u64 p) {
  Poly f;
  while (code) {
    f.push_back(code % (u32)p);
    code /= (u32)p;
  }
  return f;
}

u32 encode(const Poly& f, u64 p) {
  u64 code = 0;
  for (size_t i = f.size(); i-- > 0;) code = code * p + f[i];
  return (u32)code;
}

}  // namespace

Field::Field(u64 p, u32 k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic not prime");
  if (k < 1) throw std::invalid_argument("field degree must be >= 1");
  q_ = 1;
  for (u32 i = 0; i < k; ++i) {
    q_ *= p;
    if (q_ > kMaxQ) throw std::invalid_argument("field size cap exceeded");
  }
  if (k == 1) {
    modulus_ = {0, 1};  // x, by convention; arithmetic is plain mod p
  } else {
    // Scan monic degree-k polynomials x^k + c in increasing code order of
    // the lower part c; the first irreducible wins.
    for (u32 low = 0;; ++low) {
      Poly f = decode(low, p);
      if (f.size() > k) throw std::logic_error("no irreducible found");
      f.resize(k + 1, 0);
      f[k] = 1;
      if (poly_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }

  if (q_ <= 1024) {
    mul_table_.assign((size_t)q_ * q_, 0);
    for (u32 a = 0; a < q_; ++a)
      for (u32 b = a; b < q_; ++b) {
        u32 v = mul_slow(a, b);
        mul_table_[(size_t)a * q_ + b] = v;
        mul_table_[(size_t)b * q_ + a] = v;
      }
    inv_table_.assign(q_, 0);
    for (u32 a = 1; a < q_; ++a) {
      if (inv_table_[a]) continue;
      u32 b = pow(a, q_ - 2);
      inv_table_[a] = b;
      inv_table_[b] = a;
    }
  }

  // Certify a primitive element: order exactly q-1.
  auto fac = factorize(q_ - 1);
  for (u32 g = 1; g < q_; ++g) {
    bool prim = true;
    for (auto [r, e] : fac) {
      (void)e;
      if (pow(g, (q_ - 1) / r) == 1) {
        prim = false;
        break;
      }
    }
    if (prim) {
      generator_ = g;
      break;
    }
  }
}

u32 Field::add(u32 a, u32 b) const {
  if (k_ == 1) return (u32)(((u64)a + b) % p_);
  u32 out = 0;
  u64 mult = 1;
  for (u32 i = 0; i < k_; ++i) {
    u64 da = a % p_, db = b % p_;
    a /= (u32)p_;
    b /= (u32)p_;
    out += (u32)(((da + db) % p_) * mult);
    mult *= p_;
  }
  return out;
}

u32 Field::neg(u32 a) const {
  if (k_ == 1) return a == 0 ? 0 : (u32)(p_ - a);
  u32 out = 0;
  u64 mult = 1;
  for (u32 i = 0; i < k_; ++i) {
    u64 da = a % p_;
    a /= (u32)p_;
    out += (u32)(((p_ - da) % p_) * mult);
    mult *= p_;
  }
  return out;
}

u32 Field::sub(u32 a, u32 b) const { return add(a, neg(b)); }

u32 Field::mul_slow(u32 a, u32 b) const {
  if (k_ == 1) return (u32)((u64)a * b % p_);
  Poly r = poly_mod(poly_mul(decode(a, p_), decode(b, p_), p_), modulus_, p_);
  return encode(r, p_);
}

u32 Field::mul(u32 a, u32 b) const {
  if (!mul_table_.empty()) return mul_table_[(size_t)a * q_ + b];
  return mul_slow(a, b);
}

u32 Field::pow(u32 a, u64 e) const {
  u32 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u32 Field::inv(u32 a) const {
  assert(a != 0 && "division by zero in GF(q)");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

u32 Field::frobenius(u32 a) const { return pow(a, p_); }

u32 Field::frobenius_pow(u32 a, u32 j) const {
  for (u32 i = 0; i < j % k_; ++i) a = frobenius(a);
  return a;
}

u32 Field::from_int(i64 n) const {
  i64 r = n % (i64)p_;
  if (r < 0) r += (i64)p_;
  return (u32)r;
}

std::shared_ptr<const Field> field_make(u64 p, u32 k) {
  static std::mutex mu;
  static std::map<std::pair<u64, u32>, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(p, k);
  cache.emplace(key, f);
  return f;
}

}  // namespace cforge

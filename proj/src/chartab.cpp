#include "cforge/chartab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "cforge/modmat.hpp"

namespace cforge {

namespace {

u64 isqrt_u64(u64 n) {
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// subspace of F_ell^k kept in reduced echelon form so coordinates of any
// vector in the basis fall out of the pivot columns
struct Subspace {
  std::vector<ModVec> basis;
  std::vector<u32> pivots;
};

struct RowData {
  u64 deg = 0;
  ModVec chi_mod;            // character values mod ell
  std::vector<Cyclo> vals;   // lifted values
};

}  // namespace

CharTable character_table(std::shared_ptr<const ClassTable> tp) {
  const ClassTable& t = *tp;
  const u32 k = t.count();
  if (k > 200) throw SizeCapExceeded("character table beyond 200 classes");
  const u64 n = t.group().order();
  const u32 e = (u32)t.exponent();
  const u64 ell = prime_in_progression(e, 2 * isqrt_u64(n) + 1);

  auto class_matrix = [&](u32 i) {
    ModMat m(k, ModVec(k, 0));
    for (u32 j = 0; j < k; ++j)
      for (const auto& [kk, a] : product_support(t, i, j).entries)
        m[j][kk] = a % ell;
    return m;
  };

  // start from the full space and split along one class-sum matrix at a
  // time; the matrices commute, so eigenspaces stay invariant throughout
  std::vector<Subspace> spaces(1);
  for (u32 j = 0; j < k; ++j) {
    ModVec v(k, 0);
    v[j] = 1;
    spaces[0].basis.push_back(std::move(v));
    spaces[0].pivots.push_back(j);
  }

  std::vector<u32> order;
  for (u32 i = 1; i < k; ++i) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](u32 a, u32 b) { return t.size(a) < t.size(b); });

  for (u32 ci : order) {
    bool done = true;
    for (const auto& sp : spaces) done = done && sp.basis.size() == 1;
    if (done) break;
    ModMat M = class_matrix(ci);
    std::vector<Subspace> next;
    for (auto& sp : spaces) {
      size_t d = sp.basis.size();
      if (d == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // matrix of M restricted to the subspace, column per basis vector
      ModMat R(d, ModVec(d, 0));
      for (size_t b = 0; b < d; ++b) {
        ModVec w = mat_vec(M, sp.basis[b], ell);
        for (size_t i = 0; i < d; ++i) {
          u64 c = w[sp.pivots[i]];
          R[i][b] = c;
          if (c)
            for (u32 col = 0; col < k; ++col)
              w[col] = mod_sub(w[col], mulmod(c, sp.basis[i][col], ell), ell);
        }
        for (u64 x : w) {
          assert(x == 0);  // invariance of the subspace
          (void)x;
        }
      }
      std::vector<u64> cp = charpoly(R, ell);
      size_t found = 0;
      for (u64 lam = 0; lam < ell && found < d; ++lam) {
        if (poly_eval(cp, lam, ell) != 0) continue;
        ModMat S = R;
        for (size_t i = 0; i < d; ++i) S[i][i] = mod_sub(S[i][i], lam, ell);
        auto ker = kernel_basis(std::move(S), ell);
        assert(!ker.empty());
        ModMat lifted;
        for (const auto& cvec : ker) {
          ModVec v(k, 0);
          for (size_t b = 0; b < d; ++b)
            if (cvec[b])
              for (u32 col = 0; col < k; ++col)
                v[col] =
                    (v[col] + mulmod(cvec[b], sp.basis[b][col], ell)) % ell;
          lifted.push_back(std::move(v));
        }
        Subspace ns;
        ns.pivots = rref(lifted, ell);
        assert(lifted.size() == ker.size());
        ns.basis = std::move(lifted);
        found += ns.basis.size();
        next.push_back(std::move(ns));
      }
      assert(found == d);  // the class algebra is semisimple mod ell
    }
    spaces = std::move(next);
  }
  assert(spaces.size() == k);
  for (const auto& sp : spaces) {
    assert(sp.basis.size() == 1);
    (void)sp;
  }

  // each line carries the central character omega(C_j) once scaled so the
  // identity-class coordinate is 1; degrees come from sum_j w_j w_j* / |C_j|
  std::vector<RowData> rows(k);
  u64 sum_sq = 0;
  for (u32 r = 0; r < k; ++r) {
    ModVec v = spaces[r].basis[0];
    assert(v[0] != 0);
    u64 sc = invmod(v[0], ell);
    for (auto& x : v) x = mulmod(x, sc, ell);
    u64 s = 0;
    for (u32 j = 0; j < k; ++j)
      s = (s + mulmod(mulmod(v[j], v[t.inverse_class(j)], ell),
                      invmod(t.size(j) % ell, ell), ell)) %
          ell;
    assert(s != 0);
    u64 d2 = mulmod(n % ell, invmod(s, ell), ell);
    u64 d = sqrtmod(d2, ell);
    assert(d > 0 && mulmod(d, d, ell) == d2 && d <= isqrt_u64(n));
    rows[r].deg = d;
    sum_sq += d * d;
    rows[r].chi_mod.resize(k);
    for (u32 j = 0; j < k; ++j)
      rows[r].chi_mod[j] =
          mulmod(mulmod(d, v[j], ell), invmod(t.size(j) % ell, ell), ell);
    assert(n % d == 0);
  }
  assert(sum_sq == n);  // degrees are genuine integers below ell/2

  // values as eigenvalue multiplicities: chi(g_j^s) runs over the power
  // classes, and the inverse transform at the ord(g_j)-th root recovers each
  // multiplicity as an exact residue below ell
  RootModPrime zl = root_mod_prime(e, ell);
  for (auto& row : rows) {
    row.vals.assign(k, Cyclo(e));
    for (u32 j = 0; j < k; ++j) {
      u64 o = t.element_order(j);
      u64 stride = e / o;
      u64 oinv = invmod(o % ell, ell);
      u64 total = 0;
      for (u64 ti = 0; ti < o; ++ti) {
        u64 m = 0;
        for (u64 s = 0; s < o; ++s) {
          u64 cls = t.power_class(j, s);
          u64 idx = ((o - (ti * s) % o) % o) * stride;
          m = (m + mulmod(row.chi_mod[cls], zl.zeta_pow[idx % e], ell)) % ell;
        }
        m = mulmod(m, oinv, ell);
        assert(m <= row.deg);
        if (m) row.vals[j].mults[(size_t)(ti * stride)] = (i64)m;
        total += m;
      }
      assert(total == row.deg);
    }
  }

  // deterministic order: degree, then mult vectors high-first so the
  // all-ones trivial row lands at index 0
  std::vector<u32> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](u32 a, u32 b) {
    if (rows[a].deg != rows[b].deg) return rows[a].deg < rows[b].deg;
    for (u32 j = 0; j < k; ++j)
      if (rows[a].vals[j].mults != rows[b].vals[j].mults)
        return rows[a].vals[j].mults > rows[b].vals[j].mults;
    return false;
  });

  CharTable tab;
  tab.t_ = tp;
  tab.e_ = e;
  tab.ell_ = ell;
  tab.ctx_ = std::make_shared<CycloCtx>(e, ell);
  for (u32 r : perm) {
    tab.degrees_.push_back(rows[r].deg);
    tab.values_.push_back(std::move(rows[r].vals));
  }
  assert(tab.degrees_[0] == 1);
  for (u32 j = 0; j < k; ++j)
    assert(tab.values_[0][j].mults == Cyclo::integer(e, 1).mults);

  // certify both orthogonality relations at the two verification primes,
  // which are independent of the lifting prime by construction
  for (size_t pi = 0; pi < 2; ++pi) {
    u64 p = tab.ctx_->prime(pi).p;
    ModMat V(k, ModVec(k));
    for (u32 r = 0; r < k; ++r)
      for (u32 j = 0; j < k; ++j) V[r][j] = tab.ctx_->eval_mod(tab.values_[r][j], pi);
    for (u32 r1 = 0; r1 < k; ++r1)
      for (u32 r2 = r1; r2 < k; ++r2) {
        u64 s = 0;
        for (u32 j = 0; j < k; ++j)
          s = (s + mulmod(mulmod(t.size(j) % p, V[r1][j], p),
                          V[r2][t.inverse_class(j)], p)) %
              p;
        assert(s == (r1 == r2 ? n % p : 0));
        (void)s;
      }
    for (u32 i = 0; i < k; ++i)
      for (u32 j = i; j < k; ++j) {
        u64 s = 0;
        for (u32 r = 0; r < k; ++r)
          s = (s + mulmod(V[r][i], V[r][t.inverse_class(j)], p)) % p;
        assert(s == (i == j ? t.centralizer_order(i) % p : 0));
        (void)s;
      }
  }
  return tab;
}

std::vector<Cyclo> character_row(const CharTable& t, u32 r) {
  std::vector<Cyclo> v;
  for (u32 j = 0; j < t.classes().count(); ++j) v.push_back(t.value(r, j));
  return v;
}

std::vector<Cyclo> to_class_function(const CharTable& t,
                                     const std::vector<i64>& vals) {
  if (vals.size() != t.classes().count())
    throw std::invalid_argument("class function length mismatch");
  std::vector<Cyclo> v;
  for (i64 x : vals) v.push_back(Cyclo::integer(t.conductor(), x));
  return v;
}

Rational inner_product(const CharTable& tab, const std::vector<Cyclo>& phi,
                       const std::vector<Cyclo>& psi) {
  const ClassTable& t = tab.classes();
  const u32 k = t.count();
  if (phi.size() != k || psi.size() != k)
    throw std::invalid_argument("class function length mismatch");
  Cyclo s(tab.conductor());
  for (u32 j = 0; j < k; ++j)
    s = cyclo_add(s, cyclo_scale(cyclo_mul(phi[j], psi[t.inverse_class(j)]),
                                 (i64)t.size(j)));
  auto v = cyclo_as_integer(s, tab.ctx());
  if (!v) throw std::domain_error("inner product is not rational");
  u64 n = t.group().order();
  u64 g = std::gcd((u64)(*v < 0 ? -*v : *v), n);
  if (g == 0) g = n;
  return Rational{*v / (i64)g, n / g};
}

bool restriction_is_irreducible(const CharTable& gtab, const ClassTable& htab,
                                const FusionMap& fusion, u32 chi) {
  const u32 kh = htab.count();
  if (fusion.to_g.size() != kh)
    throw std::invalid_argument("fusion does not match subgroup class table");
  Cyclo s(gtab.conductor());
  for (u32 j = 0; j < kh; ++j)
    s = cyclo_add(
        s, cyclo_scale(
               cyclo_mul(gtab.value(chi, fusion.to_g[j]),
                         gtab.value(chi, fusion.to_g[htab.inverse_class(j)])),
               (i64)htab.size(j)));
  auto v = cyclo_as_integer(s, gtab.ctx());
  assert(v.has_value());
  u64 nh = htab.group().order();
  assert(*v > 0 && (u64)*v % nh == 0);  // norm of a genuine character
  return (u64)*v == nh;
}

std::vector<i64> fixed_point_character(const ClassTable& t) {
  std::vector<i64> f;
  for (u32 i = 0; i < t.count(); ++i)
    f.push_back((i64)fixed_points(t.rep(i)));
  return f;
}

u32 steinberg_character(const CharTable& tab, u64 p) {
  const ClassTable& t = tab.classes();
  u64 rest = t.group().order(), pp = 1;
  while (rest % p == 0) {
    pp *= p;
    rest /= p;
  }
  std::vector<u32> hits;
  for (u32 r = 0; r < tab.rows(); ++r) {
    if (tab.degree(r) != pp) continue;
    bool vanishes = true;
    for (u32 j = 0; j < t.count() && vanishes; ++j)
      if (t.element_order(j) % p == 0 &&
          !cyclo_is_zero(tab.value(r, j), tab.ctx()))
        vanishes = false;
    if (vanishes) hits.push_back(r);
  }
  if (hits.size() != 1)
    throw SteinbergNotIdentified(
        "rows of p-part degree vanishing on p-singular classes: " +
        std::to_string(hits.size()));
  return hits[0];
}

std::optional<std::pair<u32, u32>> nonconstancy_witness(
    const CharTable& tab, u32 chi, const ProductSupport& support) {
  if (support.entries.empty()) return std::nullopt;
  u32 k0 = support.entries[0].first;
  for (size_t i = 1; i < support.entries.size(); ++i) {
    u32 k1 = support.entries[i].first;
    if (!cyclo_equal(tab.value(chi, k0), tab.value(chi, k1), tab.ctx()))
      return std::make_pair(k0, k1);
  }
  return std::nullopt;
}

u64 structure_constant_char(const CharTable& tab, u32 i, u32 j, u32 k) {
  const ClassTable& t = tab.classes();
  if (i >= t.count() || j >= t.count() || k >= t.count())
    throw std::out_of_range("class index out of range");
  const u64 n = t.group().order();
  const u64 bound = std::min(t.size(i), t.size(j));
  const u32 kinv = t.inverse_class(k);

  auto eval_at = [&](size_t pi) {
    u64 p = tab.ctx().prime(pi).p;
    u64 s = 0;
    for (u32 r = 0; r < tab.rows(); ++r) {
      u64 prod = mulmod(tab.ctx().eval_mod(tab.value(r, i), pi),
                        tab.ctx().eval_mod(tab.value(r, j), pi), p);
      prod = mulmod(prod, tab.ctx().eval_mod(tab.value(r, kinv), pi), p);
      s = (s + mulmod(prod, invmod(tab.degree(r) % p, p), p)) % p;
    }
    u64 a = mulmod(mulmod(t.size(i) % p, t.size(j) % p, p), invmod(n % p, p), p);
    return mulmod(a, s, p);
  };

  u128 modulus = 1, x = 0;
  size_t used = 0;
  while (modulus <= (u128)bound) {
    u64 p = tab.ctx().prime(used).p;
    u64 want = eval_at(used);
    u64 have = (u64)(x % p);
    u64 diff = (want + p - have) % p;
    x += modulus * (u128)mulmod(diff, invmod((u64)(modulus % p), p), p);
    modulus *= p;
    ++used;
  }
  assert(x <= (u128)bound);  // integrality of the character formula
  u64 vp = tab.ctx().prime(used).p;
  u64 confirm = eval_at(used);
  assert(confirm == (u64)(x % vp));
  (void)confirm;
  (void)vp;
  return (u64)x;
}

}  // namespace cforge

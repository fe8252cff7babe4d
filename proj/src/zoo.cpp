#include "cforge/zoo.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "cforge/mathieu_data.hpp"

namespace cforge {

namespace {

using nlohmann::json;

// Orders above the cap are rejected long before they matter, so u128
// arithmetic only has to survive until the cap check fires.
constexpr u128 kGuard = (u128)1 << 100;

u128 upow(u64 b, u64 e) {
  u128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= b;
    if (r > kGuard) throw SizeCapExceeded("family size overflows the caps");
  }
  return r;
}

bool prime_power(u64 q, u64& p, u32& k) {
  if (q < 2) return false;
  auto f = factorize(q);
  if (f.size() != 1) return false;
  p = f[0].first;
  k = (u32)f[0].second;
  return true;
}

u128 guard_mul(u128 a, u128 b) {
  if (a > kGuard / (b ? b : 1)) throw SizeCapExceeded("family size overflows the caps");
  return a * b;
}

u128 order_gl(u32 d, u64 q) {
  u128 qd = upow(q, d), o = 1;
  for (u32 i = 0; i < d; ++i) o = guard_mul(o, qd - upow(q, i));
  return o;
}

u128 order_gu(u32 d, u64 q) {
  u128 o = upow(q, (u64)d * (d - 1) / 2);
  for (u32 i = 1; i <= d; ++i) {
    u128 t = upow(q, i);
    o = guard_mul(o, (i % 2) ? t + 1 : t - 1);
  }
  return o;
}

u128 order_sp(u32 d, u64 q) {
  u32 h = d / 2;
  u128 o = upow(q, (u64)h * h);
  for (u32 i = 1; i <= h; ++i) o = guard_mul(o, upow(q, 2 * i) - 1);
  return o;
}

u128 factorial(u32 n) {
  u128 o = 1;
  for (u32 i = 2; i <= n; ++i) o = guard_mul(o, i);
  return o;
}

// ---------------------------------------------------------------------
// point bookkeeping

std::vector<u32> decode_vec(u64 idx, u32 d, u64 q) {
  std::vector<u32> v(d);
  for (u32 j = 0; j < d; ++j) {
    v[j] = (u32)(idx % q);
    idx /= q;
  }
  return v;
}

u64 key_of(const std::vector<u32>& v, u64 q) {
  u64 k = 0;
  for (size_t j = v.size(); j-- > 0;) k = k * q + v[j];
  return k;
}

void normalize_point(const Field& F, std::vector<u32>& v) {
  for (u32 j = 0; j < v.size(); ++j) {
    if (!v[j]) continue;
    if (v[j] != 1) {
      u32 s = F.inv(v[j]);
      for (u32 t = j; t < v.size(); ++t) v[t] = F.mul(v[t], s);
    }
    return;
  }
  assert(false && "normalize_point: zero vector");
}

std::vector<std::vector<u32>> enumerate_vectors(const Field& F, u32 d) {
  u64 total = (u64)upow(F.q(), d);
  std::vector<std::vector<u32>> out;
  out.reserve(total - 1);
  for (u64 idx = 1; idx < total; ++idx) out.push_back(decode_vec(idx, d, F.q()));
  return out;
}

std::vector<std::vector<u32>> enumerate_projective(const Field& F, u32 d) {
  u64 total = (u64)upow(F.q(), d);
  std::vector<std::vector<u32>> out;
  for (u64 idx = 1; idx < total; ++idx) {
    auto v = decode_vec(idx, d, F.q());
    u32 lead = 0;
    while (!v[lead]) ++lead;
    if (v[lead] == 1) out.push_back(std::move(v));
  }
  assert((u128)out.size() * (F.q() - 1) == upow(F.q(), d) - 1);
  return out;
}

std::vector<u32> basis_vec(u32 d, u32 i) {
  std::vector<u32> v(d, 0);
  v[i] = 1;
  return v;
}

// ---------------------------------------------------------------------
// extra matrix constructions beyond symplectic_transvection

Mat diag_mat(std::shared_ptr<const Field> f, u32 d,
             const std::vector<std::pair<u32, u32>>& entries) {
  Mat m = Mat::identity(std::move(f), d);
  for (auto [i, c] : entries) m.at(i, i) = c;
  return m;
}

Mat elementary(std::shared_ptr<const Field> f, u32 d, u32 i, u32 j, u32 c) {
  Mat m = Mat::identity(std::move(f), d);
  m.at(i, j) = c;
  return m;
}

// x -> x + lambda * h(x, v) * v for isotropic v and trace-zero lambda.
Mat hermitian_transvection(const FormSpec& f, const std::vector<u32>& v,
                           u32 lambda) {
  auto fld = f.gram.field_ptr();
  const Field& F = *fld;
  u32 d = f.gram.n();
  assert(form_value(f, v, v) == 0);
  Mat m = Mat::identity(fld, d);
  for (u32 i = 0; i < d; ++i) {
    u32 coeff = F.mul(lambda, form_value(f, basis_vec(d, i), v));
    for (u32 j = 0; j < d; ++j)
      m.at(i, j) = F.add(m.at(i, j), F.mul(coeff, v[j]));
  }
  return m;
}

// Reflection through an anisotropic vector, q odd.
Mat reflection(const FormSpec& f, const std::vector<u32>& v) {
  auto fld = f.gram.field_ptr();
  const Field& F = *fld;
  u32 d = f.gram.n();
  u32 qv = form_value(f, v, v);
  assert(qv != 0);
  u32 scale = F.mul(F.from_int(2), F.inv(qv));
  Mat m = Mat::identity(fld, d);
  for (u32 i = 0; i < d; ++i) {
    u32 coeff = F.mul(scale, form_value(f, basis_vec(d, i), v));
    for (u32 j = 0; j < d; ++j)
      m.at(i, j) = F.sub(m.at(i, j), F.mul(coeff, v[j]));
  }
  return m;
}

// Permutation matrix of the 3-cycle (a b c) on coordinates.
Mat three_cycle_mat(std::shared_ptr<const Field> f, u32 d, u32 a, u32 b,
                    u32 c) {
  Mat m(std::move(f), d);
  for (u32 i = 0; i < d; ++i) m.at(i, i) = 1;
  m.at(a, a) = m.at(b, b) = m.at(c, c) = 0;
  m.at(a, b) = m.at(b, c) = m.at(c, a) = 1;
  return m;
}

// ---------------------------------------------------------------------
// staged matrix-group assembly

struct FamilyBuild {
  GroupSpec spec;
  std::string name;
  u64 p = 0;
  std::shared_ptr<const Field> field;
  u32 dim = 0;
  FormSpec form;
  bool projective = false;
  u128 expect = 0;
  // Cumulative generator stages; the last stage must provably generate.
  std::vector<std::vector<Mat>> stages;
  // Fallback pool for the one family whose transvections are known not
  // to generate (unitary, d = 3, q = 2): scanned in order, adding only
  // candidates that enlarge the group.
  std::vector<Mat> completion;
};

u32 action_degree(const FamilyBuild& b) {
  u128 vecs = upow(b.field->q(), b.dim) - 1;
  u128 deg = b.projective ? vecs / (b.field->q() - 1) : vecs;
  if (deg > (u128)1 << 32) throw SizeCapExceeded("action degree overflows");
  return (u32)deg;
}

GroupMeta assemble_meta(FamilyBuild b) {
  GroupMeta meta;
  meta.spec = std::move(b.spec);
  meta.name = std::move(b.name);
  meta.characteristic = b.p;
  meta.action = b.projective ? "projective 1-spaces" : "nonzero vectors";
  meta.field = b.field;
  meta.dim = b.dim;
  meta.form = std::move(b.form);
  meta.projective = b.projective;
  meta.points = b.projective ? enumerate_projective(*b.field, b.dim)
                             : enumerate_vectors(*b.field, b.dim);
  meta.dual_start = (u32)meta.points.size();
  return meta;
}

GroupMeta build_matrix_family(FamilyBuild b, const Caps& caps) {
  u32 deg = action_degree(b);
  if (deg > caps.max_degree)
    throw SizeCapExceeded(b.name + ": degree " + std::to_string(deg) +
                          " exceeds the cap");
  if (b.expect > caps.max_order)
    throw SizeCapExceeded(b.name + ": order exceeds the cap");
  u64 expect = (u64)b.expect;

  auto stages = std::move(b.stages);
  auto completion = std::move(b.completion);
  GroupMeta meta = assemble_meta(std::move(b));
  assert(meta.points.size() == deg);

  std::vector<Mat> mats;
  std::vector<Perm> perms;
  std::shared_ptr<PermGroup> g;
  for (auto& stage : stages) {
    for (auto& m : stage) {
      assert(preserves_form(m, meta.form));
      mats.push_back(m);
      perms.push_back(mat_to_perm(meta, m));
    }
    g = std::make_shared<PermGroup>(deg, perms, caps);
    assert(g->order() <= expect && "generators left the family");
    if (g->order() == expect) break;
  }
  if (g && g->order() != expect) {
    for (auto& m : completion) {
      Perm x = mat_to_perm(meta, m);
      if (g->contains(x)) continue;
      assert(preserves_form(m, meta.form));
      mats.push_back(m);
      perms.push_back(std::move(x));
      g = std::make_shared<PermGroup>(deg, perms, caps);
      assert(g->order() <= expect && "generators left the family");
      if (g->order() == expect) break;
    }
  }
  if (!g || g->order() != expect)
    throw std::logic_error(meta.name + ": generator pool stopped at order " +
                           std::to_string(g ? g->order() : 0) + ", expected " +
                           std::to_string(expect));
  meta.group = std::move(g);
  meta.gen_mats = std::move(mats);
  return meta;
}

// ---------------------------------------------------------------------
// family constructors

GroupMeta make_linear(const GroupSpec& s, const Caps& caps) {
  bool proj = s.family == "PSL" || s.family == "PGL";
  bool full = s.family == "GL" || s.family == "PGL";
  u64 p;
  u32 k;
  if (s.n < 2) throw BadSpec(s.family + ": dimension must be at least 2");
  if (!prime_power(s.q, p, k)) throw BadSpec(s.family + ": q must be a prime power");
  if (s.q > Field::kMaxQ) throw SizeCapExceeded("field size exceeds the cap");
  auto f = field_make(p, k);
  u32 d = s.n;

  u128 expect = order_gl(d, s.q);
  if (!full) expect /= s.q - 1;                       // SL, PSL
  if (s.family == "PGL") expect /= s.q - 1;
  if (s.family == "PSL") expect /= std::gcd((u64)d, s.q - 1);

  std::vector<Mat> gens;
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < d; ++j) {
      if (i == j) continue;
      for (u32 a = 0; a < k; ++a) {
        Mat m = elementary(f, d, i, j, f->pow(f->generator(), a));
        assert(m.det() == 1);
        gens.push_back(std::move(m));
      }
    }
  if (full) gens.push_back(diag_mat(f, d, {{0, f->generator()}}));

  FamilyBuild b;
  b.spec = s;
  b.name = s.family + "(" + std::to_string(d) + "," + std::to_string(s.q) + ")";
  b.p = p;
  b.field = f;
  b.dim = d;
  b.form = FormSpec::none_form();
  b.projective = proj;
  b.expect = expect;
  b.stages = {std::move(gens)};
  return build_matrix_family(std::move(b), caps);
}

GroupMeta make_symplectic(const GroupSpec& s, const Caps& caps) {
  bool proj = s.family == "PSp";
  u64 p;
  u32 k;
  if (s.n < 2 || s.n % 2) throw BadSpec("Sp: dimension must be even and >= 2");
  if (!prime_power(s.q, p, k)) throw BadSpec("Sp: q must be a prime power");
  if (s.q > Field::kMaxQ) throw SizeCapExceeded("field size exceeds the cap");
  auto f = field_make(p, k);
  u32 d = s.n;
  FormSpec form = FormSpec::symplectic_standard(f, d);

  u128 expect = order_sp(d, s.q);
  if (proj) expect /= std::gcd((u64)2, s.q - 1);

  // Transvection directions, deduplicated up to scalar; the final stage
  // holds every direction, which generates by the classical transvection
  // theorem, so earlier (smaller) stages are a speed optimization only.
  std::set<u64> seen;
  auto dirs_to_gens = [&](const std::vector<std::vector<u32>>& dirs) {
    std::vector<Mat> out;
    for (auto v : dirs) {
      normalize_point(*f, v);
      if (!seen.insert(key_of(v, f->q())).second) continue;
      for (u32 a = 0; a < k; ++a)
        out.push_back(symplectic_transvection(form, v, f->pow(f->generator(), a)));
    }
    return out;
  };
  std::vector<std::vector<u32>> s1, s2;
  for (u32 i = 0; i < d; ++i) s1.push_back(basis_vec(d, i));
  for (u32 i = 0; i < d; ++i)
    for (u32 j = i + 1; j < d; ++j) {
      auto v = basis_vec(d, i);
      v[j] = 1;
      s1.push_back(std::move(v));
    }
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < d; ++j)
      for (u32 a = 1; a < k; ++a) {
        if (i == j) continue;
        auto v = basis_vec(d, i);
        v[j] = f->pow(f->generator(), a);
        s2.push_back(std::move(v));
      }

  FamilyBuild b;
  b.spec = s;
  b.name = s.family + "(" + std::to_string(d) + "," + std::to_string(s.q) + ")";
  b.p = p;
  b.field = f;
  b.dim = d;
  b.form = form;
  b.projective = proj;
  b.expect = expect;
  b.stages.push_back(dirs_to_gens(s1));
  auto g2 = dirs_to_gens(s2);
  if (!g2.empty()) b.stages.push_back(std::move(g2));
  b.stages.push_back(dirs_to_gens(enumerate_projective(*f, d)));
  return build_matrix_family(std::move(b), caps);
}

GroupMeta make_unitary(const GroupSpec& s, const Caps& caps) {
  u64 p;
  u32 k0;
  if (s.n < 2) throw BadSpec(s.family + ": dimension must be at least 2");
  if (!prime_power(s.q, p, k0)) throw BadSpec(s.family + ": q must be a prime power");
  if (s.q * s.q > Field::kMaxQ) throw SizeCapExceeded("field size exceeds the cap");
  auto f = field_make(p, 2 * k0);  // matrices live over GF(q^2)
  u32 d = s.n;
  FormSpec form = FormSpec::hermitian_standard(f, d);

  u128 expect = order_gu(d, s.q);
  if (s.family != "GU") expect /= s.q + 1;
  if (s.family == "PSU") expect /= std::gcd((u64)d, s.q + 1);

  // F_p-basis of the trace-zero part of GF(q^2), the coefficient space of
  // unitary transvections. Independence is checked by spanning.
  std::vector<u32> lam_basis;
  std::set<u32> span{0};
  for (u32 c = 1; c < f->q() && lam_basis.size() < k0; ++c) {
    if (f->add(f->frobenius_pow(c, k0), c) != 0) continue;
    if (span.count(c)) continue;
    std::set<u32> grown;
    for (u32 x : span) {
      u32 acc = x;
      for (u64 t = 0; t < p; ++t) {
        grown.insert(acc);
        acc = f->add(acc, c);
      }
    }
    span = std::move(grown);
    lam_basis.push_back(c);
  }
  assert(lam_basis.size() == k0);

  std::vector<std::vector<u32>> iso;
  for (auto& v : enumerate_projective(*f, d))
    if (form_value(form, v, v) == 0) iso.push_back(v);
  assert(!iso.empty());

  auto dirs_to_gens = [&](size_t lo, size_t hi) {
    std::vector<Mat> out;
    for (size_t i = lo; i < std::min(hi, iso.size()); ++i)
      for (u32 lam : lam_basis) {
        Mat m = hermitian_transvection(form, iso[i], lam);
        assert(m.det() == 1);
        out.push_back(std::move(m));
      }
    return out;
  };

  u32 alpha = f->pow(f->generator(), s.q - 1);  // norm-1 element of order q+1
  std::vector<Mat> extras;
  for (u32 i = 0; i + 1 < d; ++i)
    extras.push_back(diag_mat(f, d, {{i, alpha}, {i + 1, f->inv(alpha)}}));
  for (u32 i = 0; i + 2 < d; ++i)
    extras.push_back(three_cycle_mat(f, d, i, i + 1, i + 2));
  if (s.family == "GU") extras.push_back(diag_mat(f, d, {{0, alpha}}));

  FamilyBuild b;
  b.spec = s;
  b.name = s.family + "(" + std::to_string(d) + "," + std::to_string(s.q) + ")";
  b.p = p;
  b.field = f;
  b.dim = d;
  b.form = form;
  b.projective = s.family == "PSU";
  b.expect = expect;
  auto st1 = dirs_to_gens(0, 2 * d);
  st1.insert(st1.end(), extras.begin(), extras.end());
  b.stages.push_back(std::move(st1));
  if (iso.size() > 2 * d) b.stages.push_back(dirs_to_gens(2 * d, iso.size()));

  // d = 3, q = 2 is the lone case where the transvections fail to
  // generate. The group is tiny, so enumerate every matrix whose rows
  // are orthonormal (that is the whole of GU(3,2)) as a fallback pool.
  if (d == 3 && s.q == 2) {
    bool det_one = s.family != "GU";
    std::vector<std::vector<u32>> unit;
    for (auto& v : enumerate_vectors(*f, d))
      if (form_value(form, v, v) == 1) unit.push_back(v);
    for (auto& r0 : unit)
      for (auto& r1 : unit) {
        if (form_value(form, r0, r1) != 0) continue;
        for (auto& r2 : unit) {
          if (form_value(form, r0, r2) != 0) continue;
          if (form_value(form, r1, r2) != 0) continue;
          Mat m(f, d);
          for (u32 j = 0; j < d; ++j) {
            m.at(0, j) = r0[j];
            m.at(1, j) = r1[j];
            m.at(2, j) = r2[j];
          }
          if (det_one && m.det() != 1) continue;
          b.completion.push_back(std::move(m));
        }
      }
  }
  return build_matrix_family(std::move(b), caps);
}

GroupMeta make_so_odd(const GroupSpec& s, const Caps& caps) {
  u64 p;
  u32 k;
  if (s.n < 3 || s.n % 2 == 0) throw BadSpec("SO: dimension must be odd and >= 3");
  if (!prime_power(s.q, p, k)) throw BadSpec("SO: q must be a prime power");
  if (p == 2) throw BadSpec("SO: odd-dimensional orthogonal groups need odd q");
  if (s.q > Field::kMaxQ) throw SizeCapExceeded("field size exceeds the cap");
  auto f = field_make(p, k);
  u32 d = s.n;
  FormSpec form = FormSpec::symmetric_standard(f, d);

  u128 expect = order_sp(d - 1, s.q);  // |SO_{2n+1}(q)| = |Sp_{2n}(q)|

  // Products of two reflections; the final stage reflects through every
  // anisotropic direction, which generates the full orthogonal group, so
  // the even words reach all of SO.
  auto e0 = basis_vec(d, 0);
  Mat r0 = reflection(form, e0);
  std::set<u64> seen{key_of(e0, f->q())};
  auto dirs_to_gens = [&](const std::vector<std::vector<u32>>& dirs) {
    std::vector<Mat> out;
    for (auto v : dirs) {
      if (form_value(form, v, v) == 0) continue;
      normalize_point(*f, v);
      if (!seen.insert(key_of(v, f->q())).second) continue;
      Mat m = reflection(form, v) * r0;
      assert(m.det() == 1);
      out.push_back(std::move(m));
    }
    return out;
  };
  std::vector<std::vector<u32>> s1;
  for (u32 i = 0; i < d; ++i) s1.push_back(basis_vec(d, i));
  for (u32 i = 0; i < d; ++i)
    for (u32 j = i + 1; j < d; ++j)
      for (u32 c : {1u, f->neg(1)}) {
        auto v = basis_vec(d, i);
        v[j] = c;
        s1.push_back(std::move(v));
      }
  std::vector<std::vector<u32>> s2;
  for (u32 i = 0; i < d; ++i)
    for (u32 j = i + 1; j < d; ++j)
      for (u32 l = j + 1; l < d; ++l)
        for (u32 c1 : {1u, f->neg(1)})
          for (u32 c2 : {1u, f->neg(1)}) {
            auto v = basis_vec(d, i);
            v[j] = c1;
            v[l] = c2;
            s2.push_back(std::move(v));
          }

  FamilyBuild b;
  b.spec = s;
  b.name = "SO(" + std::to_string(d) + "," + std::to_string(s.q) + ")";
  b.p = p;
  b.field = f;
  b.dim = d;
  b.form = form;
  b.projective = false;
  b.expect = expect;
  b.stages.push_back(dirs_to_gens(s1));
  auto g2 = dirs_to_gens(s2);
  if (!g2.empty()) b.stages.push_back(std::move(g2));
  b.stages.push_back(dirs_to_gens(enumerate_projective(*f, d)));
  return build_matrix_family(std::move(b), caps);
}

GroupMeta make_perm_family(const GroupSpec& s, const Caps& caps) {
  u32 n = s.n;
  if (n < 1) throw BadSpec(s.family + ": n must be positive");
  if (n > caps.max_degree) throw SizeCapExceeded("degree exceeds the cap");
  u128 expect;
  std::vector<Perm> gens;
  std::string name;
  if (s.family == "Cyclic") {
    expect = n;
    name = "C" + std::to_string(n);
    if (n > 1) {
      Perm c(n);
      for (u32 i = 0; i < n; ++i) c[i] = (u16)((i + 1) % n);
      gens.push_back(std::move(c));
    }
  } else if (s.family == "Sym") {
    expect = factorial(n);
    name = "S" + std::to_string(n);
    if (n >= 2) {
      Perm c(n), t = p_id(n);
      for (u32 i = 0; i < n; ++i) c[i] = (u16)((i + 1) % n);
      std::swap(t[0], t[1]);
      gens = {std::move(c), std::move(t)};
    }
  } else {
    expect = n >= 2 ? factorial(n) / 2 : 1;
    name = "A" + std::to_string(n);
    if (n >= 3) {
      gens.push_back(p_from_cycles(n, {{0, 1, 2}}));
      std::vector<u16> cyc;
      for (u16 i = (n % 2) ? 0 : 1; i < n; ++i) cyc.push_back(i);
      if (cyc.size() >= 2) gens.push_back(p_from_cycles(n, {cyc}));
    }
  }
  if (expect > caps.max_order) throw SizeCapExceeded(name + ": order exceeds the cap");
  GroupMeta meta;
  meta.spec = s;
  meta.name = name;
  meta.action = "points";
  meta.group = std::make_shared<PermGroup>(n, gens, caps);
  assert((u128)meta.group->order() == expect);
  meta.dual_start = 0;
  return meta;
}

GroupMeta make_explicit(const GroupSpec& s, const Caps& caps) {
  if (s.name != "M11" && s.name != "M12")
    throw BadSpec("Explicit: unknown group name " + s.name);
  const auto& gens = mathieu_gens(s.name);
  u64 expect = s.name == "M11" ? 7920 : 95040;
  GroupMeta meta;
  meta.spec = s;
  meta.name = s.name;
  meta.action = "points";
  meta.group = std::make_shared<PermGroup>((u32)gens[0].size(), gens, caps);
  assert(meta.group->order() == expect);
  (void)expect;
  return meta;
}

GroupMeta make_wreath(const GroupSpec& s, const Caps& caps) {
  if (s.parts.size() != 1) throw BadSpec("Wreath: exactly one inner spec required");
  if (s.m < 1) throw BadSpec("Wreath: cycle length must be positive");
  GroupMeta inner = make_group(s.parts[0], caps);
  u32 nd = inner.group->degree();
  u128 deg = (u128)nd * s.m;
  if (deg > caps.max_degree) throw SizeCapExceeded("wreath degree exceeds the cap");
  u128 expect = s.m;
  for (u32 i = 0; i < s.m; ++i) expect = guard_mul(expect, inner.group->order());
  if (expect > caps.max_order) throw SizeCapExceeded("wreath order exceeds the cap");

  u32 total = (u32)deg;
  std::vector<Perm> gens;
  for (const auto& g : inner.group->gens()) {
    Perm e = p_id(total);
    for (u32 i = 0; i < nd; ++i) e[i] = g[i];
    gens.push_back(std::move(e));
  }
  if (s.m > 1) {
    Perm shift(total);
    for (u32 c = 0; c < s.m; ++c)
      for (u32 i = 0; i < nd; ++i)
        shift[c * nd + i] = (u16)(((c + 1) % s.m) * nd + i);
    gens.push_back(std::move(shift));
  }
  GroupMeta meta;
  meta.spec = s;
  meta.name = inner.name + " wr C" + std::to_string(s.m);
  meta.action = "points";
  meta.group = std::make_shared<PermGroup>(total, gens, caps);
  assert((u128)meta.group->order() == expect);
  return meta;
}

GroupMeta make_direct(const GroupSpec& s, const Caps& caps) {
  if (s.parts.size() < 2) throw BadSpec("Direct: at least two factors required");
  std::vector<GroupMeta> parts;
  u128 deg = 0, expect = 1;
  for (const auto& ps : s.parts) {
    parts.push_back(make_group(ps, caps));
    deg += parts.back().group->degree();
    expect = guard_mul(expect, parts.back().group->order());
  }
  if (deg > caps.max_degree) throw SizeCapExceeded("direct product degree exceeds the cap");
  if (expect > caps.max_order) throw SizeCapExceeded("direct product order exceeds the cap");
  u32 total = (u32)deg;
  std::vector<Perm> gens;
  std::string name;
  u32 off = 0;
  for (const auto& pm : parts) {
    for (const auto& g : pm.group->gens()) {
      Perm e = p_id(total);
      for (u32 i = 0; i < pm.group->degree(); ++i) e[off + i] = (u16)(off + g[i]);
      gens.push_back(std::move(e));
    }
    off += pm.group->degree();
    name += (name.empty() ? "" : " x ") + pm.name;
  }
  GroupMeta meta;
  meta.spec = s;
  meta.name = name;
  meta.action = "points";
  meta.group = std::make_shared<PermGroup>(total, gens, caps);
  assert((u128)meta.group->order() == expect);
  return meta;
}

GroupMeta make_field_phi(const GroupSpec& s, const Caps& caps) {
  GroupMeta base = make_group(s.parts[0], caps);
  if (!base.has_matrices() || !base.projective)
    throw BadSpec("field-phi: base must be a projective matrix group");
  const Field& F = *base.field;
  u32 kk = s.k % F.k();
  if (kk == 0) throw BadSpec("field-phi: Frobenius power is trivial on this field");

  std::unordered_map<u64, u32> ix;
  for (u32 i = 0; i < base.points.size(); ++i)
    ix.emplace(key_of(base.points[i], F.q()), i);
  Perm phi(base.points.size());
  for (u32 i = 0; i < base.points.size(); ++i) {
    auto v = base.points[i];
    for (auto& c : v) c = F.frobenius_pow(c, kk);
    normalize_point(F, v);
    phi[i] = (u16)ix.at(key_of(v, F.q()));
  }
  assert(p_is_perm(phi));

  const PermGroup& bg = *base.group;
  for (const auto& g : bg.gens())
    assert(bg.contains(p_conj(g, phi)) && "Frobenius does not normalize the base");
  u64 t = 1;
  Perm pw = phi;
  while (!bg.contains(pw)) {
    pw = p_mul(pw, phi);
    ++t;
  }
  u128 expect = guard_mul(bg.order(), t);
  if (expect > caps.max_order) throw SizeCapExceeded("extension order exceeds the cap");

  auto gens = bg.gens();
  gens.push_back(phi);
  GroupMeta meta = std::move(base);
  meta.spec = s;
  meta.name += ":phi" + (kk > 1 ? "^" + std::to_string(kk) : "");
  meta.group = std::make_shared<PermGroup>(bg.degree(), gens, caps);
  assert((u128)meta.group->order() == expect);
  return meta;
}

GroupMeta make_graph_tau(const GroupSpec& s, const Caps& caps) {
  const GroupSpec& bs = s.parts[0];
  if (bs.family != "GL") throw BadSpec("graph-tau: base must be GL");
  if (bs.n < 2 || bs.n % 2) throw BadSpec("graph-tau: dimension must be even");
  u64 p;
  u32 k;
  if (!prime_power(bs.q, p, k)) throw BadSpec("graph-tau: q must be a prime power");
  if (bs.q > Field::kMaxQ) throw SizeCapExceeded("field size exceeds the cap");
  auto f = field_make(p, k);
  u32 d = bs.n;

  u128 nvec = upow(bs.q, d) - 1;
  if (2 * nvec > caps.max_degree) throw SizeCapExceeded("graph-tau degree exceeds the cap");
  u128 gl = order_gl(d, bs.q);
  if (2 * gl > caps.max_order) throw SizeCapExceeded("graph-tau order exceeds the cap");

  GroupMeta meta;
  meta.spec = s;
  meta.name = "GL(" + std::to_string(d) + "," + std::to_string(bs.q) + "):tau";
  meta.characteristic = p;
  meta.action = "vectors and duals";
  meta.field = f;
  meta.dim = d;
  meta.form = FormSpec::none_form();
  meta.projective = false;
  meta.points = enumerate_vectors(*f, d);
  meta.dual_start = (u32)meta.points.size();
  auto duals = meta.points;  // dual coordinates run over the same codes
  meta.points.insert(meta.points.end(), duals.begin(), duals.end());

  std::vector<Mat> mats;
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < d; ++j) {
      if (i == j) continue;
      for (u32 a = 0; a < k; ++a)
        mats.push_back(elementary(f, d, i, j, f->pow(f->generator(), a)));
    }
  mats.push_back(diag_mat(f, d, {{0, f->generator()}}));

  u32 deg = (u32)meta.points.size();
  std::vector<Perm> perms;
  for (const auto& m : mats) perms.push_back(mat_to_perm(meta, m));
  PermGroup base(deg, perms, caps);
  assert((u128)base.order() == gl);

  // tau sends the vector v to the dual J^{-1} v^T and the dual c to the
  // vector c^T J; conjugation by tau is then g -> J g^{-T} J^{-1}, whose
  // fixed subgroup in GL is the symplectic group of J.
  Mat J = FormSpec::symplectic_standard(f, d).gram;
  Mat jvec = J.inverse().transpose();  // vector coords -> dual coords
  std::unordered_map<u64, u32> vix, dix;
  for (u32 i = 0; i < meta.dual_start; ++i)
    vix.emplace(key_of(meta.points[i], f->q()), i);
  for (u32 i = meta.dual_start; i < deg; ++i)
    dix.emplace(key_of(meta.points[i], f->q()), i);
  Perm tau(deg);
  for (u32 i = 0; i < meta.dual_start; ++i)
    tau[i] = (u16)dix.at(key_of(jvec.apply_row(meta.points[i]), f->q()));
  for (u32 i = meta.dual_start; i < deg; ++i)
    tau[i] = (u16)vix.at(key_of(J.apply_row(meta.points[i]), f->q()));
  assert(p_is_perm(tau));
  assert(!base.contains(tau));
  for (const auto& g : base.gens())
    assert(base.contains(p_conj(g, tau)) && "tau does not normalize GL");

  perms.push_back(tau);
  meta.group = std::make_shared<PermGroup>(deg, perms, caps);
  assert((u128)meta.group->order() == 2 * gl);
  meta.gen_mats = std::move(mats);
  return meta;
}

GroupMeta make_diagonal_ext(const GroupSpec& s, const Caps& caps) {
  if (s.parts[0].family != "PSL")
    throw BadSpec("diagonal: base must be PSL");
  GroupMeta base = make_group(s.parts[0], caps);
  const Field& F = *base.field;
  Mat dm = diag_mat(base.field, base.dim, {{0, F.generator()}});
  Perm dp = mat_to_perm(base, dm);

  const PermGroup& bg = *base.group;
  u64 t = 1;
  Perm pw = dp;
  while (!bg.contains(pw)) {
    pw = p_mul(pw, dp);
    ++t;
  }
  assert(t == std::gcd((u64)base.dim, F.q() - 1));
  u128 expect = guard_mul(bg.order(), t);
  if (expect > caps.max_order) throw SizeCapExceeded("extension order exceeds the cap");

  auto gens = bg.gens();
  gens.push_back(dp);
  GroupMeta meta = std::move(base);
  meta.spec = s;
  meta.name += ":diag";
  meta.group = std::make_shared<PermGroup>(bg.degree(), gens, caps);
  assert((u128)meta.group->order() == expect);
  meta.gen_mats.push_back(std::move(dm));  // the adjoined generator is matrix-induced
  return meta;
}

GroupMeta make_aut(const GroupSpec& s, const Caps& caps) {
  if (s.parts.size() != 1) throw BadSpec("Aut: exactly one base spec required");
  if (s.aut == "field-phi") return make_field_phi(s, caps);
  if (s.aut == "graph-tau") return make_graph_tau(s, caps);
  if (s.aut == "diagonal") return make_diagonal_ext(s, caps);
  throw BadSpec("Aut: unknown automorphism tag " + s.aut);
}

const std::set<std::string> kMatrixFamilies = {"GL", "SL", "PSL", "PGL", "GU",
                                               "SU", "PSU", "Sp", "PSp", "SO"};

// The family whose matrix data a meta carries (the base family for
// automorphism extensions).
std::string matrix_family(const GroupMeta& meta) {
  if (meta.spec.family == "Aut") {
    if (meta.spec.aut == "graph-tau") return "GL";
    return meta.spec.parts[0].family;
  }
  return meta.spec.family;
}

// ---------------------------------------------------------------------
// JSON plumbing

u64 get_uint(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned())
    throw BadSpec(std::string("group spec: missing or bad field '") + key + "'");
  u64 v = j.at(key).get<u64>();
  if (v > 1000000000)  // far past every cap; also keeps u32 narrowing safe
    throw BadSpec(std::string("group spec: field '") + key + "' out of range");
  return v;
}

std::string canon_family(std::string f) {
  if (f == "AutExtension") return "Aut";
  if (f == "ExplicitGens") return "Explicit";
  if (f == "SOplus-odd" || f == "SO-odd") return "SO";
  return f;
}

std::string canon_aut(std::string a) {
  if (a == "tau") return "graph-tau";
  if (a == "phi") return "field-phi";
  if (a == "diag") return "diagonal";
  return a;
}

GroupSpec from_json_obj(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw BadSpec("group spec: object with a 'family' string required");
  GroupSpec s;
  s.family = canon_family(j.at("family").get<std::string>());
  if (s.family == "Sym" || s.family == "Alt" || s.family == "Cyclic") {
    s.n = (u32)get_uint(j, "n");
  } else if (kMatrixFamilies.count(s.family)) {
    s.n = (u32)get_uint(j, "d");
    s.q = get_uint(j, "q");
  } else if (s.family == "Wreath") {
    if (!j.contains("inner")) throw BadSpec("group spec: Wreath needs 'inner'");
    s.parts.push_back(from_json_obj(j.at("inner")));
    s.m = (u32)get_uint(j, "m");
  } else if (s.family == "Aut") {
    if (!j.contains("base")) throw BadSpec("group spec: Aut needs 'base'");
    s.parts.push_back(from_json_obj(j.at("base")));
    if (!j.contains("aut") || !j.at("aut").is_string())
      throw BadSpec("group spec: Aut needs an 'aut' tag");
    s.aut = canon_aut(j.at("aut").get<std::string>());
    s.k = j.contains("k") ? (u32)get_uint(j, "k") : 1;
  } else if (s.family == "Direct") {
    if (!j.contains("factors") || !j.at("factors").is_array())
      throw BadSpec("group spec: Direct needs a 'factors' array");
    for (const auto& e : j.at("factors")) s.parts.push_back(from_json_obj(e));
  } else if (s.family == "Explicit") {
    if (!j.contains("name") || !j.at("name").is_string())
      throw BadSpec("group spec: Explicit needs a 'name'");
    s.name = j.at("name").get<std::string>();
  } else {
    throw BadSpec("group spec: unknown family " + s.family);
  }
  return s;
}

json to_json_obj(const GroupSpec& s) {
  json j;
  j["family"] = s.family;
  if (s.family == "Sym" || s.family == "Alt" || s.family == "Cyclic") {
    j["n"] = s.n;
  } else if (kMatrixFamilies.count(s.family)) {
    j["d"] = s.n;
    j["q"] = s.q;
  } else if (s.family == "Wreath") {
    j["inner"] = to_json_obj(s.parts.at(0));
    j["m"] = s.m;
  } else if (s.family == "Aut") {
    j["base"] = to_json_obj(s.parts.at(0));
    j["aut"] = s.aut;
    if (s.k != 1) j["k"] = s.k;
  } else if (s.family == "Direct") {
    j["factors"] = json::array();
    for (const auto& e : s.parts) j["factors"].push_back(to_json_obj(e));
  } else if (s.family == "Explicit") {
    j["name"] = s.name;
  }
  return j;
}

}  // namespace

// ---------------------------------------------------------------------
// public surface

GroupSpec GroupSpec::sym(u32 n) {
  GroupSpec s;
  s.family = "Sym";
  s.n = n;
  return s;
}
GroupSpec GroupSpec::alt(u32 n) {
  GroupSpec s;
  s.family = "Alt";
  s.n = n;
  return s;
}
GroupSpec GroupSpec::cyclic(u32 n) {
  GroupSpec s;
  s.family = "Cyclic";
  s.n = n;
  return s;
}
GroupSpec GroupSpec::linear(const std::string& family, u32 d, u64 q) {
  GroupSpec s;
  s.family = family;
  s.n = d;
  s.q = q;
  return s;
}
GroupSpec GroupSpec::wreath(GroupSpec inner, u32 m) {
  GroupSpec s;
  s.family = "Wreath";
  s.parts.push_back(std::move(inner));
  s.m = m;
  return s;
}
GroupSpec GroupSpec::aut_ext(GroupSpec base, const std::string& tag, u32 k) {
  GroupSpec s;
  s.family = "Aut";
  s.parts.push_back(std::move(base));
  s.aut = canon_aut(tag);
  s.k = k;
  return s;
}
GroupSpec GroupSpec::direct(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.family = "Direct";
  s.parts = std::move(factors);
  return s;
}
GroupSpec GroupSpec::explicit_name(const std::string& name) {
  GroupSpec s;
  s.family = "Explicit";
  s.name = name;
  return s;
}

GroupSpec parse_group_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BadSpec(std::string("group spec: invalid JSON: ") + e.what());
  }
  return from_json_obj(j);
}

std::string spec_to_json(const GroupSpec& spec) { return to_json_obj(spec).dump(); }

std::string spec_name(const GroupSpec& spec) {
  // make_group also derives names; this one avoids building the group.
  if (spec.family == "Sym") return "S" + std::to_string(spec.n);
  if (spec.family == "Alt") return "A" + std::to_string(spec.n);
  if (spec.family == "Cyclic") return "C" + std::to_string(spec.n);
  if (kMatrixFamilies.count(spec.family))
    return spec.family + "(" + std::to_string(spec.n) + "," +
           std::to_string(spec.q) + ")";
  if (spec.family == "Wreath")
    return spec_name(spec.parts.at(0)) + " wr C" + std::to_string(spec.m);
  if (spec.family == "Aut") {
    std::string tag = spec.aut == "graph-tau" ? ":tau"
                      : spec.aut == "diagonal"
                          ? ":diag"
                          : ":phi" + (spec.k > 1 ? "^" + std::to_string(spec.k) : "");
    return spec_name(spec.parts.at(0)) + tag;
  }
  if (spec.family == "Direct") {
    std::string out;
    for (const auto& e : spec.parts) out += (out.empty() ? "" : " x ") + spec_name(e);
    return out;
  }
  return spec.name;
}

GroupMeta make_group(const GroupSpec& spec, Caps caps) {
  const std::string& f = spec.family;
  if (f == "Sym" || f == "Alt" || f == "Cyclic") return make_perm_family(spec, caps);
  if (f == "GL" || f == "SL" || f == "PSL" || f == "PGL") return make_linear(spec, caps);
  if (f == "Sp" || f == "PSp") return make_symplectic(spec, caps);
  if (f == "GU" || f == "SU" || f == "PSU") return make_unitary(spec, caps);
  if (f == "SO") return make_so_odd(spec, caps);
  if (f == "Wreath") return make_wreath(spec, caps);
  if (f == "Direct") return make_direct(spec, caps);
  if (f == "Aut") return make_aut(spec, caps);
  if (f == "Explicit") return make_explicit(spec, caps);
  throw BadSpec("unknown family " + f);
}

Perm mat_to_perm(const GroupMeta& meta, const Mat& a) {
  if (!meta.has_matrices() || meta.points.empty())
    throw BadSpec(meta.name + ": no matrix action");
  if (a.n() != meta.dim || !(a.field() == *meta.field))
    throw BadSpec("matrix does not match the group's module");
  const Field& F = *meta.field;
  u64 q = F.q();
  u32 deg = (u32)meta.points.size();
  std::unordered_map<u64, u32> vix, dix;
  for (u32 i = 0; i < meta.dual_start; ++i) vix.emplace(key_of(meta.points[i], q), i);
  for (u32 i = meta.dual_start; i < deg; ++i) dix.emplace(key_of(meta.points[i], q), i);
  Mat ait;
  if (meta.dual_start < deg) ait = a.inverse().transpose();
  Perm out(deg);
  for (u32 i = 0; i < meta.dual_start; ++i) {
    auto w = a.apply_row(meta.points[i]);
    if (meta.projective) normalize_point(F, w);
    out[i] = (u16)vix.at(key_of(w, q));
  }
  for (u32 i = meta.dual_start; i < deg; ++i)
    out[i] = (u16)dix.at(key_of(ait.apply_row(meta.points[i]), q));
  assert(p_is_perm(out));
  return out;
}

Mat perm_to_mat(const GroupMeta& meta, const Perm& x) {
  if (!meta.has_matrices() || meta.points.empty())
    throw BadSpec(meta.name + ": no matrix action");
  if (x.size() != meta.points.size()) throw BadSpec("permutation degree mismatch");
  const Field& F = *meta.field;
  u64 q = F.q();
  u32 d = meta.dim;
  std::unordered_map<u64, u32> vix;
  for (u32 i = 0; i < meta.dual_start; ++i) vix.emplace(key_of(meta.points[i], q), i);

  Mat m(meta.field, d);
  for (u32 i = 0; i < d; ++i) {
    u32 src = vix.at(key_of(basis_vec(d, i), q));
    u32 dst = x[src];
    if (dst >= meta.dual_start)
      throw BadSpec("permutation swaps vectors and duals; no matrix preimage");
    for (u32 j = 0; j < d; ++j) m.at(i, j) = meta.points[dst][j];
  }
  if (meta.projective) {
    // Basis images fix each row up to a scalar; the image of the all-ones
    // point pins the scalars down to one global factor.
    std::vector<u32> ones(d, 1);
    u32 src = vix.at(key_of(ones, q));
    const auto& t = meta.points[x[src]];
    auto mu = m.inverse().apply_row(t);
    for (u32 i = 0; i < d; ++i) {
      if (!mu[i]) throw BadSpec("permutation is not projective-linear");
      for (u32 j = 0; j < d; ++j) m.at(i, j) = F.mul(m.at(i, j), mu[i]);
    }
  }
  if (mat_to_perm(meta, m) != x)
    throw BadSpec("permutation does not come from a matrix");
  return m;
}

std::string to_string(ElementClass c) {
  switch (c) {
    case ElementClass::semisimple: return "semisimple";
    case ElementClass::unipotent: return "unipotent";
    case ElementClass::mixed: return "mixed";
    default: return "na";
  }
}

ElementClass classify_element(const GroupMeta& meta, const Perm& x) {
  if (x.size() != meta.group->degree() || !meta.group->contains(x))
    throw NotInGroup("classify_element: element is not in the group");
  u64 p = meta.characteristic;
  if (p == 0) return ElementClass::na;
  u64 o = p_order(x);
  if (o % p) return ElementClass::semisimple;  // includes the identity
  while (o % p == 0) o /= p;
  return o == 1 ? ElementClass::unipotent : ElementClass::mixed;
}

std::optional<u64> zsigmondy(u64 q, u32 n) {
  if (q < 2 || n < 2) throw BadSpec("zsigmondy: need q >= 2 and n >= 2");
  u128 qn = 1;
  for (u32 i = 0; i < n; ++i) {
    qn *= q;
    if (qn > (u128)~(u64)0) throw BadSpec("zsigmondy: q^n exceeds 64 bits");
  }
  u64 N = (u64)qn - 1;
  auto nf = factorize(n);
  for (auto [l, e] : factorize(N)) {
    (void)e;
    bool primitive = true;
    for (auto [r, er] : nf) {
      (void)er;
      if (powmod(q, n / r, l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return l;  // factor lists are ascending, so least wins
  }
  return std::nullopt;
}

Perm special_element(const GroupMeta& meta, const std::string& tag) {
  if (tag == "graph-involution-class-rep") {
    if (meta.spec.family != "Aut" || meta.spec.aut != "graph-tau")
      throw BadSpec("graph-involution-class-rep: needs a graph-tau extension");
    return meta.group->gens().back();
  }
  if (!meta.has_matrices())
    throw BadSpec(tag + ": group has no matrix realization");
  const std::string fam = matrix_family(meta);
  const Field& F = *meta.field;
  u32 d = meta.dim;

  if (tag == "transvection") {
    Mat m;
    if (fam == "Sp" || fam == "PSp") {
      m = symplectic_transvection(meta.form, basis_vec(d, 0), 1);
    } else if (fam == "GL" || fam == "SL" || fam == "PSL" || fam == "PGL") {
      m = elementary(meta.field, d, 0, 1, 1);
    } else if (fam == "GU" || fam == "SU" || fam == "PSU") {
      std::vector<u32> v;
      for (auto& c : enumerate_vectors(F, d))
        if (form_value(meta.form, c, c) == 0) {
          v = c;
          break;
        }
      u32 k0 = F.k() / 2;
      u32 lam = 0;
      for (u32 c = 1; c < F.q(); ++c)
        if (F.add(F.frobenius_pow(c, k0), c) == 0) {
          lam = c;
          break;
        }
      if (v.empty() || !lam) throw BadSpec("transvection: no isotropic direction");
      m = hermitian_transvection(meta.form, v, lam);
    } else {
      throw BadSpec("transvection: not defined for " + fam);
    }
    Perm x = mat_to_perm(meta, m);
    assert(p_order(x) == F.p());
    return x;
  }

  if (tag == "a2-involution") {
    if ((fam != "Sp" && fam != "PSp") || F.p() != 2 || d < 4)
      throw BadSpec("a2-involution: needs Sp over characteristic 2, dim >= 4");
    // x -> x + (x,u)v + (x,v)u with (u,v) = 0: an involution moving a
    // 2-dimensional direction space, with (ax, x) = 0 everywhere.
    auto u = basis_vec(d, 0), v = basis_vec(d, 1);
    assert(form_value(meta.form, u, v) == 0);
    Mat m = Mat::identity(meta.field, d);
    for (u32 i = 0; i < d; ++i) {
      u32 cu = form_value(meta.form, basis_vec(d, i), u);
      u32 cv = form_value(meta.form, basis_vec(d, i), v);
      for (u32 j = 0; j < d; ++j)
        m.at(i, j) = F.add(m.at(i, j), F.add(F.mul(cu, v[j]), F.mul(cv, u[j])));
    }
    assert(form_value_vanishes(m, meta.form));
    Perm x = mat_to_perm(meta, m);
    assert(p_order(x) == 2);
    return x;
  }

  if (tag == "diag-involution") {
    if ((fam != "Sp" && fam != "PSp") || F.p() == 2)
      throw BadSpec("diag-involution: needs Sp over odd characteristic");
    Mat m = diag_mat(meta.field, d, {{0, F.neg(1)}, {d - 1, F.neg(1)}});
    assert(preserves_form(m, meta.form));
    Perm x = mat_to_perm(meta, m);
    assert(p_order(x) == 2);
    return x;
  }

  if (tag == "pseudoreflection-image") {
    if (fam != "GL" && fam != "PGL")
      throw BadSpec("pseudoreflection-image: needs GL or a GL extension");
    Mat m = diag_mat(meta.field, d, {{0, F.generator()}});
    return mat_to_perm(meta, m);
  }

  throw BadSpec("unknown special element tag " + tag);
}

}  // namespace cforge

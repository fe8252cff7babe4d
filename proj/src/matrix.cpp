#include "cforge/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace cforge {

Mat Mat::identity(std::shared_ptr<const Field> f, u32 n) {
  Mat m(std::move(f), n);
  for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  assert(n_ == o.n_ && *field_ == *o.field_);
  const Field& F = *field_;
  Mat r(field_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 l = 0; l < n_; ++l) {
      u32 a = at(i, l);
      if (!a) continue;
      for (u32 j = 0; j < n_; ++j) {
        u32 b = o.at(l, j);
        if (b) r.at(i, j) = F.add(r.at(i, j), F.mul(a, b));
      }
    }
  return r;
}

Mat Mat::transpose() const {
  Mat r(field_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::frobenius(u32 j) const {
  Mat r(field_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 l = 0; l < n_; ++l) r.at(i, l) = field_->frobenius_pow(at(i, l), j);
  return r;
}

Mat Mat::scalar_mul(u32 c) const {
  Mat r(field_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.at(i, j) = field_->mul(at(i, j), c);
  return r;
}

// Gaussian elimination; returns (echelon det, inverse if wanted).
namespace {
std::optional<Mat> gauss_inverse(const Mat& a, u32* det_out) {
  const Field& F = a.field();
  u32 n = a.n();
  Mat w = a;
  Mat inv = Mat::identity(a.field_ptr(), n);
  u32 det = 1;
  for (u32 col = 0; col < n; ++col) {
    u32 piv = col;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) {
      if (det_out) *det_out = 0;
      return std::nullopt;
    }
    if (piv != col) {
      for (u32 j = 0; j < n; ++j) {
        std::swap(w.at(piv, j), w.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
      det = F.neg(det);
    }
    u32 d = w.at(col, col);
    det = F.mul(det, d);
    u32 dinv = F.inv(d);
    for (u32 j = 0; j < n; ++j) {
      w.at(col, j) = F.mul(w.at(col, j), dinv);
      inv.at(col, j) = F.mul(inv.at(col, j), dinv);
    }
    for (u32 i = 0; i < n; ++i) {
      if (i == col) continue;
      u32 c = w.at(i, col);
      if (!c) continue;
      for (u32 j = 0; j < n; ++j) {
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(col, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(c, inv.at(col, j)));
      }
    }
  }
  if (det_out) *det_out = det;
  return inv;
}
}  // namespace

u32 Mat::det() const {
  u32 d = 0;
  gauss_inverse(*this, &d);
  return d;
}

Mat Mat::inverse() const {
  auto r = gauss_inverse(*this, nullptr);
  if (!r) throw std::domain_error("matrix is singular");
  return *r;
}

u32 mat_rank(const Mat& a) {
  const Field& F = a.field();
  u32 n = a.n();
  Mat w = a;
  u32 rank = 0;
  for (u32 col = 0; col < n && rank < n; ++col) {
    u32 piv = rank;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank)
      for (u32 j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(rank, j));
    u32 dinv = F.inv(w.at(rank, col));
    for (u32 j = 0; j < n; ++j) w.at(rank, j) = F.mul(w.at(rank, j), dinv);
    for (u32 i = rank + 1; i < n; ++i) {
      u32 c = w.at(i, col);
      if (!c) continue;
      for (u32 j = 0; j < n; ++j)
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

std::vector<u32> Mat::apply_row(const std::vector<u32>& v) const {
  assert(v.size() == n_);
  const Field& F = *field_;
  std::vector<u32> r(n_, 0);
  for (u32 i = 0; i < n_; ++i) {
    if (!v[i]) continue;
    for (u32 j = 0; j < n_; ++j)
      if (at(i, j)) r[j] = F.add(r[j], F.mul(v[i], at(i, j)));
  }
  return r;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  for (u32 i = 0; i < n_; ++i) {
    os << (i ? "; " : "[");
    for (u32 j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

FormSpec FormSpec::none_form() { return FormSpec{}; }

FormSpec FormSpec::symplectic_standard(std::shared_ptr<const Field> f,
                                       u32 dim) {
  assert(dim % 2 == 0);
  FormSpec s;
  s.kind = FormKind::symplectic;
  s.gram = Mat(f, dim);
  for (u32 i = 0; i < dim / 2; ++i) {
    s.gram.at(i, dim - 1 - i) = 1;
    s.gram.at(dim - 1 - i, i) = f->neg(1);
  }
  s.twist = 1;
  return s;
}

FormSpec FormSpec::hermitian_standard(std::shared_ptr<const Field> f,
                                      u32 dim) {
  assert(f->k() % 2 == 0);
  FormSpec s;
  s.kind = FormKind::hermitian;
  s.gram = Mat::identity(std::move(f), dim);
  s.twist = 2;
  return s;
}

FormSpec FormSpec::symmetric_standard(std::shared_ptr<const Field> f,
                                      u32 dim) {
  FormSpec s;
  s.kind = FormKind::symmetric;
  s.gram = Mat::identity(std::move(f), dim);
  s.twist = 1;
  return s;
}

u32 form_value(const FormSpec& f, const std::vector<u32>& u,
               const std::vector<u32>& v) {
  const Field& F = f.gram.field();
  u32 halfk = F.k() / 2;
  u32 acc = 0;
  for (u32 i = 0; i < f.gram.n(); ++i) {
    if (!u[i]) continue;
    for (u32 j = 0; j < f.gram.n(); ++j) {
      u32 g = f.gram.at(i, j);
      if (!g || !v[j]) continue;
      u32 vj = (f.twist == 2) ? F.frobenius_pow(v[j], halfk) : v[j];
      acc = F.add(acc, F.mul(u[i], F.mul(g, vj)));
    }
  }
  return acc;
}

bool preserves_form(const Mat& a, const FormSpec& f) {
  if (f.kind == FormKind::none) return true;
  u32 halfk = a.field().k() / 2;
  Mat sig = (f.twist == 2) ? a.frobenius(halfk) : a;
  return a.transpose() * f.gram * sig == f.gram;
}

bool form_value_vanishes(const Mat& a, const FormSpec& f) {
  if (!preserves_form(a, f))
    throw std::domain_error("form_value_vanishes: matrix breaks the form");
  u32 n = a.n();
  auto basis = [&](u32 i) {
    std::vector<u32> v(n, 0);
    v[i] = 1;
    return v;
  };
  auto value_at = [&](const std::vector<u32>& v) {
    return form_value(f, a.apply_row(v), v);
  };
  for (u32 i = 0; i < n; ++i) {
    if (value_at(basis(i)) != 0) return false;
    for (u32 j = i + 1; j < n; ++j) {
      auto v = basis(i);
      v[j] = 1;
      if (value_at(v) != 0) return false;
    }
  }
  return true;
}

Mat symplectic_transvection(const FormSpec& f, const std::vector<u32>& v,
                            u32 c) {
  assert(f.kind == FormKind::symplectic);
  auto fld = f.gram.field_ptr();
  const Field& F = *fld;
  u32 n = f.gram.n();
  Mat m = Mat::identity(fld, n);
  for (u32 i = 0; i < n; ++i) {
    std::vector<u32> e(n, 0);
    e[i] = 1;
    u32 coeff = F.mul(c, form_value(f, e, v));
    for (u32 j = 0; j < n; ++j)
      m.at(i, j) = F.add(m.at(i, j), F.mul(coeff, v[j]));
  }
  return m;
}

}  // namespace cforge

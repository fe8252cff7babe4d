#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cforge/field.hpp"

namespace cforge {

// Square matrix over GF(q), row-major. Group elements act on row vectors
// (v -> v*a), so products compose left-to-right like the permutation
// convention: v*(a*b) = (v*a)*b.
class Mat {
 public:
  Mat() : n_(0) {}
  Mat(std::shared_ptr<const Field> f, u32 n)
      : field_(std::move(f)), n_(n), e_((size_t)n * n, 0) {}

  static Mat identity(std::shared_ptr<const Field> f, u32 n);

  u32 n() const { return n_; }
  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }

  u32 at(u32 i, u32 j) const { return e_[(size_t)i * n_ + j]; }
  u32& at(u32 i, u32 j) { return e_[(size_t)i * n_ + j]; }

  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  // Entrywise x -> x^(p^j).
  Mat frobenius(u32 j) const;
  Mat scalar_mul(u32 c) const;
  u32 det() const;
  // Throws std::domain_error on singular input.
  Mat inverse() const;

  // Row vector v times this matrix.
  std::vector<u32> apply_row(const std::vector<u32>& v) const;

  std::string to_string() const;

 private:
  std::shared_ptr<const Field> field_;
  u32 n_;
  std::vector<u32> e_;
};

enum class FormKind { none, symplectic, hermitian, symmetric };

// Bilinear/sesquilinear form data. B(u, v) = u * gram * sigma(v)^T where
// sigma is frobenius^(k/2) when twist == 2, identity otherwise.
struct FormSpec {
  FormKind kind = FormKind::none;
  Mat gram;
  u32 twist = 1;

  static FormSpec none_form();
  // antidiag(1,...,1,-1,...,-1), dimension 2n
  static FormSpec symplectic_standard(std::shared_ptr<const Field> f, u32 dim);
  // identity Gram over GF(q0^2), twist = conjugation x -> x^q0
  static FormSpec hermitian_standard(std::shared_ptr<const Field> f, u32 dim);
  // identity Gram, odd dimension, q odd
  static FormSpec symmetric_standard(std::shared_ptr<const Field> f, u32 dim);
};

// Row rank by Gaussian elimination.
u32 mat_rank(const Mat& a);

// B(u, v) for row vectors.
u32 form_value(const FormSpec& f, const std::vector<u32>& u,
               const std::vector<u32>& v);

// a^T * gram * a^sigma == gram.
bool preserves_form(const Mat& a, const FormSpec& f);

// (a v, v) == 0 for every vector v; checked on basis vectors and pairwise
// sums, which suffices since v -> (av, v) is a quadratic form whose polar
// form is bilinear. Throws if a does not preserve f.
bool form_value_vanishes(const Mat& a, const FormSpec& f);

// Symplectic transvection t_v(c): x -> x + c * B(x, v) * v.
Mat symplectic_transvection(const FormSpec& f, const std::vector<u32>& v,
                            u32 c);

}  // namespace cforge

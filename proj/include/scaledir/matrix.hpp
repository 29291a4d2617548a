#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scaledir/field.hpp"

namespace scaledir {

// Square matrix over the ground field.
class MatrixK {
 public:
  MatrixK(const FieldContext& ctx, std::size_t n)
      : ctx_(ctx), n_(n), a_(n * n, FieldElement::zero(ctx)) {}

  static MatrixK identity(const FieldContext& ctx, std::size_t n);
  static MatrixK diagonal(const FieldContext& ctx, const std::vector<FieldElement>& entries);

  const FieldContext& context() const { return ctx_; }
  std::size_t dim() const { return n_; }

  FieldElement& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  MatrixK operator+(const MatrixK& o) const;
  MatrixK operator-(const MatrixK& o) const;
  MatrixK operator*(const MatrixK& o) const;
  MatrixK scaled(const FieldElement& c) const;
  MatrixK transpose() const;
  bool operator==(const MatrixK& o) const;
  bool operator!=(const MatrixK& o) const { return !(*this == o); }

  FieldElement determinant() const;
  // Throws PreconditionError on a singular matrix.
  MatrixK inverse() const;

  FieldElement trace() const;
  bool is_diagonal() const;
  bool is_upper_triangular() const;

  // Row-major Kronecker product: (A (x) B)[(i,k),(j,l)] = A[i][j] * B[k][l].
  static MatrixK kronecker(const MatrixK& a, const MatrixK& b);

  std::string str() const;  // "[[a,b],[c,d]]"

 private:
  void require_compatible(const MatrixK& o) const;

  FieldContext ctx_;
  std::size_t n_;
  std::vector<FieldElement> a_;
};

// Parses "[[e,e,...],[...],...]"; rows must be square.  Element syntax follows
// the field's element grammar.
MatrixK parse_matrix(const FieldContext& ctx, std::string_view text);

}  // namespace scaledir

#pragma once

// Exact linear algebra over Q and Z.
//
// Everything here is value-typed and immutable once built; a Subspace is kept
// in reduced row echelon form so that two equal row spaces compare equal.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace covol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
std::string toString(const Rational& r);
/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parseRational(std::string_view text);

/// Finitely supported vector indexed by std::size_t. Zero entries are never stored.
class SparseVector {
 public:
  using Map = std::map<std::size_t, Rational>;

  SparseVector() = default;
  static SparseVector unit(std::size_t index, const Rational& value = 1);

  const Rational& get(std::size_t index) const;
  void set(std::size_t index, const Rational& value);
  void add(std::size_t index, const Rational& value);
  /// this += factor * other
  void axpy(const Rational& factor, const SparseVector& other);
  void scale(const Rational& factor);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::optional<std::size_t> leading() const;
  std::vector<std::size_t> support() const;

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
  friend SparseVector operator+(SparseVector a, const SparseVector& b) {
    a.axpy(1, b);
    return a;
  }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    a.axpy(-1, b);
    return a;
  }
  friend SparseVector operator*(const Rational& c, SparseVector v) {
    v.scale(c);
    return v;
  }
  friend bool operator<(const SparseVector& a, const SparseVector& b) { return a.entries_ < b.entries_; }

 private:
  Map entries_;
};

/// Row space held in reduced row echelon form. Rows are sorted by pivot, every
/// pivot entry is 1, and each pivot column is zero in all other rows.
class Subspace {
 public:
  Subspace() = default;

  std::size_t dimension() const { return rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residue of v after elimination against the pivots; zero iff v is a member.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Adds v to the spanning set, keeping RREF. Returns true iff the dimension grew.
  bool insert(const SparseVector& v);

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace rref(std::span<const SparseVector> rows);
bool member(const Subspace& space, const SparseVector& v);

/// dim(V ∩ span{e_i : i in coords}).
std::size_t intersectionWithCoordinatesDim(const Subspace& space, const std::vector<std::size_t>& coords);

/// Connected components of the graph joining coordinates that co-occur in an
/// RREF row. Each block is sorted; blocks are ordered by their first element.
std::vector<std::vector<std::size_t>> finestBlockPartition(const Subspace& space);

/// Dense integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix fromRows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

BigInt determinant(const IntMatrix& m);

struct SmithDecomposition {
  /// min(rows, cols) nonnegative entries with diagonal[i] | diagonal[i+1].
  std::vector<BigInt> diagonal;
  IntMatrix left;   // rows x rows, unimodular
  IntMatrix right;  // cols x cols, unimodular
};

/// left * m * right is the rows x cols matrix carrying `diagonal` on its main diagonal.
SmithDecomposition smithNormalForm(const IntMatrix& m);

/// Dense rational matrix helpers used by the comodule code.
using RationalMatrix = std::vector<std::vector<Rational>>;
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

}  // namespace covol
